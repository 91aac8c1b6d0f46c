#pragma once

#include <memory>
#include <vector>

#include "cosparse/types.hpp"

namespace cosparse {

/// A linear operator C^cols -> C^rows known through its action and the action
/// of its conjugate transpose. Implementations are immutable after
/// construction, so a LinearMap may be shared freely between threads.
class LinearMap {
 public:
  virtual ~LinearMap() = default;

  virtual Index rows() const = 0;
  virtual Index cols() const = 0;

  /// out = K in. `out` is resized as needed.
  virtual void apply_into(const CVector& in, CVector& out) const = 0;
  /// out = K^* in. `out` is resized as needed.
  virtual void adjoint_into(const CVector& in, CVector& out) const = 0;

  /// True when every matrix entry is real.
  virtual bool has_real_entries() const { return false; }

  CVector apply(const CVector& in) const {
    CVector out;
    apply_into(in, out);
    return out;
  }
  CVector adjoint(const CVector& in) const {
    CVector out;
    adjoint_into(in, out);
    return out;
  }

  /// Column-by-column materialization (rows x cols). Callers enforce size caps.
  virtual CMatrix to_dense() const;
};

using LinearMapPtr = std::shared_ptr<const LinearMap>;

/// Complex dense matrix.
class DenseMap final : public LinearMap {
 public:
  explicit DenseMap(CMatrix matrix);
  Index rows() const override { return matrix_.rows(); }
  Index cols() const override { return matrix_.cols(); }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;
  bool has_real_entries() const override { return real_; }
  CMatrix to_dense() const override { return matrix_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  CMatrix matrix_;
  bool real_;
};

/// Real dense matrix acting on complex vectors (real and imaginary parts
/// multiplied separately).
class RealDenseMap final : public LinearMap {
 public:
  explicit RealDenseMap(RMatrix matrix);
  Index rows() const override { return matrix_.rows(); }
  Index cols() const override { return matrix_.cols(); }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;
  bool has_real_entries() const override { return true; }
  CMatrix to_dense() const override { return matrix_.cast<Complex>(); }
  const RMatrix& matrix() const { return matrix_; }

 private:
  RMatrix matrix_;
};

class IdentityMap final : public LinearMap {
 public:
  explicit IdentityMap(Index n) : n_(n) {}
  Index rows() const override { return n_; }
  Index cols() const override { return n_; }
  void apply_into(const CVector& in, CVector& out) const override { out = in; }
  void adjoint_into(const CVector& in, CVector& out) const override { out = in; }
  bool has_real_entries() const override { return true; }

 private:
  Index n_;
};

/// scale * K
class ScaledMap final : public LinearMap {
 public:
  ScaledMap(LinearMapPtr inner, double scale) : inner_(std::move(inner)), scale_(scale) {}
  Index rows() const override { return inner_->rows(); }
  Index cols() const override { return inner_->cols(); }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;
  bool has_real_entries() const override { return inner_->has_real_entries(); }

 private:
  LinearMapPtr inner_;
  double scale_;
};

/// outer * inner
class ComposedMap final : public LinearMap {
 public:
  ComposedMap(LinearMapPtr outer, LinearMapPtr inner);
  Index rows() const override { return outer_->rows(); }
  Index cols() const override { return inner_->cols(); }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;
  bool has_real_entries() const override {
    return outer_->has_real_entries() && inner_->has_real_entries();
  }

 private:
  LinearMapPtr outer_;
  LinearMapPtr inner_;
};

/// K^*
class AdjointMap final : public LinearMap {
 public:
  explicit AdjointMap(LinearMapPtr inner) : inner_(std::move(inner)) {}
  Index rows() const override { return inner_->cols(); }
  Index cols() const override { return inner_->rows(); }
  void apply_into(const CVector& in, CVector& out) const override { inner_->adjoint_into(in, out); }
  void adjoint_into(const CVector& in, CVector& out) const override { inner_->apply_into(in, out); }
  bool has_real_entries() const override { return inner_->has_real_entries(); }

 private:
  LinearMapPtr inner_;
};

/// [K1 K2 ...]: blocks share the row space; the input is the concatenation of
/// the blocks' inputs.
class HStackMap final : public LinearMap {
 public:
  explicit HStackMap(std::vector<LinearMapPtr> blocks);
  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;
  bool has_real_entries() const override;

 private:
  std::vector<LinearMapPtr> blocks_;
  Index rows_ = 0;
  Index cols_ = 0;
};

/// blockdiag(K1, K2, ...)
class BlockDiagMap final : public LinearMap {
 public:
  explicit BlockDiagMap(std::vector<LinearMapPtr> blocks);
  Index rows() const override { return rows_; }
  Index cols() const override { return cols_; }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;
  bool has_real_entries() const override;

 private:
  std::vector<LinearMapPtr> blocks_;
  Index rows_ = 0;
  Index cols_ = 0;
};

/// Largest relative adjoint mismatch |<Ku, v> - <u, K^*v>| / (|u||v|) over
/// `pairs` random complex pairs drawn from `seed`.
double adjoint_mismatch(const LinearMap& map, int pairs, std::uint64_t seed);

}  // namespace cosparse

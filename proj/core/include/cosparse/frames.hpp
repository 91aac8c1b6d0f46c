#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cosparse/linear_map.hpp"
#include "cosparse/types.hpp"

namespace cosparse {

/// Dense export is refused above this many entries (n * d) unless the caller
/// passes a larger cap.
inline constexpr Index kDefaultMaterializationCap = Index{1} << 24;

enum class DictionaryKind { dense, oversampled_dft, gabor, concat };

std::string_view to_string(DictionaryKind kind);

struct FrameBounds {
  double lower = 0.0;  // A = lambda_min(D D^*)
  double upper = 0.0;  // B = lambda_max(D D^*)
  double ratio() const { return upper / lower; }
};

/// A redundant dictionary D: C^d -> C^n together with its adjoint D^*.
///
/// Value type; copies share the immutable underlying operator.
class Dictionary {
 public:
  Dictionary(LinearMapPtr map, DictionaryKind kind, bool tight,
             std::optional<FrameBounds> bounds = std::nullopt);

  /// Signal dimension.
  Index n() const { return map_->rows(); }
  /// Number of atoms.
  Index d() const { return map_->cols(); }

  /// Synthesis f = D x.
  CVector apply(const CVector& x) const { return map_->apply(x); }
  /// Analysis D^* f.
  CVector adjoint(const CVector& f) const { return map_->adjoint(f); }

  DictionaryKind kind() const { return kind_; }
  bool is_tight() const { return tight_; }
  const std::optional<FrameBounds>& bounds() const { return bounds_; }
  const LinearMapPtr& map() const { return map_; }
  /// D^* as an operator C^n -> C^d.
  LinearMapPtr analysis_map() const;

  /// Dense n x d matrix, or nullopt when n * d exceeds `cap`.
  std::optional<CMatrix> dense_matrix(Index cap = kDefaultMaterializationCap) const;
  /// Dense n x d matrix; throws CapExceeded when n * d exceeds `cap`.
  CMatrix materialize(Index cap = kDefaultMaterializationCap) const;

 private:
  LinearMapPtr map_;
  DictionaryKind kind_;
  bool tight_;
  std::optional<FrameBounds> bounds_;
};

/// Plain dense dictionary; tightness is detected numerically.
Dictionary dense_dictionary(CMatrix matrix);
Dictionary identity_dictionary(Index n);

/// Oversampled DFT with d = c * n atoms; atom k has entries
/// e^{-2 pi i k t / (c n)} / sqrt(c n). Tight, atom norm 1/sqrt(c).
Dictionary build_oversampled_dft(Index n, Index c);

struct GaborParams {
  Index n = 0;
  /// Gaussian window width in samples; +infinity gives a flat window.
  double window_sigma = 1.0;
  /// Time step in samples.
  Index a = 1;
  /// Frequency step in cycles/sample; 1/b must be an integer (the number of
  /// frequency channels).
  double b = 1.0;
};

/// Gabor system G_{k1,k2}(t) = g(t - k2 a) e^{2 pi i k1 b t} with a circularly
/// wrapped Gaussian window, unit-norm atoms. Coefficients are laid out
/// shift-major: index k2 * (1/b) + k1. The result carries its frame bounds.
Dictionary build_gabor(const GaborParams& params);

/// [scale*D1, scale*D2]
Dictionary build_concat(const Dictionary& d1, const Dictionary& d2, double scale);

/// (D D^*)^{-1/2} D. Throws NumericalError("not a frame") when D D^* is singular.
Dictionary tighten(const Dictionary& dict);

/// Frame bounds lambda_min / lambda_max of D D^*. Uses the Gabor block
/// structure when available, a dense eigensolve for n <= `dense_limit`, and
/// power iteration otherwise.
FrameBounds frame_bounds(const Dictionary& dict, Index dense_limit = 2048);

/// Maximum normalized inner product between distinct columns.
double coherence(const CMatrix& matrix);
double coherence(const Dictionary& dict, Index cap = kDefaultMaterializationCap);

/// [max_j sum_i |(D^* D)_{ij}|^p]^{1/p} for p in (0, 1].
double gram_pnorm_factor(const Dictionary& dict, double p,
                         Index cap = kDefaultMaterializationCap);

/// Quasi-norm (sum |v_i|^p)^{1/p}.
double pnorm(const CVector& v, double p);

/// max ||D D^* f - f|| / ||f|| over `trials` random f.
double parseval_defect(const Dictionary& dict, int trials, std::uint64_t seed);

}  // namespace cosparse

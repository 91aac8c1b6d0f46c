#pragma once

#include <vector>

#include "cosparse/linear_map.hpp"

namespace cosparse {

/// Gabor synthesis operator on Z_n with an arbitrary window h:
/// atom (k2, k1) is h(t - k2 a mod n) e^{2 pi i k1 t / M}, coefficient index
/// k2 * M + k1. Apply and adjoint cost one length-M FFT per time shift.
class GaborMap final : public LinearMap {
 public:
  GaborMap(CVector window, Index a, Index channels);

  Index rows() const override { return n_; }
  Index cols() const override { return shifts_ * channels_; }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;

  Index shifts() const { return shifts_; }
  Index channels() const { return channels_; }
  Index time_step() const { return a_; }
  const CVector& window() const { return window_; }

  /// D D^* decomposed over residue classes t mod M: block r is the Hermitian
  /// matrix acting on indices r, r + M, r + 2M, ... < n. Entries vanish between
  /// indices in different classes.
  std::vector<CMatrix> frame_operator_blocks() const;

 private:
  /// Window translated by k2 * a, circularly.
  CVector shifted_window(Index k2) const;

  CVector window_;
  Index n_;
  Index a_;
  Index channels_;
  Index shifts_;
};

/// Hermitian operator that couples only indices in the same residue class
/// mod M (the structure of a Gabor frame operator).
class ResidueBlockMap final : public LinearMap {
 public:
  ResidueBlockMap(Index n, std::vector<CMatrix> blocks);

  Index rows() const override { return n_; }
  Index cols() const override { return n_; }
  void apply_into(const CVector& in, CVector& out) const override;
  void adjoint_into(const CVector& in, CVector& out) const override;

  const std::vector<CMatrix>& blocks() const { return blocks_; }

 private:
  void multiply(const CVector& in, CVector& out, bool adjoint) const;

  Index n_;
  Index modulus_;
  std::vector<CMatrix> blocks_;
};

}  // namespace cosparse

#include "cosparse/gabor.hpp"

#include "cosparse/fft.hpp"

namespace cosparse {

GaborMap::GaborMap(CVector window, Index a, Index channels)
    : window_(std::move(window)), n_(window_.size()), a_(a), channels_(channels) {
  require(n_ >= 1, "GaborMap: empty window");
  require(a_ >= 1, "GaborMap: time step must be >= 1");
  require(channels_ >= 1, "GaborMap: need at least one frequency channel");
  shifts_ = (n_ + a_ - 1) / a_;
}

CVector GaborMap::shifted_window(Index k2) const {
  CVector w(n_);
  const Index shift = (k2 * a_) % n_;
  for (Index t = 0; t < n_; ++t) {
    Index src = t - shift;
    if (src < 0) src += n_;
    w[t] = window_[src];
  }
  return w;
}

void GaborMap::apply_into(const CVector& in, CVector& out) const {
  require(in.size() == cols(), "GaborMap::apply: coefficient length mismatch");
  out = CVector::Zero(n_);
  CVector spectrum(channels_), tone(channels_);
  for (Index k2 = 0; k2 < shifts_; ++k2) {
    spectrum = in.segment(k2 * channels_, channels_);
    if (spectrum.isZero(0.0)) continue;
    fft::backward(spectrum.data(), tone.data(), channels_);
    const Index shift = (k2 * a_) % n_;
    for (Index t = 0; t < n_; ++t) {
      Index src = t - shift;
      if (src < 0) src += n_;
      out[t] += window_[src] * tone[t % channels_];
    }
  }
}

void GaborMap::adjoint_into(const CVector& in, CVector& out) const {
  require(in.size() == n_, "GaborMap::adjoint: signal length mismatch");
  out.resize(cols());
  CVector folded(channels_), spectrum(channels_);
  for (Index k2 = 0; k2 < shifts_; ++k2) {
    folded.setZero();
    const Index shift = (k2 * a_) % n_;
    for (Index t = 0; t < n_; ++t) {
      Index src = t - shift;
      if (src < 0) src += n_;
      folded[t % channels_] += std::conj(window_[src]) * in[t];
    }
    fft::forward(folded.data(), spectrum.data(), channels_);
    out.segment(k2 * channels_, channels_) = spectrum;
  }
}

std::vector<CMatrix> GaborMap::frame_operator_blocks() const {
  // (D D^*)(t, t') = M * sum_k2 h_k2(t) conj(h_k2(t')) when t == t' (mod M).
  std::vector<CMatrix> blocks;
  const Index classes = std::min(channels_, n_);
  blocks.reserve(static_cast<std::size_t>(classes));
  for (Index r = 0; r < classes; ++r) {
    const Index size = (n_ - r + channels_ - 1) / channels_;
    blocks.emplace_back(CMatrix::Zero(size, size));
  }
  CVector column;
  for (Index k2 = 0; k2 < shifts_; ++k2) {
    const CVector w = shifted_window(k2);
    for (Index r = 0; r < classes; ++r) {
      CMatrix& block = blocks[static_cast<std::size_t>(r)];
      const Index size = block.rows();
      column.resize(size);
      for (Index j = 0; j < size; ++j) column[j] = w[r + j * channels_];
      block.noalias() += static_cast<double>(channels_) * column * column.adjoint();
    }
  }
  return blocks;
}

ResidueBlockMap::ResidueBlockMap(Index n, std::vector<CMatrix> blocks)
    : n_(n), modulus_(static_cast<Index>(blocks.size())), blocks_(std::move(blocks)) {
  require(modulus_ >= 1, "ResidueBlockMap: no blocks");
  for (Index r = 0; r < modulus_; ++r) {
    const Index size = (n_ - r + modulus_ - 1) / modulus_;
    const CMatrix& b = blocks_[static_cast<std::size_t>(r)];
    require(b.rows() == size && b.cols() == size, "ResidueBlockMap: block size mismatch");
  }
}

void ResidueBlockMap::multiply(const CVector& in, CVector& out, bool adjoint) const {
  require(in.size() == n_, "ResidueBlockMap: input length mismatch");
  out.resize(n_);
  CVector gathered, product;
  for (Index r = 0; r < modulus_; ++r) {
    const CMatrix& b = blocks_[static_cast<std::size_t>(r)];
    gathered.resize(b.rows());
    for (Index j = 0; j < b.rows(); ++j) gathered[j] = in[r + j * modulus_];
    if (adjoint) {
      product.noalias() = b.adjoint() * gathered;
    } else {
      product.noalias() = b * gathered;
    }
    for (Index j = 0; j < b.rows(); ++j) out[r + j * modulus_] = product[j];
  }
}

void ResidueBlockMap::apply_into(const CVector& in, CVector& out) const {
  multiply(in, out, false);
}

void ResidueBlockMap::adjoint_into(const CVector& in, CVector& out) const {
  multiply(in, out, true);
}

}  // namespace cosparse

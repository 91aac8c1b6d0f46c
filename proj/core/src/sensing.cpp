#include "cosparse/sensing.hpp"

#include <cmath>
#include <vector>

#include "cosparse/fft.hpp"
#include "cosparse/rng.hpp"

namespace cosparse {
namespace {

class SubsampledDftSignMap final : public LinearMap {
 public:
  SubsampledDftSignMap(Index n, std::vector<Index> rows, RVector signs)
      : n_(n), rows_(std::move(rows)), signs_(std::move(signs)),
        scale_(std::sqrt(double(n) / double(rows_.size())) / std::sqrt(double(n))) {}

  Index rows() const override { return static_cast<Index>(rows_.size()); }
  Index cols() const override { return n_; }

  void apply_into(const CVector& in, CVector& out) const override {
    require(in.size() == n_, "SubsampledDftSign::apply: signal length mismatch");
    const CVector signed_in = in.cwiseProduct(signs_.cast<Complex>());
    CVector spectrum(n_);
    fft::forward(signed_in.data(), spectrum.data(), n_);
    out.resize(rows());
    for (std::size_t i = 0; i < rows_.size(); ++i) out[Index(i)] = spectrum[rows_[i]] * scale_;
  }

  void adjoint_into(const CVector& in, CVector& out) const override {
    require(in.size() == rows(), "SubsampledDftSign::adjoint: measurement length mismatch");
    CVector spread = CVector::Zero(n_);
    for (std::size_t i = 0; i < rows_.size(); ++i) spread[rows_[i]] = in[Index(i)];
    out.resize(n_);
    fft::backward(spread.data(), out.data(), n_);
    out = out.cwiseProduct(signs_.cast<Complex>()) * scale_;
  }

 private:
  Index n_;
  std::vector<Index> rows_;
  RVector signs_;
  double scale_;
};

void check_dims(Index m, Index n) {
  require(m >= 1, "sensing: m must be >= 1");
  require(n >= 1, "sensing: n must be >= 1");
}

}  // namespace

std::string_view to_string(SensingKind kind) {
  switch (kind) {
    case SensingKind::gaussian: return "gaussian";
    case SensingKind::bernoulli: return "bernoulli";
    case SensingKind::subsampled_dft_sign: return "subsampled_dft_sign";
    case SensingKind::dense: return "dense";
  }
  return "unknown";
}

std::optional<SensingKind> parse_sensing_kind(std::string_view text) {
  if (text == "gaussian") return SensingKind::gaussian;
  if (text == "bernoulli") return SensingKind::bernoulli;
  if (text == "subsampled_dft_sign" || text == "sdft") return SensingKind::subsampled_dft_sign;
  if (text == "dense") return SensingKind::dense;
  return std::nullopt;
}

SensingOperator::SensingOperator(LinearMapPtr map, SensingDescriptor descriptor)
    : map_(std::move(map)), descriptor_(descriptor) {
  require(map_ != nullptr, "SensingOperator: null operator");
  descriptor_.m = map_->rows();
  descriptor_.n = map_->cols();
}

SensingOperator gaussian_sensing(Index m, Index n, std::uint64_t seed) {
  check_dims(m, n);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(double(m));
  RMatrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = rng.normal() * scale;
  }
  return SensingOperator(std::make_shared<RealDenseMap>(std::move(a)),
                         {SensingKind::gaussian, m, n, seed});
}

SensingOperator bernoulli_sensing(Index m, Index n, std::uint64_t seed) {
  check_dims(m, n);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(double(m));
  RMatrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = rng.sign() * scale;
  }
  return SensingOperator(std::make_shared<RealDenseMap>(std::move(a)),
                         {SensingKind::bernoulli, m, n, seed});
}

SensingOperator subsampled_dft_sign(Index m, Index n, std::uint64_t seed) {
  check_dims(m, n);
  if (m > n) {
    throw InvalidArgument("subsampled_dft_sign: m=" + std::to_string(m) + " exceeds n=" +
                          std::to_string(n));
  }
  const Rng root(seed);
  Rng sign_stream = root.split(0);
  Rng row_stream = root.split(1);
  RVector signs(n);
  for (Index j = 0; j < n; ++j) signs[j] = sign_stream.sign();
  auto rows = row_stream.sample_without_replacement(n, m);
  return SensingOperator(
      std::make_shared<SubsampledDftSignMap>(n, std::move(rows), std::move(signs)),
      {SensingKind::subsampled_dft_sign, m, n, seed});
}

SensingOperator dense_sensing(CMatrix matrix) {
  require(matrix.rows() >= 1 && matrix.cols() >= 1, "dense_sensing: empty matrix");
  return SensingOperator(std::make_shared<DenseMap>(std::move(matrix)),
                         {SensingKind::dense, 0, 0, 0});
}

SensingOperator make_sensing(const SensingDescriptor& descriptor) {
  switch (descriptor.kind) {
    case SensingKind::gaussian: return gaussian_sensing(descriptor.m, descriptor.n, descriptor.seed);
    case SensingKind::bernoulli: return bernoulli_sensing(descriptor.m, descriptor.n, descriptor.seed);
    case SensingKind::subsampled_dft_sign:
      return subsampled_dft_sign(descriptor.m, descriptor.n, descriptor.seed);
    case SensingKind::dense: break;
  }
  throw InvalidArgument("make_sensing: dense operators cannot be regenerated from a descriptor");
}

Measurement measure(const SensingOperator& a, const CVector& f, double sigma, std::uint64_t seed) {
  if (f.size() != a.n()) {
    throw InvalidArgument("measure: signal length " + std::to_string(f.size()) +
                          " != operator n " + std::to_string(a.n()));
  }
  require(sigma >= 0.0, "measure: sigma must be >= 0");
  Measurement out;
  out.y = a.apply(f);
  if (sigma == 0.0) return out;
  Rng rng(seed);
  const bool complex_noise = !(a.map()->has_real_entries() && is_real(f));
  CVector z(a.m());
  for (Index i = 0; i < z.size(); ++i) {
    z[i] = complex_noise ? sigma * rng.complex_normal() : Complex(sigma * rng.normal(), 0.0);
  }
  out.noise_norm = z.norm();
  out.y += z;
  return out;
}

double percentile_epsilon(Index m, double sigma) {
  const double md = double(m);
  return std::sqrt(md + 2.0 * std::sqrt(2.0 * md)) * sigma;
}

}  // namespace cosparse

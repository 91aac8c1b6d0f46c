#include "cosparse/frames.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cosparse/fft.hpp"
#include "cosparse/gabor.hpp"
#include "cosparse/rng.hpp"

namespace cosparse {
namespace {

/// D: C^{cn} -> C^n, f[t] = sum_k x_k e^{-2 pi i k t / N} / sqrt(N), N = cn.
class OversampledDftMap final : public LinearMap {
 public:
  OversampledDftMap(Index n, Index c) : n_(n), big_(n * c), scale_(1.0 / std::sqrt(double(n * c))) {}

  Index rows() const override { return n_; }
  Index cols() const override { return big_; }

  void apply_into(const CVector& in, CVector& out) const override {
    require(in.size() == big_, "OversampledDft::apply: coefficient length mismatch");
    CVector full(big_);
    fft::forward(in.data(), full.data(), big_);
    out = full.head(n_) * scale_;
  }

  void adjoint_into(const CVector& in, CVector& out) const override {
    require(in.size() == n_, "OversampledDft::adjoint: signal length mismatch");
    CVector padded = CVector::Zero(big_);
    padded.head(n_) = in;
    out.resize(big_);
    fft::backward(padded.data(), out.data(), big_);
    out *= scale_;
  }

 private:
  Index n_;
  Index big_;
  double scale_;
};

/// Hermitian (D D^*) assembled column by column.
CMatrix frame_operator_dense(const Dictionary& dict) {
  const Index n = dict.n();
  CMatrix s(n, n);
  CVector e = CVector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    s.col(j) = dict.apply(dict.adjoint(e));
    e[j] = 0.0;
  }
  return (s + s.adjoint()) * 0.5;
}

const GaborMap* as_gabor(const Dictionary& dict) {
  return dynamic_cast<const GaborMap*>(dict.map().get());
}

/// Largest eigenvalue of a PSD operator by power iteration.
double power_max(const std::function<CVector(const CVector&)>& op, Index n, std::uint64_t seed,
                 int max_iter = 5000, double tol = 1e-10) {
  Rng rng(seed);
  CVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.complex_normal();
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    CVector w = op(v);
    const double next = std::real(v.dot(w));
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (it > 0 && std::abs(next - lambda) <= tol * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

std::string_view to_string(DictionaryKind kind) {
  switch (kind) {
    case DictionaryKind::dense: return "dense";
    case DictionaryKind::oversampled_dft: return "oversampled_dft";
    case DictionaryKind::gabor: return "gabor";
    case DictionaryKind::concat: return "concat";
  }
  return "unknown";
}

Dictionary::Dictionary(LinearMapPtr map, DictionaryKind kind, bool tight,
                       std::optional<FrameBounds> bounds)
    : map_(std::move(map)), kind_(kind), tight_(tight), bounds_(bounds) {
  require(map_ != nullptr, "Dictionary: null operator");
}

LinearMapPtr Dictionary::analysis_map() const { return std::make_shared<AdjointMap>(map_); }

std::optional<CMatrix> Dictionary::dense_matrix(Index cap) const {
  if (n() * d() > cap) return std::nullopt;
  return map_->to_dense();
}

CMatrix Dictionary::materialize(Index cap) const {
  auto m = dense_matrix(cap);
  if (!m) {
    throw CapExceeded("dictionary " + std::to_string(n()) + "x" + std::to_string(d()) +
                      " exceeds the materialization cap of " + std::to_string(cap) + " entries");
  }
  return *std::move(m);
}

Dictionary dense_dictionary(CMatrix matrix) {
  require(matrix.rows() >= 1 && matrix.cols() >= 1, "dense_dictionary: empty matrix");
  const Index n = matrix.rows();
  const CMatrix s = matrix * matrix.adjoint();
  const bool tight = (s - CMatrix::Identity(n, n)).norm() <= 1e-10 * std::sqrt(double(n));
  return Dictionary(std::make_shared<DenseMap>(std::move(matrix)), DictionaryKind::dense, tight);
}

Dictionary identity_dictionary(Index n) {
  require(n >= 1, "identity_dictionary: n must be >= 1");
  return Dictionary(std::make_shared<IdentityMap>(n), DictionaryKind::dense, true,
                    FrameBounds{1.0, 1.0});
}

Dictionary build_oversampled_dft(Index n, Index c) {
  require(n >= 1, "build_oversampled_dft: n must be >= 1");
  require(c >= 1, "build_oversampled_dft: oversampling factor must be >= 1");
  return Dictionary(std::make_shared<OversampledDftMap>(n, c), DictionaryKind::oversampled_dft,
                    true, FrameBounds{1.0, 1.0});
}

Dictionary build_gabor(const GaborParams& params) {
  const Index n = params.n;
  require(n >= 1, "build_gabor: n must be >= 1");
  require(params.a >= 1, "build_gabor: time step a must be >= 1");
  require(params.b > 0.0 && params.b <= 1.0, "build_gabor: frequency step b must lie in (0, 1]");
  require(params.window_sigma > 0.0, "build_gabor: window sigma must be positive");
  const double inv_b = 1.0 / params.b;
  const auto channels = static_cast<Index>(std::llround(inv_b));
  require(std::abs(inv_b - double(channels)) <= 1e-9 * inv_b,
          "build_gabor: 1/b must be an integer number of frequency channels");
  if (double(params.a) * params.b > 1.0 + 1e-12) {
    throw InvalidArgument("build_gabor: a*b = " + std::to_string(double(params.a) * params.b) +
                          " > 1; an undersampled Gabor system cannot be a frame");
  }

  CVector window(n);
  for (Index t = 0; t < n; ++t) {
    const double dist = double(std::min(t, n - t));
    window[t] = std::isinf(params.window_sigma)
                    ? 1.0
                    : std::exp(-dist * dist / (2.0 * params.window_sigma * params.window_sigma));
  }
  window /= window.norm();

  auto map = std::make_shared<GaborMap>(std::move(window), params.a, channels);
  FrameBounds bounds{std::numeric_limits<double>::infinity(), 0.0};
  for (const CMatrix& block : map->frame_operator_blocks()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(block, Eigen::EigenvaluesOnly);
    bounds.lower = std::min(bounds.lower, eig.eigenvalues().minCoeff());
    bounds.upper = std::max(bounds.upper, eig.eigenvalues().maxCoeff());
  }
  bounds.lower = std::max(bounds.lower, 0.0);
  const bool tight = std::abs(bounds.upper - 1.0) <= 1e-10 && std::abs(bounds.lower - 1.0) <= 1e-10;
  return Dictionary(std::move(map), DictionaryKind::gabor, tight, bounds);
}

Dictionary build_concat(const Dictionary& d1, const Dictionary& d2, double scale) {
  if (d1.n() != d2.n()) {
    throw InvalidArgument("build_concat: dimension mismatch (n1=" + std::to_string(d1.n()) +
                          ", n2=" + std::to_string(d2.n()) + ")");
  }
  require(scale > 0.0, "build_concat: scale must be positive");
  auto stacked = std::make_shared<HStackMap>(std::vector<LinearMapPtr>{d1.map(), d2.map()});
  auto map = std::make_shared<ScaledMap>(std::move(stacked), scale);
  // D D^* = scale^2 (D1 D1^* + D2 D2^*); tight when both parts are tight and
  // scale^2 * 2 == 1.
  const bool tight = d1.is_tight() && d2.is_tight() && std::abs(2.0 * scale * scale - 1.0) <= 1e-12;
  std::optional<FrameBounds> bounds;
  if (tight) bounds = FrameBounds{1.0, 1.0};
  return Dictionary(std::move(map), DictionaryKind::concat, tight, bounds);
}

Dictionary tighten(const Dictionary& dict) {
  const Index n = dict.n();
  if (const GaborMap* gabor = as_gabor(dict)) {
    std::vector<CMatrix> blocks = gabor->frame_operator_blocks();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<CMatrix> whiten;
    whiten.reserve(blocks.size());
    for (const CMatrix& block : blocks) {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(block);
      lo = std::min(lo, eig.eigenvalues().minCoeff());
      hi = std::max(hi, eig.eigenvalues().maxCoeff());
      const RVector inv_sqrt = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().cwiseInverse();
      whiten.emplace_back(eig.eigenvectors() * inv_sqrt.asDiagonal() *
                          eig.eigenvectors().adjoint());
    }
    if (!(lo > 1e-12 * hi)) throw NumericalError("tighten: not a frame (D D^* is singular)");
    auto w = std::make_shared<ResidueBlockMap>(n, std::move(whiten));
    return Dictionary(std::make_shared<ComposedMap>(std::move(w), dict.map()), dict.kind(), true,
                      FrameBounds{1.0, 1.0});
  }

  const CMatrix s = frame_operator_dense(dict);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(s);
  const RVector& lambda = eig.eigenvalues();
  if (!(lambda.minCoeff() > 1e-12 * lambda.maxCoeff())) {
    throw NumericalError("tighten: not a frame (D D^* is singular)");
  }
  if ((s - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12) {
    return Dictionary(dict.map(), dict.kind(), true, FrameBounds{1.0, 1.0});
  }
  const RVector inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
  CMatrix w = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().adjoint();
  auto wmap = std::make_shared<DenseMap>(std::move(w));
  return Dictionary(std::make_shared<ComposedMap>(std::move(wmap), dict.map()), dict.kind(), true,
                    FrameBounds{1.0, 1.0});
}

FrameBounds frame_bounds(const Dictionary& dict, Index dense_limit) {
  if (const GaborMap* gabor = as_gabor(dict)) {
    FrameBounds b{std::numeric_limits<double>::infinity(), 0.0};
    for (const CMatrix& block : gabor->frame_operator_blocks()) {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(block, Eigen::EigenvaluesOnly);
      b.lower = std::min(b.lower, eig.eigenvalues().minCoeff());
      b.upper = std::max(b.upper, eig.eigenvalues().maxCoeff());
    }
    b.lower = std::max(b.lower, 0.0);
    return b;
  }
  const Index n = dict.n();
  if (n <= dense_limit) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(frame_operator_dense(dict), Eigen::EigenvaluesOnly);
    return {std::max(eig.eigenvalues().minCoeff(), 0.0), eig.eigenvalues().maxCoeff()};
  }
  auto frame_op = [&](const CVector& v) { return dict.apply(dict.adjoint(v)); };
  const double upper = power_max(frame_op, n, 0x5EED);
  // lambda_max(B I - S) = B - A
  auto shifted = [&](const CVector& v) -> CVector { return upper * v - frame_op(v); };
  const double gap = power_max(shifted, n, 0x5EED + 1);
  return {std::max(upper - gap, 0.0), upper};
}

double coherence(const CMatrix& matrix) {
  const Index d = matrix.cols();
  require(d >= 1, "coherence: empty matrix");
  RVector norms = matrix.colwise().norm().transpose();
  for (Index j = 0; j < d; ++j) {
    if (norms[j] == 0.0) throw InvalidArgument("coherence: column " + std::to_string(j) + " is zero");
  }
  if (d == 1) return 0.0;
  const CMatrix normalized = matrix * norms.cwiseInverse().asDiagonal();
  double mu = 0.0;
  constexpr Index kBlock = 512;
  for (Index start = 0; start < d; start += kBlock) {
    const Index width = std::min(kBlock, d - start);
    const CMatrix gram = normalized.adjoint() * normalized.middleCols(start, width);
    for (Index c = 0; c < width; ++c) {
      for (Index r = 0; r < d; ++r) {
        if (r == start + c) continue;
        mu = std::max(mu, std::abs(gram(r, c)));
      }
    }
  }
  return std::min(mu, 1.0);
}

double coherence(const Dictionary& dict, Index cap) { return coherence(dict.materialize(cap)); }

double gram_pnorm_factor(const Dictionary& dict, double p, Index cap) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("gram_pnorm_factor: p must lie in (0, 1], got " + std::to_string(p));
  }
  const CMatrix dmat = dict.materialize(cap);
  const Index d = dmat.cols();
  double worst = 0.0;
  constexpr Index kBlock = 512;
  for (Index start = 0; start < d; start += kBlock) {
    const Index width = std::min(kBlock, d - start);
    const CMatrix gram = dmat.adjoint() * dmat.middleCols(start, width);
    for (Index c = 0; c < width; ++c) {
      worst = std::max(worst, gram.col(c).cwiseAbs().array().pow(p).sum());
    }
  }
  return std::pow(worst, 1.0 / p);
}

double pnorm(const CVector& v, double p) {
  return std::pow(v.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

double parseval_defect(const Dictionary& dict, int trials, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    CVector f(dict.n());
    for (Index i = 0; i < f.size(); ++i) f[i] = rng.complex_normal();
    worst = std::max(worst, (dict.apply(dict.adjoint(f)) - f).norm() / f.norm());
  }
  return worst;
}

}  // namespace cosparse

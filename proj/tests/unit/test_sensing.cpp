#include <gtest/gtest.h>

#include <cmath>

#include <cosparse/sensing.hpp>

#include "oracles.hpp"

using namespace cosparse;

TEST(GaussianSensing, SameSeedGivesBitIdenticalOperator) {
  const CMatrix a = gaussian_sensing(5, 9, 3).materialize();
  const CMatrix b = gaussian_sensing(5, 9, 3).materialize();
  EXPECT_EQ((a - b).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NE((a - gaussian_sensing(5, 9, 4).materialize()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(GaussianSensing, FirstRowIsDrawnRowMajorFromTheSeed) {
  const CMatrix a = gaussian_sensing(4, 6, 77).materialize();
  Rng rng(77);
  for (Index j = 0; j < 6; ++j) EXPECT_EQ(a(0, j).real(), rng.normal() / 2.0);
  EXPECT_TRUE(gaussian_sensing(4, 6, 77).map()->has_real_entries());
}

TEST(GaussianSensing, EntryVarianceIsOneOverM) {
  const Index m = 100, n = 1000;
  const CMatrix a = gaussian_sensing(m, n, 5).materialize();
  const double var = a.cwiseAbs2().sum() / double(m * n);
  EXPECT_NEAR(var * m, 1.0, 0.05);
  EXPECT_NEAR(a.real().mean(), 0.0, 0.01 / std::sqrt(double(m)));
}

TEST(GaussianSensing, PreservesNormInExpectation) {
  const CVector v = oracle::random_vector(50, 1);
  double ratio = 0.0;
  for (int t = 0; t < 2000; ++t) {
    ratio += gaussian_sensing(20, 50, 1000 + t).apply(v).squaredNorm() / v.squaredNorm() / 2000.0;
  }
  EXPECT_GE(ratio, 0.97);
  EXPECT_LE(ratio, 1.03);
}

TEST(BernoulliSensing, EntriesHaveMagnitudeOneOverRootM) {
  const CMatrix a = bernoulli_sensing(9, 30, 2).materialize();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) EXPECT_EQ(std::abs(a(i, j)), 1.0 / 3.0);
  }
  EXPECT_EQ((a - bernoulli_sensing(9, 30, 2).materialize()).norm(), 0.0);
}

TEST(BernoulliSensing, PreservesNormInExpectation) {
  const CVector v = oracle::random_vector(50, 2);
  double ratio = 0.0;
  for (int t = 0; t < 2000; ++t) {
    ratio += bernoulli_sensing(20, 50, 5000 + t).apply(v).squaredNorm() / v.squaredNorm() / 2000.0;
  }
  EXPECT_GE(ratio, 0.97);
  EXPECT_LE(ratio, 1.03);
}

TEST(SubsampledDft, FullSamplingIsAnIsometry) {
  const SensingOperator a = subsampled_dft_sign(16, 16, 3);
  const CVector v = oracle::random_vector(16, 3);
  EXPECT_NEAR(a.apply(v).norm(), v.norm(), 1e-12 * v.norm());
}

TEST(SubsampledDft, FastPathMatchesDenseFormula) {
  for (Index n : {16, 64}) {
    const Index m = n / 4;
    const SensingOperator a = subsampled_dft_sign(m, n, 9);
    // Rebuild sqrt(n/m) R F S from the documented streams.
    const Rng root(9);
    Rng sign_stream = root.split(0);
    Rng row_stream = root.split(1);
    RVector signs(n);
    for (Index j = 0; j < n; ++j) signs[j] = sign_stream.sign();
    const auto rows = row_stream.sample_without_replacement(n, m);
    const CMatrix f = oracle::dft_matrix(n);
    CMatrix dense(m, n);
    for (Index i = 0; i < m; ++i) {
      dense.row(i) = std::sqrt(double(n) / double(m)) * f.row(rows[static_cast<std::size_t>(i)]) *
                     signs.cast<Complex>().asDiagonal();
    }
    EXPECT_LE((a.materialize() - dense).norm(), 1e-10 * dense.norm());
    const CVector v = oracle::random_vector(n, 4);
    EXPECT_LE((a.adjoint(a.apply(v)) - dense.adjoint() * (dense * v)).norm(), 1e-10 * v.norm());
  }
}

TEST(SubsampledDft, IsotropicOverAllRowSets) {
  // Average ||R F S v||^2 over every 2-subset of rows of the 8-point DFT.
  const Index n = 8, m = 2;
  const CVector v = oracle::random_vector(n, 5);
  const CMatrix f = oracle::dft_matrix(n);
  const CVector fv = f * v;
  double total = 0.0;
  int count = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      total += double(n) / double(m) * (std::norm(fv[i]) + std::norm(fv[j]));
      ++count;
    }
  }
  EXPECT_NEAR(total / count, v.squaredNorm(), 1e-12 * v.squaredNorm());
}

TEST(SubsampledDft, MoreRowsThanSamplesIsRejected) {
  EXPECT_THROW(subsampled_dft_sign(9, 8, 1), InvalidArgument);
}

TEST(Sensing, OperatorsAreLinearAndAdjointConsistent) {
  const std::vector<SensingOperator> ops = {gaussian_sensing(6, 10, 1), bernoulli_sensing(6, 10, 2),
                                            subsampled_dft_sign(6, 10, 3),
                                            dense_sensing(oracle::random_real_matrix(3, 10, 4).cast<Complex>())};
  const CVector u = oracle::random_vector(10, 1), v = oracle::random_vector(10, 2);
  const Complex alpha(0.3, -1.2), beta(2.0, 0.5);
  for (const SensingOperator& a : ops) {
    const CVector lhs = a.apply(alpha * u + beta * v);
    const CVector rhs = alpha * a.apply(u) + beta * a.apply(v);
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
    EXPECT_LE(adjoint_mismatch(*a.map(), 200, 5), 1e-10);
  }
}

TEST(Sensing, DescriptorRegeneratesTheOperator) {
  for (SensingKind kind : {SensingKind::gaussian, SensingKind::bernoulli, SensingKind::subsampled_dft_sign}) {
    const SensingOperator a = make_sensing({kind, 5, 12, 99});
    const SensingOperator b = make_sensing(a.descriptor());
    EXPECT_EQ(a.descriptor(), b.descriptor());
    EXPECT_EQ((a.materialize() - b.materialize()).cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_THROW(make_sensing({SensingKind::dense, 2, 2, 0}), InvalidArgument);
  EXPECT_EQ(parse_sensing_kind("sdft"), SensingKind::subsampled_dft_sign);
  EXPECT_FALSE(parse_sensing_kind("nope").has_value());
}

TEST(Measure, NoiselessMeasurementIsExact) {
  const SensingOperator a = gaussian_sensing(8, 20, 1);
  const CVector f = oracle::random_vector(20, 6);
  const Measurement y = measure(a, f, 0.0, 3);
  EXPECT_EQ((y.y - a.apply(f)).norm(), 0.0);
  EXPECT_EQ(y.noise_norm, 0.0);
}

TEST(Measure, NoiseEnergyMatchesSigma) {
  const SensingOperator a = gaussian_sensing(40, 20, 1);
  const CVector f = oracle::random_real_vector(20, 7).cast<Complex>();
  const double sigma = 0.3;
  double energy = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Measurement y = measure(a, f, sigma, 100 + t);
    EXPECT_NEAR((y.y - a.apply(f)).norm(), y.noise_norm, 1e-12);
    energy += y.noise_norm * y.noise_norm / 1000.0;
  }
  EXPECT_NEAR(energy / (40 * sigma * sigma), 1.0, 0.05);
}

TEST(Measure, ComplexNoiseSplitsVarianceAcrossParts) {
  const SensingOperator a = subsampled_dft_sign(50, 64, 1);
  const CVector f = oracle::random_vector(64, 8);
  double re = 0.0, im = 0.0;
  for (int t = 0; t < 400; ++t) {
    const CVector z = measure(a, f, 1.0, 500 + t).y - a.apply(f);
    re += z.real().squaredNorm() / (400.0 * 50.0);
    im += z.imag().squaredNorm() / (400.0 * 50.0);
  }
  EXPECT_NEAR(re, 0.5, 0.03);
  EXPECT_NEAR(im, 0.5, 0.03);
}

TEST(Measure, DeterministicUnderSeed) {
  const SensingOperator a = gaussian_sensing(8, 20, 1);
  const CVector f = oracle::random_vector(20, 9);
  EXPECT_EQ((measure(a, f, 0.1, 5).y - measure(a, f, 0.1, 5).y).norm(), 0.0);
  EXPECT_THROW(measure(a, CVector::Zero(19), 0.1, 5), InvalidArgument);
}

TEST(Measure, PercentileEpsilonFormula) {
  EXPECT_NEAR(percentile_epsilon(50, 0.2), std::sqrt(50.0 + 2.0 * std::sqrt(100.0)) * 0.2, 1e-15);
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <cosparse/frames.hpp>
#include <cosparse/gabor.hpp>

#include "oracles.hpp"

using namespace cosparse;

namespace {

double gram_defect(const CMatrix& d) {
  return (d * d.adjoint() - CMatrix::Identity(d.rows(), d.rows())).norm();
}

Dictionary concat_if(Index n) {
  return build_concat(identity_dictionary(n), build_oversampled_dft(n, 1), 1.0 / std::sqrt(2.0));
}

/// Gabor synthesis matrix straight from the atom formula.
CMatrix gabor_oracle(Index n, double sigma, Index a, Index channels) {
  RVector g(n);
  for (Index t = 0; t < n; ++t) {
    const double dist = double(std::min(t, n - t));
    g[t] = std::isinf(sigma) ? 1.0 : std::exp(-dist * dist / (2.0 * sigma * sigma));
  }
  g /= g.norm();
  const Index shifts = n / a;
  CMatrix d(n, shifts * channels);
  for (Index k2 = 0; k2 < shifts; ++k2) {
    for (Index k1 = 0; k1 < channels; ++k1) {
      for (Index t = 0; t < n; ++t) {
        const double phase = 2.0 * std::numbers::pi * double((k1 * t) % channels) / double(channels);
        d(t, k2 * channels + k1) = g[((t - k2 * a) % n + n) % n] * std::polar(1.0, phase);
      }
    }
  }
  return d;
}

}  // namespace

TEST(OversampledDft, UnitaryWhenNotOversampled) {
  const Dictionary d = build_oversampled_dft(4, 1);
  const CMatrix m = d.materialize();
  EXPECT_LE(gram_defect(m), 1e-12);
  EXPECT_LE((m - oracle::dft_matrix(4).transpose()).norm(), 1e-12);
  EXPECT_TRUE(d.is_tight());
}

TEST(OversampledDft, AtomsFollowTheFormulaAndFormATightFrame) {
  const Dictionary d = build_oversampled_dft(4, 2);
  ASSERT_EQ(d.d(), 8);
  const CMatrix m = d.materialize();
  for (Index k = 0; k < 8; ++k) {
    EXPECT_NEAR(m.col(k).norm(), 1.0 / std::sqrt(2.0), 1e-14);
    for (Index t = 0; t < 4; ++t) {
      const Complex expected =
          std::polar(1.0 / std::sqrt(8.0), -2.0 * std::numbers::pi * double(k * t) / 8.0);
      EXPECT_LE(std::abs(m(t, k) - expected), 1e-14);
    }
  }
  EXPECT_LE(gram_defect(m), 1e-12);
}

TEST(OversampledDft, AdjacentAtomsAreHighlyCoherent) {
  const CMatrix m = build_oversampled_dft(16, 4).materialize();
  // Dirichlet-kernel ratio for a frequency offset of 1/64.
  Complex sum = 0.0;
  for (Index t = 0; t < 16; ++t) sum += std::polar(1.0, 2.0 * std::numbers::pi * double(t) / 64.0);
  const double expected = std::abs(sum) / 16.0;
  const double measured = std::abs(m.col(3).dot(m.col(4))) / (m.col(3).norm() * m.col(4).norm());
  EXPECT_NEAR(measured, expected, 1e-12);
  EXPECT_GT(measured, 0.9);
  EXPECT_GT(coherence(m), 0.9);
}

TEST(Gabor, FlatWindowWithFullStepIsTheFourierBasis) {
  const Dictionary d = build_gabor({8, std::numeric_limits<double>::infinity(), 8, 1.0 / 8});
  ASSERT_EQ(d.d(), 8);
  const CMatrix m = d.materialize();
  EXPECT_LE((m - oracle::dft_matrix(8).adjoint()).norm(), 1e-12);
  ASSERT_TRUE(d.bounds().has_value());
  EXPECT_NEAR(d.bounds()->ratio(), 1.0, 1e-10);
}

TEST(Gabor, FastOperatorMatchesAtomFormula) {
  const Dictionary d = build_gabor({64, 4.0, 4, 1.0 / 16});
  ASSERT_EQ(d.d(), 256);
  EXPECT_LE((d.materialize() - gabor_oracle(64, 4.0, 4, 16)).norm(), 1e-11);
  for (Index k = 0; k < d.d(); k += 17) {
    EXPECT_NEAR(d.materialize().col(k).norm(), 1.0, 1e-12);
  }
}

TEST(Gabor, FrameBoundsMatchDenseEigensolve) {
  const Dictionary d = build_gabor({64, 4.0, 4, 1.0 / 16});
  const CMatrix m = gabor_oracle(64, 4.0, 4, 16);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m * m.adjoint());
  ASSERT_TRUE(d.bounds().has_value());
  EXPECT_GT(d.bounds()->lower, 0.0);
  EXPECT_NEAR(d.bounds()->lower, eig.eigenvalues().minCoeff(), 1e-9);
  EXPECT_NEAR(d.bounds()->upper, eig.eigenvalues().maxCoeff(), 1e-9);
  const FrameBounds fb = frame_bounds(d);
  EXPECT_NEAR(fb.lower, eig.eigenvalues().minCoeff(), 1e-9);
  EXPECT_FALSE(d.is_tight());
}

TEST(Gabor, TightenedFrameIsParseval) {
  const Dictionary t = tighten(build_gabor({64, 4.0, 4, 1.0 / 16}));
  EXPECT_TRUE(t.is_tight());
  const CMatrix m = t.materialize();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(m * m.adjoint());
  EXPECT_NEAR(eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff(), 1.0, 1e-8);
  EXPECT_LE(parseval_defect(t, 100, 3), 1e-8);
  EXPECT_LE(adjoint_mismatch(*t.map(), 200, 4), 1e-10);
}

TEST(Gabor, UndersampledGridsAreRejected) {
  EXPECT_THROW(build_gabor({8, 2.0, 4, 1.0 / 2}), InvalidArgument);
  EXPECT_THROW(build_gabor({8, 2.0, 1, 0.3}), InvalidArgument);
}

TEST(Concat, IdentityAndFourierHalvesFormATightFrame) {
  const Dictionary d = concat_if(4);
  EXPECT_TRUE(d.is_tight());
  EXPECT_LE(gram_defect(d.materialize()), 1e-12);
}

TEST(Concat, DuplicatedBasisIsTightWithUnitCoherence) {
  const Dictionary d = build_concat(identity_dictionary(4), identity_dictionary(4), 1.0 / std::sqrt(2.0));
  EXPECT_LE(gram_defect(d.materialize()), 1e-12);
  EXPECT_NEAR(coherence(d), 1.0, 1e-15);
}

TEST(Concat, AdjointOfBasisVectorByHand) {
  const Dictionary d = concat_if(4);
  for (Index j : {0, 1}) {
    CVector e = CVector::Zero(4);
    e[j] = 1.0;
    const CVector c = d.adjoint(e);
    ASSERT_EQ(c.size(), 8);
    for (Index k = 0; k < 4; ++k) {
      const Complex first = k == j ? 1.0 / std::sqrt(2.0) : 0.0;
      // Conjugate of atom k of the DFT block at sample j, then scaled.
      const Complex second =
          std::polar(0.5, 2.0 * std::numbers::pi * double(k * j) / 4.0) / std::sqrt(2.0);
      EXPECT_LE(std::abs(c[k] - first), 1e-14);
      EXPECT_LE(std::abs(c[4 + k] - second), 1e-14);
    }
  }
}

TEST(Concat, MismatchedDimensionsAreRejected) {
  EXPECT_THROW(build_concat(identity_dictionary(4), identity_dictionary(5), 1.0), InvalidArgument);
}

TEST(Tighten, TightInputIsReturnedUnchanged) {
  const Dictionary d = concat_if(8);
  const Dictionary t = tighten(d);
  EXPECT_LE((t.materialize() - d.materialize()).norm(), 1e-10);
}

TEST(Tighten, ScaledOrthobasisBecomesTheBasis) {
  const Dictionary d = dense_dictionary(2.0 * CMatrix::Identity(4, 4));
  EXPECT_LE((tighten(d).materialize() - CMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(Tighten, RankDeficientSystemIsNotAFrame) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  EXPECT_THROW(tighten(dense_dictionary(m)), NumericalError);
}

TEST(FrameBounds, AnalyticCases) {
  const FrameBounds unitary = frame_bounds(build_oversampled_dft(8, 1));
  EXPECT_NEAR(unitary.lower, 1.0, 1e-10);
  EXPECT_NEAR(unitary.upper, 1.0, 1e-10);
  const FrameBounds cif = frame_bounds(concat_if(16));
  EXPECT_NEAR(cif.lower, 1.0, 1e-10);
  EXPECT_NEAR(cif.upper, 1.0, 1e-10);
  CMatrix m(3, 6);
  m << CMatrix::Identity(3, 3), 2.0 * CMatrix::Identity(3, 3);
  const FrameBounds five = frame_bounds(dense_dictionary(m));
  EXPECT_NEAR(five.lower, 5.0, 1e-10);
  EXPECT_NEAR(five.upper, 5.0, 1e-10);
}

TEST(FrameBounds, PowerIterationPathAgreesWithDenseEigensolve) {
  const Dictionary d = dense_dictionary(oracle::random_real_matrix(12, 20, 5).cast<Complex>());
  const FrameBounds dense = frame_bounds(d);
  const FrameBounds iterative = frame_bounds(d, 4);
  EXPECT_NEAR(iterative.upper / dense.upper, 1.0, 1e-6);
  EXPECT_NEAR(iterative.lower / dense.lower, 1.0, 1e-6);
}

TEST(Coherence, AnalyticCases) {
  EXPECT_EQ(coherence(CMatrix::Identity(5, 5)), 0.0);
  CMatrix dup = CMatrix::Identity(3, 3);
  dup.col(1) = dup.col(0);
  EXPECT_NEAR(coherence(dup), 1.0, 1e-15);
  CMatrix m(4, 8);
  m << CMatrix::Identity(4, 4), oracle::dft_matrix(4);
  EXPECT_NEAR(coherence(m), 0.5, 1e-15);
  EXPECT_NEAR(coherence(concat_if(4)), 0.5, 1e-15);
  CMatrix zero = CMatrix::Identity(3, 3);
  zero.col(2).setZero();
  EXPECT_THROW(coherence(zero), InvalidArgument);
}

TEST(Coherence, ScaleInvariant) {
  CMatrix m(6, 10);
  for (Index j = 0; j < 10; ++j) m.col(j) = oracle::random_vector(6, 40 + j);
  const double base = coherence(m);
  EXPECT_EQ(coherence(2.0 * m), base);
  EXPECT_EQ(coherence(0.25 * m), base);
  EXPECT_NEAR(coherence(3.0 * m), base, 1e-15);
}

TEST(GramPnorm, OrthonormalDictionaryGivesOne) {
  // Rounding-level off-diagonal Gram entries are amplified by small p, so the
  // factor is 1 only up to (n eps)^p.
  EXPECT_NEAR(gram_pnorm_factor(build_oversampled_dft(8, 1), 1.0), 1.0, 1e-12);
  EXPECT_NEAR(gram_pnorm_factor(build_oversampled_dft(8, 1), 0.5), 1.0, 1e-6);
  EXPECT_NEAR(gram_pnorm_factor(identity_dictionary(8), 0.25), 1.0, 1e-15);
}

TEST(GramPnorm, ConcatIdentityFourierAtFourSamples) {
  EXPECT_NEAR(gram_pnorm_factor(concat_if(4), 1.0), 1.5, 1e-12);
  EXPECT_THROW(gram_pnorm_factor(concat_if(4), 0.0), InvalidArgument);
  EXPECT_THROW(gram_pnorm_factor(concat_if(4), 1.5), InvalidArgument);
}

TEST(GramPnorm, BoundsAnalysisCoefficientsOfSparseSynthesis) {
  const Dictionary d = concat_if(16);
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = trial % 2 == 0 ? 0.5 : 1.0;
    CVector x = CVector::Zero(d.d());
    for (Index i : rng.sample_without_replacement(d.d(), 3)) x[i] = rng.complex_normal();
    const double lhs = pnorm(d.adjoint(d.apply(x)), p);
    EXPECT_LE(lhs, gram_pnorm_factor(d, p) * pnorm(x, p) * (1.0 + 1e-12));
  }
}

TEST(Dictionary, AdjointConsistencyForEveryConstructor) {
  const std::vector<Dictionary> dicts = {
      identity_dictionary(7),
      build_oversampled_dft(9, 3),
      build_gabor({48, 3.0, 4, 1.0 / 8}),
      tighten(build_gabor({48, 3.0, 4, 1.0 / 8})),
      concat_if(10),
      dense_dictionary(oracle::random_real_matrix(5, 9, 3).cast<Complex>()),
  };
  for (const Dictionary& d : dicts) EXPECT_LE(adjoint_mismatch(*d.map(), 200, 8), 1e-10);
}

TEST(Dictionary, TightConstructorsSatisfyParseval) {
  for (const Dictionary& d : {build_oversampled_dft(12, 5), concat_if(25), identity_dictionary(6)}) {
    ASSERT_TRUE(d.is_tight());
    EXPECT_LE(parseval_defect(d, 100, 9), 1e-8);
  }
}

TEST(Dictionary, MaterializationCapBlocksOnlyDenseExport) {
  const Dictionary d = build_oversampled_dft(64, 4);
  EXPECT_FALSE(d.dense_matrix(1000).has_value());
  EXPECT_THROW(d.materialize(1000), CapExceeded);
  const CVector f = oracle::random_vector(64, 1);
  EXPECT_LE((d.apply(d.adjoint(f)) - f).norm(), 1e-12 * f.norm());
}

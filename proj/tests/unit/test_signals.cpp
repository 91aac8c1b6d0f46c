#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <cosparse/frames.hpp>
#include <cosparse/signals.hpp>

#include "oracles.hpp"

using namespace cosparse;

TEST(PulseTrain, RectangularPulseHasBinaryEnvelope) {
  PulseParams p;
  p.num_pulses = 1;
  p.duration = 20;
  p.rise_fall = 0;
  p.seed = 3;
  p.real_output = false;
  const PulseTrain train = radar_pulse_train(64, p);
  ASSERT_EQ(train.pulses.size(), 1u);
  for (Index t = 0; t < 64; ++t) {
    const double mag = std::abs(train.signal.samples[t]);
    EXPECT_TRUE(std::abs(mag) < 1e-15 || std::abs(mag - 1.0) < 1e-12) << t;
  }
}

TEST(PulseTrain, EnvelopeIsTrapezoidal) {
  for (Index tau = -2; tau < 30; ++tau) {
    double expected = 0.0;
    if (tau >= 0 && tau < 25) expected = std::min({1.0, double(tau) / 5.0, double(25 - tau) / 5.0});
    EXPECT_NEAR(pulse_envelope(25, 5, tau), expected, 1e-15) << tau;
  }
}

TEST(PulseTrain, SamplesRegenerateFromParameters) {
  PulseParams p;
  p.num_pulses = 4;
  p.duration = 40;
  p.rise_fall = 6;
  p.seed = 12;
  p.real_output = false;
  const Index n = 256;
  const PulseTrain train = radar_pulse_train(n, p);
  CVector expected = CVector::Zero(n);
  for (const Pulse& pulse : train.pulses) {
    EXPECT_GE(pulse.start, 0);
    EXPECT_LE(pulse.start, n - p.duration);
    EXPECT_GE(pulse.frequency, p.f_lo);
    EXPECT_LE(pulse.frequency, p.f_hi);
    for (Index t = pulse.start; t < pulse.start + p.duration; ++t) {
      expected[t] += pulse_envelope(p.duration, p.rise_fall, t - pulse.start) *
                     std::polar(1.0, 2.0 * std::numbers::pi * pulse.frequency * double(t));
    }
  }
  EXPECT_LE((train.signal.samples - expected).norm(), 1e-12 * expected.norm());
  p.real_output = true;
  EXPECT_LE((radar_pulse_train(n, p).signal.samples - expected.real().cast<Complex>()).norm(),
            1e-12 * expected.norm());
}

TEST(PulseTrain, InfeasibleParametersAreRejected) {
  PulseParams p;
  p.duration = 10;
  p.rise_fall = 6;
  EXPECT_THROW(radar_pulse_train(64, p), InvalidArgument);
  p.rise_fall = 2;
  p.duration = 65;
  EXPECT_THROW(radar_pulse_train(64, p), InvalidArgument);
  p.duration = 10;
  p.f_hi = 0.6;
  EXPECT_THROW(radar_pulse_train(64, p), InvalidArgument);
}

TEST(DiracComb, SpikesEveryRootNSamples) {
  const Signal f = dirac_comb(16);
  for (Index t = 0; t < 16; ++t) EXPECT_EQ(f.samples[t], Complex(t % 4 == 0 ? 1.0 : 0.0)) << t;
  EXPECT_THROW(dirac_comb(15), InvalidArgument);
}

TEST(DiracComb, AnalysisCoefficientsUnderConcatAreTwoCopies) {
  for (Index r = 2; r * r <= 400; ++r) {
    const Index n = r * r;
    const Dictionary d =
        build_concat(identity_dictionary(n), build_oversampled_dft(n, 1), 1.0 / std::sqrt(2.0));
    const CVector f = dirac_comb(n).samples;
    const CVector c = d.adjoint(f);
    // The comb is its own unitary DFT, so D^* f = [f f] / sqrt(2).
    EXPECT_LE((c.head(n) - f / std::sqrt(2.0)).norm(), 1e-10);
    EXPECT_LE((c.tail(n) - f / std::sqrt(2.0)).norm(), 1e-10);
    Index nonzero = 0;
    for (Index i = 0; i < c.size(); ++i) nonzero += std::abs(c[i]) > 1e-9 ? 1 : 0;
    EXPECT_EQ(nonzero, 2 * r);
    EXPECT_LE(l1_norm(c - best_s_term(c, 2 * r)), 1e-8);
  }
}

TEST(Compressible, SortedMagnitudesFollowThePowerLaw) {
  const Dictionary d = build_oversampled_dft(16, 2);
  const double q = 1.3;
  const CompressibleSignal cs = compressible_signal(d, q, 4);
  std::vector<double> mags;
  for (Index i = 0; i < cs.coefficients.size(); ++i) mags.push_back(std::abs(cs.coefficients[i]));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  for (std::size_t k = 0; k < mags.size(); ++k) {
    EXPECT_NEAR(mags[k], std::pow(double(k + 1), -q), 1e-15);
  }
  EXPECT_LE((cs.signal.samples - d.apply(cs.coefficients)).norm(), 1e-14);
  double tail = 0.0;
  for (std::size_t k = 5; k < mags.size(); ++k) tail += std::pow(double(k + 1), -q);
  EXPECT_NEAR(l1_norm(cs.coefficients - best_s_term(cs.coefficients, 5)), tail, 1e-12);
}

TEST(Compressible, SteepDecayIsNearlyASpike) {
  const CompressibleSignal cs = compressible_signal(identity_dictionary(32), 10.0, 1);
  EXPECT_NEAR(cs.coefficients.cwiseAbs().maxCoeff(), 1.0, 1e-15);
  EXPECT_LT(l1_norm(cs.coefficients) - 1.0, 1e-3);
  EXPECT_TRUE(is_real(cs.coefficients));
}

TEST(BestSTerm, SmallExamples) {
  CVector x(3);
  x << 3.0, -1.0, 2.0;
  CVector expected(3);
  expected << 3.0, 0.0, 2.0;
  EXPECT_EQ(best_s_term(x, 2), expected);
  EXPECT_EQ(best_s_term(x, 0), CVector::Zero(3));
  EXPECT_EQ(best_s_term(x, 5), x);
}

TEST(BestSTerm, TiesBreakToLowestIndex) {
  CVector x(4);
  x << 1.0, -1.0, Complex(0.0, 1.0), 0.5;
  const CVector kept = best_s_term(x, 2);
  EXPECT_EQ(kept[0], Complex(1.0));
  EXPECT_EQ(kept[1], Complex(-1.0));
  EXPECT_EQ(kept[2], Complex(0.0));
  EXPECT_EQ(largest_indices(x, 3), (std::vector<Index>{0, 1, 2}));
}

TEST(BestSTerm, MinimizesErrorOverAllSupports) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CVector x = oracle::random_vector(6, seed);
    const double err = (x - best_s_term(x, 2)).norm();
    double brute = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < 6; ++i) {
      for (Index j = i + 1; j < 6; ++j) {
        CVector u = CVector::Zero(6);
        u[i] = x[i];
        u[j] = x[j];
        brute = std::min(brute, (x - u).norm());
      }
    }
    EXPECT_NEAR(err, brute, 1e-15);
  }
}

TEST(BestSTerm, IdempotentAndSupportMonotone) {
  const CVector x = oracle::random_vector(20, 3);
  for (Index s = 0; s < 20; ++s) {
    const CVector a = best_s_term(x, s);
    EXPECT_EQ(best_s_term(a, s), a);
    const CVector b = best_s_term(x, s + 1);
    for (Index i = 0; i < 20; ++i) {
      if (a[i] != Complex(0.0)) {
        EXPECT_NE(b[i], Complex(0.0));
      }
    }
  }
}

TEST(Metrics, AnalyticValues) {
  CVector f(2), g(2);
  f << 1.0, 0.0;
  g << 0.0, 1.0;
  const ErrorMetrics m = metrics(g, f);
  EXPECT_NEAR(m.relative_error, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m.rmse, 1.0, 1e-15);
  EXPECT_NEAR(m.linf, 1.0, 1e-15);
  const ErrorMetrics same = metrics(f, f);
  EXPECT_EQ(same.relative_error, 0.0);
  EXPECT_EQ(same.rmse, 0.0);
  EXPECT_EQ(metrics(CVector::Zero(2), f).relative_error, 1.0);
  EXPECT_THROW(metrics(f, CVector::Zero(2)), InvalidArgument);
  EXPECT_THROW(metrics(f, CVector::Zero(3)), InvalidArgument);
}

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "spiralmap/errors.hpp"
#include "spiralmap/spiral.hpp"

namespace spiralmap::spiral {
namespace {

const double kE2Pi = std::exp(-kTwoPi);

double cartesian_chord_sq(double a, double t) {
  const double r = 1 + std::exp(-a), s = 1 + std::exp(-(a + t));
  const double dx = s * std::cos(a + t) - r * std::cos(a);
  const double dy = s * std::sin(a + t) - r * std::sin(a);
  return dx * dx + dy * dy;
}

TEST(Rho, Examples) {
  EXPECT_EQ(rho(0.0), 2.0);
  EXPECT_NEAR(rho(50.0), 1.0 + std::exp(-50.0), 1e-16);
  EXPECT_EQ(rho(kTwoPi), 1.0 + kE2Pi);
  EXPECT_GT(rho(3.0), rho(3.0 + 1e-9));
  EXPECT_THROW((void)rho(-1e-300), Error);
  EXPECT_THROW((void)rho(std::nan("")), Error);
}

TEST(Eps, Examples) {
  EXPECT_NEAR(eps(0.0), (1 - kE2Pi) / 2, 1e-16);
  EXPECT_NEAR(eps(0.0), 0.4990662, 1e-7);
  EXPECT_GT(eps(10.0), eps(11.0));
  EXPECT_THROW((void)eps(-1.0), Error);
  for (double t = 0.0; t < 60.0; t += 0.37) EXPECT_LT(eps(t), std::exp(-t));
}

TEST(Eps, MatchesDefinitionAndRatio) {
  for (double t = 0.0; t < 30.0; t += 0.011) {
    const double by_definition = ((1 + std::exp(-t)) - (1 + std::exp(-(t + kTwoPi)))) / 2;
    EXPECT_NEAR(eps(t), by_definition, 1e-14) << t;
    EXPECT_NEAR(eps(t) / rho(t), 0.5 * (1 - kE2Pi) / (1 + std::exp(t)), 1e-14) << t;
    EXPECT_NEAR(eps_over_rho(t), eps(t) / rho(t), 1e-15);
  }
}

TEST(Eps, RatioStrictlyDecreasing) {
  double prev = eps_over_rho(0.0);
  for (double t = 0.01; t < 40.0; t += 0.01) {
    const double cur = eps_over_rho(t);
    EXPECT_LT(cur, prev) << t;
    prev = cur;
  }
}

TEST(Curve, Examples) {
  EXPECT_EQ(curve(0.0), (Point{2.0, 0.0}));
  const Point q = curve(kHalfPi);
  EXPECT_NEAR(q[0], 0.0, 1e-15);
  EXPECT_NEAR(q[1], 1 + std::exp(-kHalfPi), 1e-15);
  const Point f = curve(kTwoPi);
  EXPECT_NEAR(f[0], 1 + kE2Pi, 1e-15);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
  EXPECT_THROW((void)curve(-0.5), Error);
}

TEST(Curve, Injective) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    if (a == b) continue;
    EXPECT_GT(distance(curve(a), curve(b)), 0.0);
  }
}

TEST(ChordSq, Examples) {
  EXPECT_EQ(chord_sq(3.0, 0.0), 0.0);
  EXPECT_NEAR(chord_sq(0.0, kHalfPi), 4.0 + std::pow(1 + std::exp(-kHalfPi), 2), 1e-14);
  EXPECT_THROW((void)chord_sq(0.0, -1.0), Error);
}

TEST(ChordSq, AgreesWithCartesianAndLawOfCosines) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ua(0.0, 30.0), ut(0.0, kHalfPi);
  for (int i = 0; i < 2000; ++i) {
    const double a = ua(rng), t = ut(rng);
    const double r = rho(a), s = rho(a + t);
    EXPECT_NEAR(chord_sq(a, t), r * r + s * s - 2 * r * s * std::cos(t), 1e-12);
    EXPECT_NEAR(chord_sq(a, t), cartesian_chord_sq(a, t), 1e-12);
  }
}

TEST(ChordSq, StrictlyIncreasingOnQuarterTurn) {
  for (double a : {0.0, 1.0, 5.0}) {
    double prev = chord_sq(a, 0.0);
    for (int k = 1; k <= 100; ++k) {
      const double cur = chord_sq(a, k * kHalfPi / 100);
      EXPECT_LT(prev, cur) << a << " " << k;
      prev = cur;
    }
  }
}

TEST(NextAlpha, FirstStep) {
  const double b = next_alpha(0.0);
  EXPECT_NEAR(distance(curve(b), Point{2.0, 0.0}), eps(0.0), 1e-10);
}

TEST(NextAlphaProperty, ResidualAndBracketOnRandomAngles) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 30.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng);
    const double b = next_alpha(a);
    EXPECT_NEAR(distance(curve(b), curve(a)), eps(a), 1e-10) << a;
    EXPECT_GT(b, a);
    EXPECT_LE(b - a, 40 * std::numbers::pi / 180 + 1e-12);
    EXPECT_LE(b - a, 0.6982);
    // Same bound read in degrees, and the derived reachable window.
    EXPECT_GE(degrees(b), degrees(a) - kMaxBackwardDegrees);
    const auto w = reachable_window(a);
    EXPECT_LE(w.lo, b);
    EXPECT_LE(b, w.hi);
  }
}

// g has exactly one sign change on the dense grid, and the root sits in the
// grid cell where it happens.
TEST(NextAlphaProperty, UniqueSignChange) {
  for (double a : {0.0, 1.0, 5.0, 20.0}) {
    const double e2 = eps(a) * eps(a);
    int changes = 0;
    double cell_lo = 0, cell_hi = 0;
    double prev = cartesian_chord_sq(a, 0.0) - e2;
    EXPECT_LT(prev, 0.0);
    constexpr int kGrid = 10000;
    for (int k = 1; k <= kGrid; ++k) {
      const double t = k * kHalfPi / kGrid;
      const double cur = chord_sq(a, t) - e2;
      if ((prev < 0) != (cur < 0)) {
        ++changes;
        cell_lo = (k - 1) * kHalfPi / kGrid;
        cell_hi = t;
      }
      prev = cur;
    }
    EXPECT_EQ(changes, 1) << a;
    const double step = next_alpha(a) - a;
    EXPECT_GE(step, cell_lo - 1e-12);
    EXPECT_LE(step, cell_hi + 1e-12);
  }
}

TEST(NextAlpha, SmallAngleAsymptotics) {
  const double a = 20.0;
  const double step = next_alpha(a) - a;
  const double approx = eps(a) / rho(a);
  EXPECT_NEAR(step / approx, 1.0, 5e-4);
}

TEST(NextAlpha, Domain) {
  EXPECT_THROW((void)next_alpha(-1.0), Error);
  EXPECT_THROW((void)next_alpha(1.0, 0.0), Error);
}

TEST(ReachableWindow, ClosedForm) {
  const auto w = reachable_window(2.0);
  EXPECT_NEAR(w.lo, 2.0 + std::log(2.0) - std::log(3 - kE2Pi), 1e-14);
  EXPECT_NEAR(w.hi, 2.0 + std::log(2.0) - std::log(1 + kE2Pi), 1e-14);
  EXPECT_LE(w.hi - 2.0, kMaxForwardRadians);
  EXPECT_GE(degrees(w.lo - 2.0), -kMaxBackwardDegrees);
}

}  // namespace
}  // namespace spiralmap::spiral

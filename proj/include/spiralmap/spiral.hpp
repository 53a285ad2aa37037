#pragma once

#include <numbers>

#include "spiralmap/point.hpp"

// The planar spiral x(a) = rho(a) (cos a, sin a), rho(a) = 1 + exp(-a), which
// winds counter-clockwise onto the unit circle, and the step size
// eps(a) = (rho(a) - rho(a + 2 pi)) / 2 used to walk along it.
namespace spiralmap::spiral {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kDefaultAngleTol = 1e-13;

// Any point within eps(a) of x(a) sits at an angle in [a - 24deg, a + 40deg].
inline constexpr double kMaxBackwardDegrees = 24.0;
inline constexpr double kMaxForwardDegrees = 40.0;
inline constexpr double kMaxForwardRadians = kMaxForwardDegrees * std::numbers::pi / 180.0;

constexpr double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }
constexpr double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

/// (1 - e^{-2 pi}) / 2, so that eps(t) = kEpsScale * e^{-t}.
double eps_scale();

double rho(double t);
double eps(double t);

/// eps(t) / rho(t) = (1 - e^{-2 pi}) / (2 (1 + e^t)), strictly decreasing.
double eps_over_rho(double t);

Point curve(double alpha);

/// |x(alpha + t) - x(alpha)|^2.
///
/// Law of cosines, r^2 + s^2 - 2 r s cos t, rewritten as
/// (r - s)^2 + 4 r s sin^2(t / 2) with r - s = e^{-alpha} (1 - e^{-t}), which
/// is free of cancellation when the chord is short.
double chord_sq(double alpha, double t);

struct StepBracket {
  double lo;
  double hi;
};

/// Interval of angles beta that can satisfy |x(beta) - x(alpha)| <= eps(alpha),
/// obtained from r - d <= s <= r + d:
///   alpha + ln 2 - ln(3 - e^{-2 pi}) <= beta <= alpha + ln 2 - ln(1 + e^{-2 pi}).
/// The lower end may be negative.
StepBracket reachable_window(double alpha);

/// The unique beta > alpha with |x(beta) - x(alpha)| = eps(alpha).
///
/// Bisection on g(t) = chord_sq(alpha, t) - eps(alpha)^2 over t in [0, pi/2],
/// where g is strictly increasing, g(0) < 0. Stops when the bracket is no
/// wider than `tol` or cannot shrink further. Throws BracketInvalid if the
/// end signs are wrong.
double next_alpha(double alpha, double tol = kDefaultAngleTol);

}  // namespace spiralmap::spiral

#include "spiralmap/spiral.hpp"

#include <cmath>
#include <string>

#include "spiralmap/errors.hpp"

namespace spiralmap::spiral {
namespace {

void require_domain(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": argument must be finite and nonnegative, got " +
                    std::to_string(t));
  }
}

}  // namespace

double eps_scale() {
  static const double scale = -std::expm1(-kTwoPi) / 2.0;
  return scale;
}

double rho(double t) {
  require_domain(t, "rho");
  return 1.0 + std::exp(-t);
}

double eps(double t) {
  require_domain(t, "eps");
  return eps_scale() * std::exp(-t);
}

double eps_over_rho(double t) {
  require_domain(t, "eps_over_rho");
  return eps_scale() / (1.0 + std::exp(t));
}

Point curve(double alpha) {
  const double r = rho(alpha);
  return Point{r * std::cos(alpha), r * std::sin(alpha)};
}

double chord_sq(double alpha, double t) {
  require_domain(alpha, "chord_sq");
  require_domain(t, "chord_sq");
  const double r = rho(alpha);
  const double s = rho(alpha + t);
  const double radial = -std::exp(-alpha) * std::expm1(-t);
  const double half = std::sin(t / 2.0);
  return radial * radial + 4.0 * r * s * half * half;
}

StepBracket reachable_window(double alpha) {
  require_domain(alpha, "reachable_window");
  const double tail = std::exp(-kTwoPi);
  return {alpha + std::log(2.0) - std::log(3.0 - tail), alpha + std::log(2.0) - std::log1p(tail)};
}

double next_alpha(double alpha, double tol) {
  require_domain(alpha, "next_alpha");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "next_alpha: tol must be positive");

  const double target = eps(alpha) * eps(alpha);
  const auto g = [&](double t) { return chord_sq(alpha, t) - target; };

  double lo = 0.0;
  double hi = kHalfPi;
  if (!(g(lo) < 0.0) || !(g(hi) > 0.0)) {
    throw Error(ErrorCode::BracketInvalid,
                "next_alpha: chord equation has no sign change on [0, pi/2] at alpha=" +
                    std::to_string(alpha));
  }
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    const double v = g(mid);
    if (v == 0.0) {
      lo = hi = mid;
      break;
    }
    (v < 0.0 ? lo : hi) = mid;
  }
  return alpha + (lo + (hi - lo) / 2.0);
}

}  // namespace spiralmap::spiral

#include "spiralmap/sequence.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "spiralmap/circular.hpp"
#include "spiralmap/cloud_kernels.hpp"
#include "spiralmap/errors.hpp"
#include "spiralmap/projector.hpp"

namespace spiralmap {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double max_circular_gap(std::span<const double> angles) {
  if (angles.empty()) return spiral::kTwoPi;
  std::vector<double> reduced;
  reduced.reserve(angles.size());
  for (double a : angles) {
    double r = std::fmod(a, spiral::kTwoPi);
    if (r < 0.0) r += spiral::kTwoPi;
    reduced.push_back(r);
  }
  std::sort(reduced.begin(), reduced.end());
  double gap = reduced.front() + spiral::kTwoPi - reduced.back();
  for (std::size_t i = 1; i < reduced.size(); ++i) gap = std::max(gap, reduced[i] - reduced[i - 1]);
  return gap;
}

}  // namespace spiralmap

namespace spiralmap::sequence {
namespace {

constexpr double kStepTol = 1e-10;
constexpr double kHalfAngleTol = 1e-10;
constexpr double kScaledHalfAngleTol = 1e-12;
constexpr double kSphereGapTol = 1e-12;
constexpr double kClosedFormTol = 1e-14;

double sphere_gap(const Point& x) { return std::abs(norm(x) - 1.0); }

void require_records(const SequenceReport& report, std::size_t at_least, const char* what) {
  if (report.records.size() < at_least) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": needs at least " + std::to_string(at_least) + " records");
  }
}

}  // namespace

SequenceReport generate(std::size_t n_max, double tol, double max_alpha) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "generate: n_max must be at least 1");

  SequenceReport report;
  auto& records = report.records;
  records.reserve(n_max);

  double alpha = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    SpiralRecord rec;
    rec.n = n;
    rec.alpha = alpha;
    rec.rho = spiral::rho(alpha);
    rec.eps = spiral::eps(alpha);
    rec.x = spiral::curve(alpha);
    records.push_back(std::move(rec));

    if (n + 1 == n_max) break;
    if (alpha > max_alpha) {
      report.stopped_early = true;
      break;
    }
    const double next = spiral::next_alpha(alpha, tol);
    records.back().delta = next - alpha;
    records.back().q = spiral::rho(next) / records.back().rho;
    alpha = next;
  }

  std::vector<double> deltas;
  std::vector<double> steps;
  deltas.reserve(records.size());
  steps.reserve(records.size());
  for (const auto& r : records) {
    if (!r.delta) continue;
    deltas.push_back(*r.delta);
    steps.push_back(r.eps);
  }
  report.partial_delta_sum = compensated_sum(deltas);
  report.partial_eps_sum = compensated_sum(steps);
  report.max_identity_residual = max_step_residual(report);
  return report;
}

double max_step_residual(const SequenceReport& report) {
  const auto& rec = report.records;
  const auto count = static_cast<std::int64_t>(rec.size()) - 1;
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(i);
    worst = std::max(worst, std::abs(distance(rec[n].x, rec[n + 1].x) - rec[n].eps));
  }
  return worst;
}

HalfAngleResiduals check_halfangle_identity(const SequenceReport& report) {
  const auto& rec = report.records;
  const auto count = static_cast<std::int64_t>(rec.size()) - 1;
  double raw = 0.0;
  double scaled = 0.0;
#pragma omp parallel for schedule(static) reduction(max : raw, scaled)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(i);
    const SpiralRecord& a = rec[n];
    const SpiralRecord& b = rec[n + 1];
    const double delta = a.delta.value_or(b.alpha - a.alpha);
    const double s = std::sin(delta / 2.0);

    const double radial = a.rho - b.rho;
    const double rhs = radial * radial + 4.0 * a.rho * b.rho * s * s;
    raw = std::max(raw, std::abs(a.eps * a.eps - rhs));

    const double q = a.q.value_or(b.rho / a.rho);
    const double ratio = spiral::eps_over_rho(a.alpha);
    const double scaled_rhs = (1.0 - q) * (1.0 - q) + 4.0 * q * s * s;
    scaled = std::max(scaled, std::abs(ratio * ratio - scaled_rhs));
  }
  return {raw, scaled};
}

LimitSummary check_limits(const SequenceReport& report) {
  require_records(report, 100, "check_limits");
  const auto& rec = report.records;
  const std::size_t n = rec.size();

  LimitSummary s;
  s.delta_tail = rec[n - 2].delta.value_or(rec[n - 1].alpha - rec[n - 2].alpha);
  s.eps_tail = rec.back().eps;
  s.rho_tail = rec.back().rho;
  s.sphere_gap_tail = sphere_gap(rec.back().x);

  s.delta_positive = true;
  s.eps_strictly_decreasing = true;
  s.rho_strictly_decreasing = true;
  s.sphere_gap_decreasing = true;
  std::vector<double> alphas;
  alphas.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    alphas.push_back(rec[k].alpha);
    s.max_sphere_gap_residual =
        std::max(s.max_sphere_gap_residual, std::abs(sphere_gap(rec[k].x) - std::exp(-rec[k].alpha)));
    if (k + 1 == n) break;
    const double delta = rec[k].delta.value_or(rec[k + 1].alpha - rec[k].alpha);
    s.delta_positive = s.delta_positive && delta > 0.0;
    s.eps_strictly_decreasing = s.eps_strictly_decreasing && rec[k + 1].eps < rec[k].eps;
    s.rho_strictly_decreasing = s.rho_strictly_decreasing && rec[k + 1].rho < rec[k].rho;
    s.sphere_gap_decreasing =
        s.sphere_gap_decreasing && sphere_gap(rec[k + 1].x) < sphere_gap(rec[k].x);
  }

  // The bound sin(t/2) >= t/4 is only claimed near t = 0; find where it
  // starts holding for good.
  s.taylor_start = 0;
  for (std::size_t k = n - 1; k-- > 0;) {
    const double delta = rec[k + 1].alpha - rec[k].alpha;
    if (std::sin(delta / 2.0) < delta / 4.0) {
      s.taylor_start = k + 1;
      break;
    }
  }
  s.eps_exceeds_half_delta = true;
  std::vector<double> tail_eps;
  for (std::size_t k = s.taylor_start; k + 1 < n; ++k) {
    const double delta = rec[k + 1].alpha - rec[k].alpha;
    s.eps_exceeds_half_delta = s.eps_exceeds_half_delta && rec[k].eps > delta / 2.0;
    tail_eps.push_back(rec[k].eps);
  }
  s.eps_sum_lower_bound =
      compensated_sum(tail_eps) >= (rec.back().alpha - rec[s.taylor_start].alpha) / 2.0;
  s.max_circular_gap = max_circular_gap(alphas);
  return s;
}

namespace {

void require_horizon(const SequenceReport& report, std::size_t horizon) {
  if (horizon < 1 || horizon + 1 > report.records.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "verify_nearest: horizon must lie in [1, record count - 1]");
  }
}

[[noreturn]] void nearest_violation(std::size_t n, const std::string& why) {
  throw Error(ErrorCode::NearestPropertyViolated,
              "nearest point of x_" + std::to_string(n) + " is not x_" + std::to_string(n + 1) +
                  ": " + why,
              n);
}

}  // namespace

double verify_nearest(const SequenceReport& report, std::size_t horizon) {
  require_horizon(report, horizon);
  const auto& rec = report.records;
  std::vector<Point> prefix;
  prefix.reserve(horizon + 1);
  for (std::size_t k = 0; k <= horizon; ++k) prefix.push_back(rec[k].x);
  const euclid::PointCloud cloud(prefix);

  const auto count = static_cast<std::int64_t>(horizon) - 1;
  double min_margin = euclid::kInfinity;
  std::int64_t first_bad = INT64_MAX;
#pragma omp parallel for schedule(dynamic, 32) reduction(min : min_margin, first_bad)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(i);
    const euclid::CloudNearest nearest = euclid::nearest_in_cloud_serial(cloud, rec[n].x.coords(), n);
    const double to_sphere = sphere_gap(rec[n].x);
    if (nearest.index != n + 1 || !(nearest.margin > 0.0) || !(to_sphere > nearest.distance) ||
        !(to_sphere > rec[n].eps)) {
      first_bad = std::min(first_bad, i);
      continue;
    }
    min_margin = std::min({min_margin, nearest.margin, to_sphere - nearest.distance});
  }
  if (first_bad != INT64_MAX) {
    nearest_violation(static_cast<std::size_t>(first_bad), "brute-force scan disagrees");
  }
  return min_margin;
}

double verify_nearest_serial(const SequenceReport& report, std::size_t horizon) {
  require_horizon(report, horizon);
  const auto& rec = report.records;
  double min_margin = euclid::kInfinity;
  for (std::size_t n = 0; n + 1 < horizon; ++n) {
    std::size_t best = n == 0 ? 1 : 0;
    double best_d = distance(rec[n].x, rec[best].x);
    double second_d = euclid::kInfinity;
    for (std::size_t k = 0; k <= horizon; ++k) {
      if (k == n || k == best) continue;
      const double d = distance(rec[n].x, rec[k].x);
      if (d < best_d || (d == best_d && k < best)) {
        second_d = best_d;
        best_d = d;
        best = k;
      } else {
        second_d = std::min(second_d, d);
      }
    }
    const double to_sphere = sphere_gap(rec[n].x);
    if (best != n + 1) nearest_violation(n, "closer point x_" + std::to_string(best));
    if (!(second_d > best_d)) nearest_violation(n, "tie with another point");
    if (!(to_sphere > best_d) || !(to_sphere > rec[n].eps)) nearest_violation(n, "unit circle is closer");
    min_margin = std::min({min_margin, second_d - best_d, to_sphere - best_d});
  }
  return min_margin;
}

bool has_closer_earlier_point(const SequenceReport& report, std::size_t n) {
  const auto& rec = report.records;
  if (n + 1 >= rec.size()) throw Error(ErrorCode::InvalidArgument, "has_closer_earlier_point: n out of range");
  const double step = distance(rec[n].x, rec[n + 1].x);
  for (std::size_t k = 0; k < n; ++k) {
    if (distance(rec[k].x, rec[n].x) < step) return true;
  }
  return false;
}

std::vector<CheckResult> run_checks(const SequenceReport& report, std::size_t nearest_horizon) {
  const auto& rec = report.records;
  std::vector<CheckResult> out;
  const auto add = [&](std::string name, std::string statement, bool passed, double value,
                       std::string detail = {}) {
    out.push_back({std::move(name), std::move(statement), passed, value, std::move(detail)});
  };

  {
    double worst = 0.0;
    bool exact_points = true;
    for (const auto& r : rec) {
      worst = std::max({worst, std::abs(r.rho - (1.0 + std::exp(-r.alpha))),
                        std::abs(r.eps - spiral::eps_scale() * std::exp(-r.alpha))});
      exact_points = exact_points && r.x == spiral::curve(r.alpha);
    }
    add("record-consistency", "rho_n = 1 + e^{-alpha_n}, eps_n = c e^{-alpha_n}, x_n = x(alpha_n)",
        worst <= kClosedFormTol && exact_points, worst,
        exact_points ? "" : "stored point differs from the curve at its angle");
  }

  const double step = max_step_residual(report);
  add("step-length", "|x_n - x_{n+1}| = eps_n", step <= kStepTol, step);

  {
    std::vector<double> deltas;
    for (std::size_t k = 0; k + 1 < rec.size(); ++k) deltas.push_back(rec[k + 1].alpha - rec[k].alpha);
    const double residual =
        std::abs(compensated_sum(deltas) - (rec.back().alpha - rec.front().alpha));
    add("telescoping", "sum_{k<n} delta_k = alpha_n - alpha_0", residual <= kStepTol, residual);
  }

  const HalfAngleResiduals half = check_halfangle_identity(report);
  add("half-angle", "eps_n^2 = (rho_n - rho_{n+1})^2 + 4 rho_n rho_{n+1} sin^2(delta_n/2)",
      half.raw <= kHalfAngleTol, half.raw);
  add("half-angle-scaled", "(eps_n / rho_n)^2 = (1 - q_n)^2 + 4 q_n sin^2(delta_n/2)",
      half.scaled <= kScaledHalfAngleTol, half.scaled);

  {
    bool ok = true;
    double widest = 0.0;
    for (std::size_t k = 0; k + 1 < rec.size(); ++k) {
      const double delta = rec[k + 1].alpha - rec[k].alpha;
      widest = std::max(widest, delta);
      ok = ok && delta > 0.0 && delta <= spiral::kMaxForwardRadians;
    }
    add("step-bracket", "0 < delta_n <= 40 degrees", ok, widest);
  }

  {
    bool ok = true;
    for (std::size_t k = 0; k + 1 < rec.size(); ++k) ok = ok && rec[k + 1].eps < rec[k].eps;
    add("eps-decreasing", "eps_{n+1} < eps_n", ok, rec.back().eps);
  }

  {
    bool ok = true;
    double min_gap = euclid::kInfinity;
    double worst = 0.0;
    const auto unit_circle = euclid::ProjectorSpec::sphere(Point{0.0, 0.0}, 1.0);
    for (const auto& r : rec) {
      const double d = euclid::distance(unit_circle, r.x);
      worst = std::max(worst, std::abs(d - std::exp(-r.alpha)));
      min_gap = std::min(min_gap, d - r.eps);
      ok = ok && d > r.eps;
    }
    ok = ok && worst <= kSphereGapTol;
    add("sphere-distance", "d_S(x_n) = e^{-alpha_n} > eps_n", ok, min_gap);
  }

  if (rec.size() >= 2) {
    const std::size_t horizon = std::min(nearest_horizon, rec.size() - 1);
    try {
      const double margin = verify_nearest(report, horizon);
      add("nearest-point", "P_{(S u Y) \\ {x_n}} x_n = {x_{n+1}}", margin > 0.0, margin,
          "horizon " + std::to_string(horizon));
    } catch (const Error& e) {
      add("nearest-point", "P_{(S u Y) \\ {x_n}} x_n = {x_{n+1}}", false, 0.0, e.what());
    }
  }

  if (rec.size() >= 100) {
    const LimitSummary lim = check_limits(report);
    const bool ok = lim.delta_positive && lim.eps_strictly_decreasing && lim.rho_strictly_decreasing &&
                    lim.sphere_gap_decreasing && lim.eps_exceeds_half_delta && lim.eps_sum_lower_bound &&
                    lim.max_sphere_gap_residual <= kSphereGapTol;
    add("limits", "delta_n > 0, eps_n and rho_n and d_S(x_n) strictly decrease, sum eps >= (alpha_N - alpha_k0)/2",
        ok, lim.eps_tail,
        "delta_tail=" + std::to_string(lim.delta_tail) + " circular_gap=" + std::to_string(lim.max_circular_gap));
  } else {
    add("limits", "skipped: fewer than 100 records", true, 0.0);
  }
  return out;
}

}  // namespace spiralmap::sequence

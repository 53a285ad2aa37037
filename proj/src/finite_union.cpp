#include "spiralmap/finite_union.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "spiralmap/errors.hpp"
#include "spiralmap/map_driver.hpp"
#include "spiralmap/spec_json.hpp"

namespace spiralmap::finite_union {
namespace {

// Bit-level uniform in [lo, hi); std distributions are implementation
// defined and would break replay across standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<double> uniform_vector(std::mt19937_64& rng, std::size_t dim, double lo, double hi) {
  std::vector<double> v(dim);
  for (auto& c : v) c = uniform(rng, lo, hi);
  return v;
}

Point unit_vector(std::mt19937_64& rng, std::size_t dim) {
  for (;;) {
    std::vector<double> v = uniform_vector(rng, dim, -1.0, 1.0);
    double n = 0.0;
    for (double c : v) n += c * c;
    n = std::sqrt(n);
    if (n < 0.1 || n > 1.0) continue;
    for (auto& c : v) c /= n;
    return Point(std::move(v));
  }
}

euclid::ProjectorSpec random_member(std::mt19937_64& rng, const Point& c) {
  const std::size_t dim = c.dim();
  switch (rng() % 3) {
    case 0: {
      std::vector<double> lo(dim), hi(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        lo[i] = c[i] - uniform(rng, 0.05, 2.0);
        hi[i] = c[i] + uniform(rng, 0.05, 2.0);
      }
      return euclid::ProjectorSpec::box(Point(std::move(lo)), Point(std::move(hi)));
    }
    case 1: {
      const Point offset = uniform(rng, 0.0, 2.0) * unit_vector(rng, dim);
      const double radius = norm(offset) + uniform(rng, 0.05, 1.0);
      return euclid::ProjectorSpec::ball(c + offset, radius);
    }
    default: {
      Point normal = unit_vector(rng, dim);
      const double offset = dot(normal, c) + uniform(rng, 0.05, 1.0);
      return euclid::ProjectorSpec::halfspace(std::move(normal), offset);
    }
  }
}

euclid::ProjectorSpec as_union(const std::vector<euclid::ProjectorSpec>& members) {
  return euclid::ProjectorSpec::union_of(members);
}

double min_member_distance(const std::vector<euclid::ProjectorSpec>& members, const Point& p) {
  double best = euclid::kInfinity;
  for (const auto& m : members) best = std::min(best, euclid::distance(m, p));
  return best;
}

// Smallest distance from p to a member it lies outside of (by more than tol).
double distance_to_far_members(const std::vector<euclid::ProjectorSpec>& members, const Point& p, double tol) {
  double best = euclid::kInfinity;
  for (const auto& m : members) {
    const double d = euclid::distance(m, p);
    if (d > tol) best = std::min(best, d);
  }
  return best;
}

}  // namespace

UnionScenario make_scenario(std::vector<euclid::ProjectorSpec> a_members,
                            std::vector<euclid::ProjectorSpec> b_members, Point start, std::size_t max_iter,
                            std::uint64_t seed) {
  if (a_members.empty() || b_members.empty()) {
    throw Error(ErrorCode::InvalidArgument, "union scenario needs at least one member per side");
  }
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "union scenario max_iter must be positive");
  for (const auto* side : {&a_members, &b_members}) {
    for (const auto& m : *side) {
      if (!m.is_convex()) {
        throw Error(ErrorCode::InvalidArgument,
                    "union scenario members must be convex, got " + std::string(m.type_name()));
      }
      require_same_dim(start.dim(), m.dim(), "union scenario member");
    }
  }
  UnionScenario s;
  s.a_members = std::move(a_members);
  s.b_members = std::move(b_members);
  s.start = std::move(start);
  s.seed = seed;
  s.max_iter = max_iter;
  return s;
}

UnionScenario generate_scenario(std::uint64_t seed, std::size_t dim, std::size_t members_per_side) {
  if (dim < 1 || members_per_side < 1) {
    throw Error(ErrorCode::InvalidArgument, "generate_scenario: dim and members_per_side must be positive");
  }
  std::mt19937_64 rng(seed);
  const Point planted(uniform_vector(rng, dim, -1.0, 1.0));
  std::vector<euclid::ProjectorSpec> a, b;
  for (std::size_t i = 0; i < members_per_side; ++i) a.push_back(random_member(rng, planted));
  for (std::size_t i = 0; i < members_per_side; ++i) b.push_back(random_member(rng, planted));
  Point start = planted + uniform(rng, 0.0, 10.0) * unit_vector(rng, dim);
  UnionScenario s = make_scenario(std::move(a), std::move(b), std::move(start), kDefaultMaxIter, seed);
  s.planted = planted;
  return s;
}

ConvergenceVerdict check_theorem(const UnionScenario& scenario, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "check_theorem: tol must be positive");

  map::MapConfig config{as_union(scenario.a_members), as_union(scenario.b_members), scenario.start};
  config.max_iter = scenario.max_iter;
  config.stop_step = tol / 100.0;
  const map::MapTrace trace = map::run(config);

  ConvergenceVerdict v;
  v.seed = scenario.seed;
  v.iterations = trace.verdict.iterations_used;
  v.final_gap_ab = trace.step_ab.back();
  v.final_gap_ba = trace.step_ba.empty() ? trace.step_ab.back() : trace.step_ba.back();

  const double bound = 10.0 * std::max(1.0, norm(scenario.start));
  double largest = 0.0;
  for (std::size_t n = 0; n < trace.a.size(); ++n) {
    largest = std::max({largest, norm(trace.a[n]), norm(trace.b[n])});
  }
  v.bounded = std::isfinite(largest) && largest <= bound;
  v.gaps_vanished = v.final_gap_ab < tol && v.final_gap_ba < tol;
  if (!(v.bounded && v.gaps_vanished)) {
    v.outcome = Outcome::HypothesesNotMet;
    return v;
  }

  const Point limit = trace.a.back();
  v.limit = limit;

  // Tail window: the stop point plus a continuation past it, which must all
  // stay within tol of the limit. Steps never grow under MAP, so a genuine
  // limit moves by less than 2 kCauchyWindow stop_step = tol here.
  std::vector<Point> window{trace.a.back(), trace.b.back()};
  map::MapConfig more = config;
  more.start = trace.b.back();
  more.max_iter = kCauchyWindow;
  more.stop_step = 0.0;
  const map::MapTrace continuation = map::run(more);
  for (std::size_t n = 0; n < continuation.a.size(); ++n) {
    window.push_back(continuation.a[n]);
    window.push_back(continuation.b[n]);
  }
  for (std::size_t i = 0; i < window.size(); ++i) {
    v.tail_spread = std::max(v.tail_spread, distance(window[i], limit));
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      v.cluster_separation = std::max(v.cluster_separation, distance(window[i], window[j]));
    }
  }
  v.converged = v.tail_spread <= tol;
  v.limit_in_intersection = min_member_distance(scenario.a_members, limit) <= tol &&
                            min_member_distance(scenario.b_members, limit) <= tol;

  // Once a_m is closer to the limit than half the distance to every member
  // missing the limit, only members through the limit are active, and the
  // chain |a_m - c| >= |b_m - c| >= |a_{m+1} - c| >= ... follows.
  const double delta = std::min({distance_to_far_members(scenario.a_members, limit, tol),
                                 distance_to_far_members(scenario.b_members, limit, tol), 1.0});
  v.fejer_tail = true;
  bool engaged = false;
  for (std::size_t n = 0; n < trace.a.size(); ++n) {
    const double da = distance(trace.a[n], limit);
    engaged = engaged || da < delta / 2.0;
    if (!engaged) continue;
    const double db = distance(trace.b[n], limit);
    v.fejer_tail = v.fejer_tail && db <= da + kFejerSlack;
    if (n + 1 < trace.a.size()) {
      v.fejer_tail = v.fejer_tail && distance(trace.a[n + 1], limit) <= db + kFejerSlack;
    }
  }

  const bool ok = v.converged && v.limit_in_intersection && v.fejer_tail && v.cluster_separation <= 10.0 * tol;
  v.outcome = ok ? Outcome::Pass : Outcome::Fail;
  return v;
}

std::vector<ConvergenceVerdict> run_batch(std::span<const ScenarioRequest> requests, double tol) {
  std::vector<ConvergenceVerdict> out(requests.size());
  std::vector<std::string> errors(requests.size());
  const auto count = static_cast<std::int64_t>(requests.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& r = requests[static_cast<std::size_t>(i)];
    try {
      out[static_cast<std::size_t>(i)] = check_theorem(generate_scenario(r.seed, r.dim, r.members_per_side), tol);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw Error(ErrorCode::InvalidArgument, "scenario seed " + std::to_string(requests[i].seed) + ": " + errors[i]);
    }
  }
  return out;
}

std::vector<ConvergenceVerdict> run_batch_serial(std::span<const ScenarioRequest> requests, double tol) {
  std::vector<ConvergenceVerdict> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(check_theorem(generate_scenario(r.seed, r.dim, r.members_per_side), tol));
  return out;
}

BatchSummary summarize(std::span<const ConvergenceVerdict> verdicts) {
  BatchSummary s;
  for (const auto& v : verdicts) {
    switch (v.outcome) {
      case Outcome::Pass: ++s.pass; break;
      case Outcome::HypothesesNotMet: ++s.hypotheses_not_met; break;
      case Outcome::Fail: ++s.fail; break;
    }
  }
  return s;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::HypothesesNotMet: return "hypotheses_not_met";
    case Outcome::Fail: return "fail";
  }
  return "unknown";
}

nlohmann::json to_json(const ConvergenceVerdict& v, const ScenarioRequest& r) {
  nlohmann::json j;
  j["seed"] = v.seed;
  j["dim"] = r.dim;
  j["members_per_side"] = r.members_per_side;
  j["outcome"] = to_string(v.outcome);
  j["bounded"] = v.bounded;
  j["gaps_vanished"] = v.gaps_vanished;
  j["converged"] = v.converged;
  j["limit"] = v.limit ? euclid::to_json(*v.limit) : nlohmann::json(nullptr);
  j["limit_in_intersection"] = v.limit_in_intersection;
  j["fejer_tail"] = v.fejer_tail;
  j["tail_spread"] = v.tail_spread;
  j["cluster_separation"] = v.cluster_separation;
  j["final_gap_ab"] = v.final_gap_ab;
  j["final_gap_ba"] = v.final_gap_ba;
  j["iterations"] = v.iterations;
  return j;
}

nlohmann::json to_json(const UnionScenario& s) {
  nlohmann::json a = nlohmann::json::array();
  nlohmann::json b = nlohmann::json::array();
  for (const auto& m : s.a_members) a.push_back(euclid::to_json(m));
  for (const auto& m : s.b_members) b.push_back(euclid::to_json(m));
  nlohmann::json j;
  j["seed"] = s.seed;
  j["a_members"] = std::move(a);
  j["b_members"] = std::move(b);
  j["start"] = euclid::to_json(s.start);
  j["max_iter"] = s.max_iter;
  j["planted"] = s.planted ? euclid::to_json(*s.planted) : nlohmann::json(nullptr);
  return j;
}

}  // namespace spiralmap::finite_union

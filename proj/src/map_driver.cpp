#include "spiralmap/map_driver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spiralmap/circular.hpp"
#include "spiralmap/errors.hpp"
#include "spiralmap/spec_json.hpp"

namespace spiralmap::map {
namespace {

double polar_angle(const Point& p) { return p.dim() >= 2 ? std::atan2(p[1], p[0]) : (p[0] < 0 ? std::numbers::pi : 0.0); }

double max_pairwise_distance(std::span<const Point> pts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) worst = std::max(worst, distance(pts[i], pts[j]));
  }
  return worst;
}

Point choose(const euclid::ProjectionResult& r, const MapConfig& config, std::size_t iteration, char set,
             MapTrace& trace) {
  if (r.multivalued) {
    if (config.tie_policy == TiePolicy::Error) {
      throw Error(ErrorCode::TieEncountered,
                  std::string("projection onto ") + set + " at iteration " + std::to_string(iteration) +
                      " has " + std::to_string(r.candidates.size()) + " nearest points",
                  iteration);
    }
    trace.multivalued_events.push_back({iteration, set, r.candidates.size()});
  }
  return r.candidates.front();
}

euclid::ProjectionResult project_at(const euclid::ProjectorSpec& spec, const Point& q, double tie_tol,
                                    std::size_t iteration, char set) {
  try {
    return euclid::project(spec, q, tie_tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateProjection) throw;
    throw Error(ErrorCode::DegenerateProjection,
                std::string("projection onto ") + set + " at iteration " + std::to_string(iteration) +
                    ": " + e.what(),
                iteration);
  }
}

void assign_budget_verdict(const MapConfig& config, MapTrace& trace) {
  Verdict& v = trace.verdict;
  v.kind = Verdict::Kind::BudgetExhausted;
  if (config.stop_step <= 0.0) return;

  const auto& h = config.continuum;
  const double step_bound = config.stop_step * h.step_factor;
  const bool steps_small = trace.step_ab.back() < step_bound &&
                           (trace.step_ba.empty() || trace.step_ba.back() < step_bound);
  const std::size_t tail = std::min(h.tail, trace.a.size());
  if (!steps_small || tail < 2) return;

  const std::span<const Point> tail_pts(trace.a.data() + trace.a.size() - tail, tail);
  if (max_pairwise_distance(tail_pts) <= config.stop_step * h.spread_factor) return;

  const ClusterDiagnostics diag = cluster_diagnostics(trace, tail);
  v.kind = Verdict::Kind::ContinuumSuspected;
  v.ring_radius_estimate = diag.radius_mean;
  v.angular_spread = 2.0 * std::numbers::pi - diag.angular_gap_max;
}

}  // namespace

MapTrace run(const MapConfig& config) {
  const std::size_t dim = config.set_a.dim();
  require_same_dim(dim, config.set_b.dim(), "MAP set B");
  require_same_dim(dim, config.start.dim(), "MAP start point");
  if (config.max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  if (!(config.stop_step >= 0.0)) throw Error(ErrorCode::InvalidArgument, "stop_step must be nonnegative");

  MapTrace trace;
  trace.start = config.start;
  trace.a.reserve(std::min<std::size_t>(config.max_iter, 1 << 20));
  trace.b.reserve(trace.a.capacity());

  Point previous = trace.start;
  for (std::size_t n = 0; n < config.max_iter; ++n) {
    const auto pa = project_at(config.set_a, previous, config.tie_tol, n, 'A');
    trace.a.push_back(choose(pa, config, n, 'A', trace));
    const Point& an = trace.a.back();
    if (n == 0) {
      trace.initial_step = distance(an, trace.start);
    } else {
      trace.step_ba.push_back(distance(an, trace.b.back()));
    }

    const auto pb = project_at(config.set_b, an, config.tie_tol, n, 'B');
    trace.b.push_back(choose(pb, config, n, 'B', trace));
    trace.step_ab.push_back(distance(trace.b.back(), an));
    trace.verdict.iterations_used = n + 1;

    if (config.stop_step > 0.0 && trace.step_ab.back() < config.stop_step &&
        (n == 0 || trace.step_ba.back() < config.stop_step)) {
      trace.verdict.kind = Verdict::Kind::ConvergedToPoint;
      trace.verdict.limit = an;
      return trace;
    }
    previous = trace.b.back();
  }
  assign_budget_verdict(config, trace);
  return trace;
}

ClusterDiagnostics cluster_diagnostics(const MapTrace& trace, std::size_t tail) {
  if (tail < 2) throw Error(ErrorCode::InvalidArgument, "cluster_diagnostics: tail must be at least 2");
  if (tail > trace.a.size()) throw Error(ErrorCode::InvalidArgument, "cluster_diagnostics: tail exceeds trace length");

  const std::size_t first = trace.a.size() - tail;
  std::vector<double> radii;
  std::vector<double> angles;
  radii.reserve(tail);
  angles.reserve(tail);
  for (std::size_t i = first; i < trace.a.size(); ++i) {
    radii.push_back(norm(trace.a[i]));
    angles.push_back(polar_angle(trace.a[i]));
  }
  ClusterDiagnostics d;
  d.radius_mean = compensated_sum(radii) / static_cast<double>(tail);
  double var = 0.0;
  for (double r : radii) var += (r - d.radius_mean) * (r - d.radius_mean);
  d.radius_dev = std::sqrt(var / static_cast<double>(tail));
  d.angular_gap_max = max_circular_gap(angles);
  return d;
}

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::ConvergedToPoint: return "converged_to_point";
    case Verdict::Kind::ContinuumSuspected: return "continuum_suspected";
    case Verdict::Kind::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

nlohmann::json to_json(const MapTrace& trace) {
  nlohmann::json a = nlohmann::json::array();
  nlohmann::json b = nlohmann::json::array();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& p : trace.a) a.push_back(euclid::to_json(p));
  for (const auto& p : trace.b) b.push_back(euclid::to_json(p));
  // Path order: |a_0 - b_{-1}|, |b_0 - a_0|, |a_1 - b_0|, |b_1 - a_1|, ...
  steps.push_back(trace.initial_step);
  for (std::size_t n = 0; n < trace.step_ab.size(); ++n) {
    steps.push_back(trace.step_ab[n]);
    if (n < trace.step_ba.size()) steps.push_back(trace.step_ba[n]);
  }
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : trace.multivalued_events) {
    events.push_back({{"iteration", e.iteration}, {"set", std::string(1, e.set)}, {"candidates", e.candidates}});
  }
  const Verdict& v = trace.verdict;
  nlohmann::json verdict;
  verdict["kind"] = to_string(v.kind);
  verdict["iterations_used"] = v.iterations_used;
  verdict["limit"] = v.limit ? euclid::to_json(*v.limit) : nlohmann::json(nullptr);
  verdict["ring_radius_estimate"] = v.ring_radius_estimate;
  verdict["angular_spread"] = v.angular_spread;
  verdict["heuristic"] = v.kind == Verdict::Kind::ContinuumSuspected;

  nlohmann::json out;
  out["start"] = euclid::to_json(trace.start);
  out["a"] = std::move(a);
  out["b"] = std::move(b);
  out["steps"] = std::move(steps);
  out["multivalued_events"] = std::move(events);
  out["verdict"] = std::move(verdict);
  return out;
}

nlohmann::json to_json(const MapConfig& config) {
  nlohmann::json j;
  j["set_a"] = euclid::to_json(config.set_a);
  j["set_b"] = euclid::to_json(config.set_b);
  j["start"] = euclid::to_json(config.start);
  j["max_iter"] = config.max_iter;
  j["stop_step"] = config.stop_step;
  j["tie_policy"] = config.tie_policy == TiePolicy::Error ? "error" : "lowest_index";
  j["tie_tol"] = config.tie_tol;
  j["continuum"] = {{"step_factor", config.continuum.step_factor},
                    {"spread_factor", config.continuum.spread_factor},
                    {"tail", config.continuum.tail}};
  return j;
}

MapConfig config_from_json(const nlohmann::json& j) {
  using euclid::field_at;
  using euclid::number_at;
  if (!j.is_object()) throw Error(ErrorCode::Schema, "/: expected an object");

  const auto positive_int = [](const nlohmann::json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw Error(ErrorCode::Schema, path + ": expected a positive integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
  };

  MapConfig config{
      euclid::spec_from_json(field_at(j, "set_a", ""), "/set_a"),
      euclid::spec_from_json(field_at(j, "set_b", ""), "/set_b"),
      euclid::point_from_json(field_at(j, "start", ""), "/start"),
  };
  if (j.contains("max_iter")) config.max_iter = positive_int(j["max_iter"], "/max_iter");
  if (j.contains("stop_step")) {
    config.stop_step = number_at(j, "stop_step", "");
    if (config.stop_step < 0.0) throw Error(ErrorCode::Schema, "/stop_step: must be nonnegative");
  }
  if (j.contains("tie_policy")) {
    const auto& p = j["tie_policy"];
    if (p == "lowest_index") {
      config.tie_policy = TiePolicy::LowestIndex;
    } else if (p == "error") {
      config.tie_policy = TiePolicy::Error;
    } else {
      throw Error(ErrorCode::Schema, "/tie_policy: expected \"lowest_index\" or \"error\"");
    }
  }
  if (j.contains("tie_tol")) {
    config.tie_tol = number_at(j, "tie_tol", "");
    if (!(config.tie_tol > 0.0)) throw Error(ErrorCode::Schema, "/tie_tol: must be positive");
  }
  if (j.contains("continuum")) {
    const auto& c = j["continuum"];
    if (c.contains("step_factor")) config.continuum.step_factor = number_at(c, "step_factor", "/continuum");
    if (c.contains("spread_factor")) config.continuum.spread_factor = number_at(c, "spread_factor", "/continuum");
    if (c.contains("tail")) config.continuum.tail = positive_int(c["tail"], "/continuum/tail");
  }
  require_same_dim(config.set_a.dim(), config.set_b.dim(), "config set_b");
  require_same_dim(config.set_a.dim(), config.start.dim(), "config start");
  return config;
}

}  // namespace spiralmap::map

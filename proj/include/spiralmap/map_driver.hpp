#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spiralmap/point.hpp"
#include "spiralmap/projector.hpp"

namespace spiralmap::map {

enum class TiePolicy { LowestIndex, Error };

inline constexpr double kDefaultStopStep = 1e-12;

/// Thresholds for the ContinuumSuspected label. This is a diagnostic: no
/// finite run can prove that the cluster set is a continuum.
struct ContinuumHeuristic {
  double step_factor = 1e3;     // last steps must be below stop_step * step_factor
  double spread_factor = 100.0;  // tail spread must exceed stop_step * spread_factor
  std::size_t tail = 100;        // number of trailing a-iterates inspected
};

struct MapConfig {
  euclid::ProjectorSpec set_a;
  euclid::ProjectorSpec set_b;
  Point start;  // b_{-1}
  std::size_t max_iter = 1000;
  double stop_step = kDefaultStopStep;  // 0 disables early stopping
  TiePolicy tie_policy = TiePolicy::LowestIndex;
  double tie_tol = euclid::kDefaultTieTol;
  ContinuumHeuristic continuum{};
};

struct Verdict {
  enum class Kind { ConvergedToPoint, ContinuumSuspected, BudgetExhausted };

  Kind kind = Kind::BudgetExhausted;
  std::optional<Point> limit;  // ConvergedToPoint only
  double ring_radius_estimate = std::numeric_limits<double>::quiet_NaN();
  double angular_spread = std::numeric_limits<double>::quiet_NaN();
  std::size_t iterations_used = 0;
};

struct MultivaluedEvent {
  std::size_t iteration;
  char set;  // 'A' or 'B'
  std::size_t candidates;
};

struct MapTrace {
  Point start;
  std::vector<Point> a;
  std::vector<Point> b;
  double initial_step = 0.0;       // |a_0 - b_{-1}|
  std::vector<double> step_ab;     // |b_n - a_n|
  std::vector<double> step_ba;     // |a_{n+1} - b_n|
  std::vector<MultivaluedEvent> multivalued_events;
  Verdict verdict;
};

/// Alternating projections a_n in P_A(b_{n-1}), b_n in P_B(a_n).
///
/// Iteration n is declared converged when |b_n - a_n| < stop_step and, for
/// n > 0, |a_n - b_{n-1}| < stop_step. Multivalued projections follow the
/// tie policy: LowestIndex takes the first candidate and logs the event,
/// Error throws TieEncountered. DegenerateProjection is rethrown carrying
/// the iteration index.
MapTrace run(const MapConfig& config);

struct ClusterDiagnostics {
  double radius_mean = 0.0;
  double radius_dev = 0.0;
  double angular_gap_max = 0.0;
};

/// Statistics of the last `tail` a-iterates: norm mean and standard
/// deviation, and the largest circular gap between their polar angles
/// (taken in the plane of the first two coordinates).
ClusterDiagnostics cluster_diagnostics(const MapTrace& trace, std::size_t tail);

std::string to_string(Verdict::Kind kind);

nlohmann::json to_json(const MapTrace& trace);
nlohmann::json to_json(const MapConfig& config);
MapConfig config_from_json(const nlohmann::json& j);

}  // namespace spiralmap::map

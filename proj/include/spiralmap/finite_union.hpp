#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spiralmap/point.hpp"
#include "spiralmap/projector.hpp"

// Empirical harness for alternating projections between finite unions of
// closed convex sets: whenever the iterates stay bounded and both gaps
// b_n - a_n and a_{n+1} - b_n vanish, a_n and b_n must converge to one
// point of A n B.
namespace spiralmap::finite_union {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr std::size_t kDefaultMaxIter = 20000;
// Extra iterations run past the stop point to test that the tail stays put.
inline constexpr std::size_t kCauchyWindow = 50;
inline constexpr double kFejerSlack = 1e-9;

struct UnionScenario {
  std::vector<euclid::ProjectorSpec> a_members;
  std::vector<euclid::ProjectorSpec> b_members;
  Point start;
  std::uint64_t seed = 0;
  std::size_t max_iter = kDefaultMaxIter;
  std::optional<Point> planted;  // common point c*, when known
};

/// Validates and assembles a scenario: nonempty sides, every member convex
/// (no spheres, multi-point clouds or unions), one common dimension.
UnionScenario make_scenario(std::vector<euclid::ProjectorSpec> a_members,
                            std::vector<euclid::ProjectorSpec> b_members, Point start,
                            std::size_t max_iter = kDefaultMaxIter, std::uint64_t seed = 0);

/// Random scenario around a planted point c* uniform in [-1, 1]^dim. Every
/// member is a box, ball or halfspace holding c* in its interior; the start
/// lies within distance 10 of c*. Fully determined by the arguments.
UnionScenario generate_scenario(std::uint64_t seed, std::size_t dim, std::size_t members_per_side);

enum class Outcome { Pass, HypothesesNotMet, Fail };

struct ConvergenceVerdict {
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::HypothesesNotMet;
  bool bounded = false;
  bool gaps_vanished = false;
  bool converged = false;
  std::optional<Point> limit;
  bool limit_in_intersection = false;
  bool fejer_tail = false;         // distances to the limit nonincreasing once close
  double tail_spread = 0.0;        // max distance of the tail window to the limit
  double cluster_separation = 0.0; // max pairwise distance inside the tail window
  double final_gap_ab = 0.0;
  double final_gap_ba = 0.0;
  std::size_t iterations = 0;
};

/// Runs MAP on the two unions and checks the hypotheses (bounded iterates,
/// final gaps < tol) before the conclusion (tail Cauchy within tol, limit
/// within tol of some A_i and some B_j, Fejer-type monotonicity once the
/// iterates are close). Runs that miss the hypotheses are reported as
/// HypothesesNotMet, never as failures.
ConvergenceVerdict check_theorem(const UnionScenario& scenario, double tol = kDefaultTol);

struct ScenarioRequest {
  std::uint64_t seed;
  std::size_t dim;
  std::size_t members_per_side;
};

/// Scenarios are independent and run under OpenMP; results come back in
/// request order and match run_batch_serial exactly.
std::vector<ConvergenceVerdict> run_batch(std::span<const ScenarioRequest> requests,
                                          double tol = kDefaultTol);
std::vector<ConvergenceVerdict> run_batch_serial(std::span<const ScenarioRequest> requests,
                                                 double tol = kDefaultTol);

struct BatchSummary {
  std::size_t pass = 0;
  std::size_t hypotheses_not_met = 0;
  std::size_t fail = 0;
};

BatchSummary summarize(std::span<const ConvergenceVerdict> verdicts);

std::string to_string(Outcome outcome);
nlohmann::json to_json(const ConvergenceVerdict& verdict, const ScenarioRequest& request);
nlohmann::json to_json(const UnionScenario& scenario);

}  // namespace spiralmap::finite_union

#pragma once

#include <cstddef>
#include <optional>

#include "spiralmap/map_driver.hpp"
#include "spiralmap/projector.hpp"
#include "spiralmap/sequence.hpp"

// Two compact planar sets whose alternating projections spiral onto the
// unit circle forever:
//   A = {x_0, x_2, x_4, ...} u S,   B = {x_1, x_3, x_5, ...} u S,
// truncated to the first `horizon` spiral points. The Disk variant swaps the
// unit circle S for the closed unit disk.
namespace spiralmap::counterexample {

enum class Variant { Sphere, Disk };

// Stop threshold used for the counterexample runs. Spiral steps stay far
// above it at any reachable horizon, so the run never stops early, and it
// puts the continuum heuristic's step bound at 1e-3.
inline constexpr double kCorollaryStopStep = 1e-6;

struct CounterexampleSets {
  euclid::ProjectorSpec a;
  euclid::ProjectorSpec b;
  std::size_t horizon;
  Variant variant;
  sequence::SequenceReport sequence;  // x_0 .. x_{horizon-1}
};

CounterexampleSets build(std::size_t horizon, Variant variant = Variant::Sphere);
/// Builds from an already generated sequence, using all of its records.
CounterexampleSets build(sequence::SequenceReport sequence, Variant variant = Variant::Sphere);

/// Largest n_pairs accepted by run_corollary for this horizon.
std::size_t max_pairs(std::size_t horizon);

map::MapConfig corollary_config(const CounterexampleSets& sets, std::size_t n_pairs,
                                double tie_tol = euclid::kDefaultTieTol);

/// Runs MAP from b_{-1} = x_0 and checks a_n = x_{2n}, b_n = x_{2n+1}
/// bitwise for every n < n_pairs. Requires 2 n_pairs + 1 <= horizon so the
/// run stays clear of the truncation edge. Throws CorollaryViolated(n).
map::MapTrace run_corollary(const CounterexampleSets& sets, std::size_t n_pairs,
                            double tie_tol = euclid::kDefaultTieTol);

/// e^{-(alpha_last - 2 pi)}: the prefix holds a full winding of the spiral
/// this close to the unit circle. Starts nearer to the circle than this can
/// be pulled onto S only because the prefix ends there.
double truncation_radius(const CounterexampleSets& sets);

struct StartOutcome {
  enum class Kind { ConstantOnSphere, JoinsSpiralTail, Other };

  Kind kind = Kind::Other;
  std::optional<std::size_t> join_index;  // k with a_0 = x_{2k}
  std::size_t checked_pairs = 0;          // pairs compared against the spiral tail
  map::MapTrace trace;
};

/// Runs `n_pairs` MAP iterations from an arbitrary start and classifies the
/// orbit: constant on the unit circle, a tail (x_{2(k+n)}, x_{2(k+n)+1}) of
/// the spiral, or neither. Tail comparison stops two indices short of the
/// truncation edge.
StartOutcome classify_start(const CounterexampleSets& sets, const Point& start, std::size_t n_pairs);

}  // namespace spiralmap::counterexample

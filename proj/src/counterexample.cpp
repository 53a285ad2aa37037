#include "spiralmap/counterexample.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "spiralmap/errors.hpp"

namespace spiralmap::counterexample {
namespace {

constexpr double kOnSphereTol = 1e-12;

euclid::ProjectorSpec circle_member(Variant variant) {
  const Point origin{0.0, 0.0};
  return variant == Variant::Sphere ? euclid::ProjectorSpec::sphere(origin, 1.0)
                                    : euclid::ProjectorSpec::ball(origin, 1.0);
}

euclid::ProjectorSpec parity_set(const sequence::SequenceReport& seq, std::size_t parity, Variant variant) {
  std::vector<Point> pts;
  for (std::size_t k = parity; k < seq.records.size(); k += 2) pts.push_back(seq.records[k].x);
  std::vector<euclid::ProjectorSpec> members;
  members.push_back(euclid::ProjectorSpec::points(pts));
  members.push_back(circle_member(variant));
  return euclid::ProjectorSpec::union_of(std::move(members));
}

}  // namespace

CounterexampleSets build(std::size_t horizon, Variant variant) {
  if (horizon < 2) throw Error(ErrorCode::InvalidArgument, "counterexample horizon must be at least 2");
  return build(sequence::generate(horizon), variant);
}

CounterexampleSets build(sequence::SequenceReport seq, Variant variant) {
  const std::size_t horizon = seq.records.size();
  if (horizon < 2) throw Error(ErrorCode::InvalidArgument, "counterexample horizon must be at least 2");
  auto a = parity_set(seq, 0, variant);
  auto b = parity_set(seq, 1, variant);
  return {std::move(a), std::move(b), horizon, variant, std::move(seq)};
}

std::size_t max_pairs(std::size_t horizon) { return horizon < 1 ? 0 : (horizon - 1) / 2; }

map::MapConfig corollary_config(const CounterexampleSets& sets, std::size_t n_pairs, double tie_tol) {
  map::MapConfig config{sets.a, sets.b, sets.sequence.records.front().x};
  config.max_iter = n_pairs;
  config.stop_step = kCorollaryStopStep;
  config.tie_policy = map::TiePolicy::LowestIndex;
  config.tie_tol = tie_tol;
  return config;
}

map::MapTrace run_corollary(const CounterexampleSets& sets, std::size_t n_pairs, double tie_tol) {
  if (n_pairs < 1 || 2 * n_pairs + 1 > sets.horizon) {
    throw Error(ErrorCode::InvalidArgument,
                "run_corollary: need 1 <= n_pairs and 2 n_pairs + 1 <= horizon (" +
                    std::to_string(sets.horizon) + ")");
  }
  map::MapTrace trace = map::run(corollary_config(sets, n_pairs, tie_tol));
  const auto& rec = sets.sequence.records;
  if (trace.a.size() != n_pairs) {
    throw Error(ErrorCode::CorollaryViolated, "run stopped after " + std::to_string(trace.a.size()) + " pairs",
                trace.a.size());
  }
  for (std::size_t n = 0; n < n_pairs; ++n) {
    if (!(trace.a[n] == rec[2 * n].x)) {
      throw Error(ErrorCode::CorollaryViolated, "a_" + std::to_string(n) + " != x_" + std::to_string(2 * n), n);
    }
    if (!(trace.b[n] == rec[2 * n + 1].x)) {
      throw Error(ErrorCode::CorollaryViolated,
                  "b_" + std::to_string(n) + " != x_" + std::to_string(2 * n + 1), n);
    }
  }
  return trace;
}

double truncation_radius(const CounterexampleSets& sets) {
  return std::exp(-(sets.sequence.records.back().alpha - spiral::kTwoPi));
}

StartOutcome classify_start(const CounterexampleSets& sets, const Point& start, std::size_t n_pairs) {
  map::MapConfig config{sets.a, sets.b, start};
  config.max_iter = n_pairs;
  config.stop_step = 0.0;

  StartOutcome out;
  out.trace = map::run(config);
  const auto& t = out.trace;
  const auto& rec = sets.sequence.records;
  const Point& a0 = t.a.front();

  if (std::abs(norm(a0) - 1.0) <= kOnSphereTol) {
    bool constant = true;
    for (std::size_t n = 0; n < t.a.size(); ++n) {
      constant = constant && distance(t.a[n], a0) <= kOnSphereTol && distance(t.b[n], a0) <= kOnSphereTol;
    }
    out.kind = constant ? StartOutcome::Kind::ConstantOnSphere : StartOutcome::Kind::Other;
    return out;
  }

  for (std::size_t k = 0; 2 * k < rec.size(); ++k) {
    if (rec[2 * k].x == a0) {
      out.join_index = k;
      break;
    }
  }
  if (!out.join_index) return out;

  const std::size_t k = *out.join_index;
  bool follows = true;
  for (std::size_t n = 0; n < t.a.size() && 2 * (k + n) + 1 + 2 < sets.horizon; ++n) {
    follows = follows && t.a[n] == rec[2 * (k + n)].x && t.b[n] == rec[2 * (k + n) + 1].x;
    ++out.checked_pairs;
  }
  out.kind = follows ? StartOutcome::Kind::JoinsSpiralTail : StartOutcome::Kind::Other;
  return out;
}

}  // namespace spiralmap::counterexample

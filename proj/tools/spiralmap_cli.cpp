// spiralmap: generate, verify and plot the spiral sequence, run alternating
// projections from a JSON config, and run finite-union experiments.
//
// Exit codes: 0 success, 1 check failure, 2 usage or config error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spiralmap/counterexample.hpp"
#include "spiralmap/errors.hpp"
#include "spiralmap/finite_union.hpp"
#include "spiralmap/json_format.hpp"
#include "spiralmap/map_driver.hpp"
#include "spiralmap/sequence.hpp"
#include "spiralmap/sequence_io.hpp"
#include "spiralmap/spec_json.hpp"
#include "spiralmap/svg_plot.hpp"

namespace {

namespace sm = spiralmap;

enum Exit : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_gen(std::size_t n, const std::string& out, const std::string& format) {
  const auto report = sm::sequence::generate(n);
  if (format == "csv") {
    std::ostringstream ss;
    sm::sequence::write_csv(report, ss);
    write_text(out, ss.str());
  } else {
    write_text(out, sm::dump_json(sm::sequence::to_json(report), 1) + "\n");
  }
  if (report.stopped_early) std::cerr << "warning: generation stopped early at the angle limit\n";
  return kOk;
}

int cmd_verify(std::size_t horizon, std::size_t nearest_horizon, long long corrupt) {
  auto report = sm::sequence::generate(horizon + 1);
  if (corrupt >= 0) {
    auto& rec = report.records.at(static_cast<std::size_t>(corrupt));
    rec.x = sm::Point{rec.x[0] + 1e-6, rec.x[1]};
    std::cout << "test hook: perturbed x_" << corrupt << " by 1e-6\n";
  }
  const auto checks = sm::sequence::run_checks(report, nearest_horizon);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  [" << c.statement << "]  value="
              << sm::format_double(c.value);
    if (!c.detail.empty()) std::cout << "  " << c.detail;
    std::cout << '\n';
  }
  if (!all) {
    std::cout << "violated:";
    for (const auto& c : checks) {
      if (!c.passed) std::cout << ' ' << c.name;
    }
    std::cout << '\n';
  }
  return all ? kOk : kCheckFailed;
}

int cmd_plot(std::size_t n, const std::string& out) {
  write_text(out, sm::plot::render_spiral_svg(sm::sequence::generate(n)));
  return kOk;
}

int cmd_run(const std::string& config_path, const std::string& trace_out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(config_path));
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  }
  sm::map::MapConfig config = [&] {
    try {
      return sm::map::config_from_json(j);
    } catch (const sm::Error& e) {
      throw CLI::ValidationError("config", e.what());
    }
  }();
  const auto trace = sm::map::run(config);
  const auto& v = trace.verdict;
  std::cout << "verdict: " << sm::map::to_string(v.kind) << " after " << v.iterations_used << " iterations";
  if (v.limit) std::cout << "  limit=" << sm::dump_json(sm::euclid::to_json(*v.limit));
  if (v.kind == sm::map::Verdict::Kind::ContinuumSuspected) {
    std::cout << "  ring_radius=" << sm::format_double(v.ring_radius_estimate)
              << "  angular_spread=" << sm::format_double(v.angular_spread) << "  (heuristic)";
  }
  std::cout << "\nmultivalued projections: " << trace.multivalued_events.size() << '\n';
  if (!trace_out.empty()) write_text(trace_out, sm::dump_json(sm::map::to_json(trace)) + "\n");
  return kOk;
}

int cmd_union_batch(const std::string& seeds, std::size_t dim, std::size_t members, double tol,
                    const std::string& out) {
  const auto colon = seeds.find(':');
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  try {
    if (colon == std::string::npos) {
      begin = std::stoull(seeds);
      end = begin + 1;
    } else {
      begin = std::stoull(seeds.substr(0, colon));
      end = std::stoull(seeds.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--seeds", "expected BEGIN:END or a single seed");
  }
  if (end <= begin) throw CLI::ValidationError("--seeds", "empty seed range");

  std::vector<sm::finite_union::ScenarioRequest> requests;
  for (std::uint64_t s = begin; s < end; ++s) {
    requests.push_back({s, dim, members == 0 ? 1 + static_cast<std::size_t>(s % 4) : members});
  }
  const auto verdicts = sm::finite_union::run_batch(requests, tol);
  std::ostringstream lines;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    lines << sm::dump_json(sm::finite_union::to_json(verdicts[i], requests[i])) << '\n';
  }
  write_text(out, lines.str());
  const auto s = sm::finite_union::summarize(verdicts);
  std::cout << "summary: pass=" << s.pass << " hypotheses_not_met=" << s.hypotheses_not_met << " fail=" << s.fail
            << '\n';
  return s.fail == 0 ? kOk : kCheckFailed;
}

int cmd_export_sets(std::size_t horizon, const std::string& variant, std::size_t n_pairs, const std::string& out) {
  const auto v = variant == "disk" ? sm::counterexample::Variant::Disk : sm::counterexample::Variant::Sphere;
  const auto sets = sm::counterexample::build(horizon, v);
  const std::size_t pairs = n_pairs == 0 ? sm::counterexample::max_pairs(horizon) : n_pairs;
  if (pairs < 1 || 2 * pairs + 1 > horizon) {
    throw CLI::ValidationError("--n-pairs", "needs 1 <= n_pairs and 2 n_pairs + 1 <= horizon");
  }
  write_text(out, sm::dump_json(sm::map::to_json(sm::counterexample::corollary_config(sets, pairs))) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating projections, the spiral counterexample and finite-union experiments"};
  app.require_subcommand(1);

  std::size_t n = 16;
  std::string out = "-";
  std::string format = "csv";
  auto* gen = app.add_subcommand("gen", "Generate the spiral sequence table");
  gen->add_option("--n", n, "Number of records")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  gen->add_option("--out", out, "Output path, '-' for stdout");
  gen->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::size_t horizon = 2000;
  std::size_t nearest_horizon = spiralmap::sequence::kDefaultNearestHorizon;
  long long corrupt = -1;
  auto* verify = app.add_subcommand("verify", "Run every identity and nearest-point check");
  verify->add_option("--horizon", horizon, "Largest sequence index checked")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  verify->add_option("--nearest-horizon", nearest_horizon, "Cap for the O(N^2) nearest-point scan")
      ->check(CLI::PositiveNumber);
  verify->add_option("--corrupt-record", corrupt, "Test hook: perturb x_K before checking")->group("");

  std::size_t plot_n = 16;
  std::string plot_out = "spiral.svg";
  auto* plot = app.add_subcommand("plot", "Write the spiral figure as SVG");
  plot->add_option("--n", plot_n, "Number of iterates drawn")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  plot->add_option("--out", plot_out, "SVG output path");

  std::string config_path;
  std::string trace_out;
  auto* run = app.add_subcommand("run", "Run alternating projections from a JSON config");
  run->add_option("--config", config_path, "MapConfig JSON file")->required();
  run->add_option("--trace-out", trace_out, "Trace JSON output path");

  std::string seeds = "0:200";
  std::size_t dim = 2;
  std::size_t members = 0;
  double tol = spiralmap::finite_union::kDefaultTol;
  std::string batch_out = "-";
  auto* batch = app.add_subcommand("union-batch", "Finite-union convergence experiments");
  batch->add_option("--seeds", seeds, "Seed range BEGIN:END (half-open) or a single seed");
  batch->add_option("--dim", dim, "Dimension")->check(CLI::Range(std::size_t{2}, std::size_t{4}));
  batch->add_option("--members", members, "Members per side, 0 = 1 + seed % 4")
      ->check(CLI::Range(std::size_t{0}, std::size_t{4}));
  batch->add_option("--tol", tol, "Gap and convergence tolerance")->check(CLI::PositiveNumber);
  batch->add_option("--out", batch_out, "JSON-lines output path, '-' for stdout");

  std::size_t export_horizon = 2000;
  std::string variant = "sphere";
  std::size_t n_pairs = 0;
  std::string export_out = "-";
  auto* exp = app.add_subcommand("export-sets", "Write the counterexample as a MapConfig JSON");
  exp->add_option("--horizon", export_horizon, "Number of spiral points")->check(CLI::Range(std::size_t{3}, std::size_t{10000000}));
  exp->add_option("--variant", variant, "sphere or disk")->check(CLI::IsMember({"sphere", "disk"}));
  exp->add_option("--n-pairs", n_pairs, "MAP iterations, 0 = as many as the horizon allows");
  exp->add_option("--out", export_out, "Output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(n, out, format);
    if (*verify) return cmd_verify(horizon, nearest_horizon, corrupt);
    if (*plot) return cmd_plot(plot_n, plot_out);
    if (*run) return cmd_run(config_path, trace_out);
    if (*batch) return cmd_union_batch(seeds, dim, members, tol, batch_out);
    if (*exp) return cmd_export_sets(export_horizon, variant, n_pairs, export_out);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const spiralmap::Error& e) {
    std::cerr << "error: " << e.what();
    if (e.index()) std::cerr << " (index " << *e.index() << ")";
    std::cerr << '\n';
    const bool config_problem = e.code() == spiralmap::ErrorCode::Schema ||
                                e.code() == spiralmap::ErrorCode::DimensionMismatch ||
                                e.code() == spiralmap::ErrorCode::InvalidArgument;
    return config_problem ? kUsage : kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

#include "spiralmap/sequence_io.hpp"

#include <ostream>

#include "spiralmap/json_format.hpp"
#include "spiralmap/spec_json.hpp"

namespace spiralmap::sequence {

void write_csv(const SequenceReport& report, std::ostream& out) {
  out << "n,alpha,delta,rho,eps,x,y\n";
  for (const auto& r : report.records) {
    out << r.n << ',' << format_double(r.alpha) << ',' << (r.delta ? format_double(*r.delta) : "")
        << ',' << format_double(r.rho) << ',' << format_double(r.eps) << ',' << format_double(r.x[0])
        << ',' << format_double(r.x[1]) << '\n';
  }
}

nlohmann::json to_json(const SequenceReport& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json j;
    j["n"] = r.n;
    j["alpha"] = r.alpha;
    j["delta"] = r.delta ? nlohmann::json(*r.delta) : nlohmann::json(nullptr);
    j["rho"] = r.rho;
    j["eps"] = r.eps;
    j["x"] = euclid::to_json(r.x);
    j["q"] = r.q ? nlohmann::json(*r.q) : nlohmann::json(nullptr);
    records.push_back(std::move(j));
  }
  nlohmann::json out;
  out["records"] = std::move(records);
  out["partial_delta_sum"] = report.partial_delta_sum;
  out["partial_eps_sum"] = report.partial_eps_sum;
  out["max_identity_residual"] = report.max_identity_residual;
  out["stopped_early"] = report.stopped_early;
  return out;
}

}  // namespace spiralmap::sequence

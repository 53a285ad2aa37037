#pragma once

#include <iosfwd>

#include <json.hpp>

#include "spiralmap/sequence.hpp"

namespace spiralmap::sequence {

/// Header `n,alpha,delta,rho,eps,x,y`; delta is empty on the last row.
void write_csv(const SequenceReport& report, std::ostream& out);

/// {"records": [{"n","alpha","delta","rho","eps","x":[..],"q"}...], sums...};
/// delta and q are null when absent.
nlohmann::json to_json(const SequenceReport& report);

}  // namespace spiralmap::sequence

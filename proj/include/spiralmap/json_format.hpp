#pragma once

#include <string>

#include <json.hpp>

namespace spiralmap {

/// Shortest "%.17g" rendering; round-trips every finite double.
std::string format_double(double v);

/// Serializes `j` like nlohmann::json::dump but writes every floating
/// point number with 17 significant digits. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j, int indent = -1);

}  // namespace spiralmap

#pragma once

#include <string>

#include <json.hpp>

#include "spiralmap/point.hpp"
#include "spiralmap/projector.hpp"

namespace spiralmap::euclid {

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const ProjectorSpec& spec);

// Parsers throw Error(Schema) naming the offending JSON path, e.g.
// "/set_a/members/1/radius".
Point point_from_json(const nlohmann::json& j, const std::string& path);
ProjectorSpec spec_from_json(const nlohmann::json& j, const std::string& path = "");

double number_at(const nlohmann::json& obj, const char* key, const std::string& path);
const nlohmann::json& field_at(const nlohmann::json& obj, const char* key, const std::string& path);

}  // namespace spiralmap::euclid

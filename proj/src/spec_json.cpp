#include "spiralmap/spec_json.hpp"

#include <vector>

#include "spiralmap/errors.hpp"

namespace spiralmap::euclid {
namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Schema, (path.empty() ? std::string("/") : path) + ": " + what);
}

template <class F>
auto rethrow_at(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    schema_error(path, e.what());
  }
}

}  // namespace

nlohmann::json to_json(const Point& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (double c : p.coords()) arr.push_back(c);
  return arr;
}

nlohmann::json to_json(const ProjectorSpec& spec) {
  nlohmann::json j;
  j["type"] = std::string(spec.type_name());
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere> || std::is_same_v<T, Ball>) {
          j["center"] = to_json(s.center);
          j["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, Box>) {
          j["min"] = to_json(s.min);
          j["max"] = to_json(s.max);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          j["normal"] = to_json(s.normal);
          j["offset"] = s.offset;
        } else if constexpr (std::is_same_v<T, Segment>) {
          j["a"] = to_json(s.a);
          j["b"] = to_json(s.b);
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          nlohmann::json coords = nlohmann::json::array();
          for (std::size_t i = 0; i < s.size(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (double c : s.row(i)) row.push_back(c);
            coords.push_back(std::move(row));
          }
          j["coords"] = std::move(coords);
        } else {
          nlohmann::json members = nlohmann::json::array();
          for (const auto& m : s.members) members.push_back(to_json(m));
          j["members"] = std::move(members);
        }
      },
      spec.variant());
  return j;
}

const nlohmann::json& field_at(const nlohmann::json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "/" + key, "missing field");
  return *it;
}

double number_at(const nlohmann::json& obj, const char* key, const std::string& path) {
  const auto& v = field_at(obj, key, path);
  if (!v.is_number()) schema_error(path + "/" + key, "expected a number");
  return v.get<double>();
}

Point point_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) schema_error(path, "expected a nonempty array of numbers");
  std::vector<double> coords;
  coords.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) schema_error(path + "/" + std::to_string(i), "expected a number");
    coords.push_back(j[i].get<double>());
  }
  return rethrow_at(path, [&] { return Point(std::move(coords)); });
}

ProjectorSpec spec_from_json(const nlohmann::json& j, const std::string& path) {
  const auto& type_field = field_at(j, "type", path);
  if (!type_field.is_string()) schema_error(path + "/type", "expected a string");
  const std::string type = type_field.get<std::string>();

  return rethrow_at(path, [&] {
    if (type == "sphere" || type == "ball") {
      Point center = point_from_json(field_at(j, "center", path), path + "/center");
      const double radius = number_at(j, "radius", path);
      return type == "sphere" ? ProjectorSpec::sphere(std::move(center), radius)
                              : ProjectorSpec::ball(std::move(center), radius);
    }
    if (type == "box") {
      return ProjectorSpec::box(point_from_json(field_at(j, "min", path), path + "/min"),
                                point_from_json(field_at(j, "max", path), path + "/max"));
    }
    if (type == "halfspace") {
      return ProjectorSpec::halfspace(point_from_json(field_at(j, "normal", path), path + "/normal"),
                                      number_at(j, "offset", path));
    }
    if (type == "segment") {
      return ProjectorSpec::segment(point_from_json(field_at(j, "a", path), path + "/a"),
                                    point_from_json(field_at(j, "b", path), path + "/b"));
    }
    if (type == "points") {
      const auto& coords = field_at(j, "coords", path);
      if (!coords.is_array() || coords.empty()) schema_error(path + "/coords", "expected a nonempty array");
      std::vector<Point> pts;
      pts.reserve(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) {
        pts.push_back(point_from_json(coords[i], path + "/coords/" + std::to_string(i)));
      }
      return ProjectorSpec::points(pts);
    }
    if (type == "union") {
      const auto& members = field_at(j, "members", path);
      if (!members.is_array() || members.empty()) schema_error(path + "/members", "expected a nonempty array");
      std::vector<ProjectorSpec> specs;
      specs.reserve(members.size());
      for (std::size_t i = 0; i < members.size(); ++i) {
        specs.push_back(spec_from_json(members[i], path + "/members/" + std::to_string(i)));
      }
      return ProjectorSpec::union_of(std::move(specs));
    }
    schema_error(path + "/type", "unknown set type '" + type + "'");
  });
}

}  // namespace spiralmap::euclid

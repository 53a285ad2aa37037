#include "spiralmap/point.hpp"

#include <cmath>
#include <string>

#include "spiralmap/errors.hpp"

namespace spiralmap {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::NearestPropertyViolated: return "NearestPropertyViolated";
    case ErrorCode::CorollaryViolated: return "CorollaryViolated";
    case ErrorCode::TieEncountered: return "TieEncountered";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      index_(index) {}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "point must have at least one coordinate");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument, "point coordinates must be finite");
    }
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

void require_same_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected dimension " + std::to_string(expected) +
                    ", got " + std::to_string(actual));
  }
}

Point operator+(const Point& p, const Point& q) {
  require_same_dim(p.dim(), q.dim(), "point addition");
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] + q[i];
  return Point(std::move(out));
}

Point operator-(const Point& p, const Point& q) {
  require_same_dim(p.dim(), q.dim(), "point subtraction");
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] - q[i];
  return Point(std::move(out));
}

Point operator*(double s, const Point& p) {
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * p[i];
  return Point(std::move(out));
}

double dot(const Point& p, const Point& q) {
  require_same_dim(p.dim(), q.dim(), "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += p[i] * q[i];
  return s;
}

double distance_sq(const Point& p, const Point& q) {
  require_same_dim(p.dim(), q.dim(), "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

double norm(const Point& p) { return std::sqrt(dot(p, p)); }

double distance(const Point& p, const Point& q) { return std::sqrt(distance_sq(p, q)); }

}  // namespace spiralmap

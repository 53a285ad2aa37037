#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "spiralmap/point.hpp"

namespace spiralmap::euclid {

inline constexpr double kDefaultTieTol = 1e-9;
inline constexpr double kMembershipTol = 1e-9;
// A sphere query this close to the center has the whole sphere as its projection.
inline constexpr double kCenterTol = 1e-12;
inline constexpr double kUnitNormalTol = 1e-12;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Sphere {
  Point center;
  double radius;
};

struct Ball {
  Point center;
  double radius;
};

struct Box {
  Point min;
  Point max;
};

// {x : <normal, x> <= offset}, normal of unit length.
struct Halfspace {
  Point normal;
  double offset;
};

struct Segment {
  Point a;
  Point b;
};

/// Finite point set stored row-major in one contiguous buffer so that the
/// nearest-point scan streams through memory.
class PointCloud {
 public:
  explicit PointCloud(std::span<const Point> points);

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return coords_; }
  Point point(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

class ProjectorSpec;

struct Union {
  std::vector<ProjectorSpec> members;
};

/// Declarative closed set. Construction goes through the named factories,
/// which enforce the per-variant invariants.
class ProjectorSpec {
 public:
  using Variant = std::variant<Sphere, Ball, Box, Halfspace, Segment, PointCloud, Union>;

  static ProjectorSpec sphere(Point center, double radius);
  static ProjectorSpec ball(Point center, double radius);
  static ProjectorSpec box(Point min, Point max);
  static ProjectorSpec halfspace(Point normal, double offset);
  static ProjectorSpec segment(Point a, Point b);
  static ProjectorSpec points(std::span<const Point> points);
  static ProjectorSpec union_of(std::vector<ProjectorSpec> members);

  const Variant& variant() const noexcept { return variant_; }
  std::size_t dim() const noexcept { return dim_; }
  std::string_view type_name() const noexcept;

  // Sphere, multi-point clouds and unions are not convex.
  bool is_convex() const noexcept;

 private:
  ProjectorSpec(Variant v, std::size_t dim) : variant_(std::move(v)), dim_(dim) {}

  Variant variant_;
  std::size_t dim_;
};

struct ProjectionResult {
  std::vector<Point> candidates;
  double distance = 0.0;
  bool multivalued = false;
  // Gap from the minimum distance to the nearest non-minimizing candidate
  // (another cloud point or union member); +inf when there is none.
  double margin = kInfinity;
};

/// Exact distance from `q` to the set.
double distance(const ProjectorSpec& spec, const Point& q);

/// All nearest points of the set to `q`, up to `tie_tol`.
///
/// Throws DegenerateProjection when the minimizer set is a whole sphere
/// (query at a sphere center), DimensionMismatch on bad input.
ProjectionResult project(const ProjectorSpec& spec, const Point& q,
                         double tie_tol = kDefaultTieTol);

bool contains(const ProjectorSpec& spec, const Point& q, double tol = kMembershipTol);

}  // namespace spiralmap::euclid

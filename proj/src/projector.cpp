#include "spiralmap/projector.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "spiralmap/cloud_kernels.hpp"
#include "spiralmap/errors.hpp"

namespace spiralmap::euclid {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "radius must be positive and finite");
  }
}

// Radial projection used by both Sphere and Ball so that the two agree
// bitwise outside the ball.
Point radial(const Point& center, double radius, const Point& q, double dist) {
  return center + (radius / dist) * (q - center);
}

Point clamp_to_box(const Box& box, const Point& q) {
  std::vector<double> out(q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) out[i] = std::clamp(q[i], box.min[i], box.max[i]);
  return Point(std::move(out));
}

Point segment_foot(const Segment& s, const Point& q) {
  const Point ab = s.b - s.a;
  const double len_sq = dot(ab, ab);
  if (len_sq == 0.0) return s.a;
  const double t = std::clamp(dot(q - s.a, ab) / len_sq, 0.0, 1.0);
  return s.a + t * ab;
}

// Candidates and their distances, plus the nearest non-candidate level.
struct Gathered {
  std::vector<Point> candidates;
  double best = kInfinity;
  double next_level = kInfinity;
};

Gathered single(Point p, double d) {
  Gathered g;
  g.best = d;
  g.candidates.push_back(std::move(p));
  return g;
}

Gathered project_cloud(const PointCloud& cloud, const Point& q, double tie_tol) {
  const CloudNearest nearest = nearest_in_cloud(cloud, q.coords());
  Gathered g;
  g.best = nearest.distance;
  if (nearest.margin > tie_tol) {
    g.candidates.push_back(cloud.point(nearest.index));
    g.next_level = nearest.distance + nearest.margin;
    return g;
  }
  // Near tie: collect every point within tie_tol of the minimum.
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point p = cloud.point(i);
    const double d = distance(p, q);
    if (d <= g.best + tie_tol) {
      g.candidates.push_back(p);
    } else {
      g.next_level = std::min(g.next_level, d);
    }
  }
  return g;
}

Gathered project_impl(const ProjectorSpec& spec, const Point& q, double tie_tol);

Gathered project_union(const Union& u, const Point& q, double tie_tol) {
  // Clouds are projected eagerly (the scan yields the distance anyway);
  // other members are projected only when they attain the minimum.
  std::vector<double> member_dist(u.members.size());
  std::vector<std::optional<Gathered>> eager(u.members.size());
  for (std::size_t i = 0; i < u.members.size(); ++i) {
    if (const auto* c = std::get_if<PointCloud>(&u.members[i].variant())) {
      eager[i] = project_cloud(*c, q, tie_tol);
      member_dist[i] = eager[i]->best;
    } else {
      member_dist[i] = distance(u.members[i], q);
    }
  }
  const double best = *std::min_element(member_dist.begin(), member_dist.end());

  Gathered g;
  g.best = best;
  for (std::size_t i = 0; i < u.members.size(); ++i) {
    if (member_dist[i] > best + tie_tol) {
      g.next_level = std::min(g.next_level, member_dist[i]);
      continue;
    }
    Gathered sub = eager[i] ? std::move(*eager[i]) : project_impl(u.members[i], q, tie_tol);
    for (auto& c : sub.candidates) {
      const double d = distance(c, q);
      if (d <= best + tie_tol) {
        g.candidates.push_back(std::move(c));
      } else {
        g.next_level = std::min(g.next_level, d);
      }
    }
    g.next_level = std::min(g.next_level, sub.next_level);
  }
  return g;
}

Gathered project_impl(const ProjectorSpec& spec, const Point& q, double tie_tol) {
  return std::visit(
      Overloaded{
          [&](const Sphere& s) {
            const double r = distance(q, s.center);
            if (r <= kCenterTol) {
              throw Error(ErrorCode::DegenerateProjection,
                          "query coincides with the sphere center; every sphere point is nearest");
            }
            return single(radial(s.center, s.radius, q, r), std::abs(r - s.radius));
          },
          [&](const Ball& b) {
            const double r = distance(q, b.center);
            if (r <= b.radius) return single(q, 0.0);
            return single(radial(b.center, b.radius, q, r), r - b.radius);
          },
          [&](const Box& b) {
            Point c = clamp_to_box(b, q);
            const double d = distance(c, q);
            return single(std::move(c), d);
          },
          [&](const Halfspace& h) {
            const double s = dot(h.normal, q) - h.offset;
            if (s <= 0.0) return single(q, 0.0);
            return single(q - s * h.normal, s);
          },
          [&](const Segment& s) {
            Point c = segment_foot(s, q);
            const double d = distance(c, q);
            return single(std::move(c), d);
          },
          [&](const PointCloud& c) { return project_cloud(c, q, tie_tol); },
          [&](const Union& u) { return project_union(u, q, tie_tol); },
      },
      spec.variant());
}

}  // namespace

PointCloud::PointCloud(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "point cloud must be nonempty");
  dim_ = points.front().dim();
  coords_.reserve(points.size() * dim_);
  for (const auto& p : points) {
    require_same_dim(dim_, p.dim(), "point cloud");
    coords_.insert(coords_.end(), p.coords().begin(), p.coords().end());
  }
}

Point PointCloud::point(std::size_t i) const {
  const auto r = row(i);
  return Point(std::vector<double>(r.begin(), r.end()));
}

ProjectorSpec ProjectorSpec::sphere(Point center, double radius) {
  require_radius(radius);
  const std::size_t d = center.dim();
  return ProjectorSpec(Sphere{std::move(center), radius}, d);
}

ProjectorSpec ProjectorSpec::ball(Point center, double radius) {
  require_radius(radius);
  const std::size_t d = center.dim();
  return ProjectorSpec(Ball{std::move(center), radius}, d);
}

ProjectorSpec ProjectorSpec::box(Point min, Point max) {
  require_same_dim(min.dim(), max.dim(), "box corners");
  for (std::size_t i = 0; i < min.dim(); ++i) {
    if (min[i] > max[i]) throw Error(ErrorCode::InvalidArgument, "box requires min <= max");
  }
  const std::size_t d = min.dim();
  return ProjectorSpec(Box{std::move(min), std::move(max)}, d);
}

ProjectorSpec ProjectorSpec::halfspace(Point normal, double offset) {
  if (std::abs(norm(normal) - 1.0) > kUnitNormalTol) {
    throw Error(ErrorCode::InvalidArgument, "halfspace normal must have unit length");
  }
  if (!std::isfinite(offset)) throw Error(ErrorCode::InvalidArgument, "halfspace offset must be finite");
  const std::size_t d = normal.dim();
  return ProjectorSpec(Halfspace{std::move(normal), offset}, d);
}

ProjectorSpec ProjectorSpec::segment(Point a, Point b) {
  require_same_dim(a.dim(), b.dim(), "segment endpoints");
  const std::size_t d = a.dim();
  return ProjectorSpec(Segment{std::move(a), std::move(b)}, d);
}

ProjectorSpec ProjectorSpec::points(std::span<const Point> points) {
  PointCloud cloud(points);
  const std::size_t d = cloud.dim();
  return ProjectorSpec(std::move(cloud), d);
}

ProjectorSpec ProjectorSpec::union_of(std::vector<ProjectorSpec> members) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "union must have at least one member");
  const std::size_t d = members.front().dim();
  for (const auto& m : members) require_same_dim(d, m.dim(), "union member");
  return ProjectorSpec(Union{std::move(members)}, d);
}

std::string_view ProjectorSpec::type_name() const noexcept {
  return std::visit(Overloaded{
                        [](const Sphere&) { return std::string_view("sphere"); },
                        [](const Ball&) { return std::string_view("ball"); },
                        [](const Box&) { return std::string_view("box"); },
                        [](const Halfspace&) { return std::string_view("halfspace"); },
                        [](const Segment&) { return std::string_view("segment"); },
                        [](const PointCloud&) { return std::string_view("points"); },
                        [](const Union&) { return std::string_view("union"); },
                    },
                    variant_);
}

bool ProjectorSpec::is_convex() const noexcept {
  if (std::holds_alternative<Sphere>(variant_) || std::holds_alternative<Union>(variant_)) {
    return false;
  }
  if (const auto* c = std::get_if<PointCloud>(&variant_)) return c->size() == 1;
  return true;
}

double distance(const ProjectorSpec& spec, const Point& q) {
  require_same_dim(spec.dim(), q.dim(), "distance query");
  return std::visit(
      Overloaded{
          [&](const Sphere& s) { return std::abs(distance(q, s.center) - s.radius); },
          [&](const Ball& b) { return std::max(distance(q, b.center) - b.radius, 0.0); },
          [&](const Box& b) {
            double s = 0.0;
            for (std::size_t i = 0; i < q.dim(); ++i) {
              const double r = q[i] - std::clamp(q[i], b.min[i], b.max[i]);
              s += r * r;
            }
            return std::sqrt(s);
          },
          [&](const Halfspace& h) { return std::max(dot(h.normal, q) - h.offset, 0.0); },
          [&](const Segment& s) { return distance(segment_foot(s, q), q); },
          [&](const PointCloud& c) { return nearest_in_cloud(c, q.coords()).distance; },
          [&](const Union& u) {
            double best = kInfinity;
            for (const auto& m : u.members) best = std::min(best, distance(m, q));
            return best;
          },
      },
      spec.variant());
}

ProjectionResult project(const ProjectorSpec& spec, const Point& q, double tie_tol) {
  require_same_dim(spec.dim(), q.dim(), "projection query");
  if (!(tie_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tie_tol must be positive");

  Gathered g = project_impl(spec, q, tie_tol);

  ProjectionResult out;
  out.distance = g.best;
  for (auto& c : g.candidates) {
    const bool duplicate = std::any_of(out.candidates.begin(), out.candidates.end(),
                                       [&](const Point& kept) { return distance(kept, c) < tie_tol; });
    if (!duplicate) out.candidates.push_back(std::move(c));
  }
  out.multivalued = out.candidates.size() > 1;
  out.margin = std::isinf(g.next_level) ? kInfinity : g.next_level - g.best;
  return out;
}

bool contains(const ProjectorSpec& spec, const Point& q, double tol) {
  return distance(spec, q) <= tol;
}

}  // namespace spiralmap::euclid

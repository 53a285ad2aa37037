#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "spiralmap/cloud_kernels.hpp"
#include "spiralmap/errors.hpp"
#include "spiralmap/json_format.hpp"
#include "spiralmap/projector.hpp"
#include "spiralmap/sequence.hpp"
#include "spiralmap/spec_json.hpp"
#include "spiralmap/spiral.hpp"

namespace spiralmap::euclid {
namespace {

Point random_point(std::mt19937_64& rng, std::size_t dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> c(dim);
  for (auto& v : c) v = u(rng);
  return Point(std::move(c));
}

Point random_unit(std::mt19937_64& rng, std::size_t dim) {
  for (;;) {
    Point p = random_point(rng, dim, -1.0, 1.0);
    const double n = norm(p);
    if (n > 0.1) return (1.0 / n) * p;
  }
}

ProjectorSpec random_primitive(std::mt19937_64& rng, std::size_t dim, int kind) {
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  switch (kind) {
    case 0:
      return ProjectorSpec::sphere(random_point(rng, dim, -1, 1), pos(rng));
    case 1:
      return ProjectorSpec::ball(random_point(rng, dim, -1, 1), pos(rng));
    case 2: {
      Point lo = random_point(rng, dim, -2, 0);
      std::vector<double> hi(dim);
      for (std::size_t k = 0; k < dim; ++k) hi[k] = lo[k] + pos(rng);
      return ProjectorSpec::box(lo, Point(hi));
    }
    case 3:
      return ProjectorSpec::halfspace(random_unit(rng, dim), pos(rng) - 1.0);
    case 4:
      return ProjectorSpec::segment(random_point(rng, dim, -2, 2), random_point(rng, dim, -2, 2));
    default: {
      std::vector<Point> pts;
      for (int i = 0; i < 7; ++i) pts.push_back(random_point(rng, dim, -2, 2));
      return ProjectorSpec::points(pts);
    }
  }
}

// Independent closed forms, written directly from the set definitions.
double oracle_distance(const ProjectorSpec& spec, const Point& q) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sphere>) {
          return std::abs(norm(q - s.center) - s.radius);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return std::max(0.0, norm(q - s.center) - s.radius);
        } else if constexpr (std::is_same_v<T, Box>) {
          double acc = 0;
          for (std::size_t k = 0; k < q.dim(); ++k) {
            const double r = q[k] - std::clamp(q[k], s.min[k], s.max[k]);
            acc += r * r;
          }
          return std::sqrt(acc);
        } else if constexpr (std::is_same_v<T, Halfspace>) {
          return std::max(0.0, dot(s.normal, q) - s.offset);
        } else if constexpr (std::is_same_v<T, Segment>) {
          const Point d = s.b - s.a;
          const double dd = dot(d, d);
          const double t = dd > 0 ? std::clamp(dot(q - s.a, d) / dd, 0.0, 1.0) : 0.0;
          const double best = norm(q - (s.a + t * d));
          return best;
        } else if constexpr (std::is_same_v<T, PointCloud>) {
          double best = kInfinity;
          for (std::size_t i = 0; i < s.size(); ++i) best = std::min(best, norm(q - s.point(i)));
          return best;
        } else {
          double best = kInfinity;
          for (const auto& m : s.members) best = std::min(best, oracle_distance(m, q));
          return best;
        }
      },
      spec.variant());
}

TEST(Point, RejectsNonFiniteAndEmpty) {
  EXPECT_THROW(Point(std::vector<double>{}), Error);
  EXPECT_THROW((Point{1.0, std::nan("")}), Error);
  EXPECT_THROW((Point{std::numeric_limits<double>::infinity()}), Error);
}

TEST(Point, DimensionMismatchIsReported) {
  try {
    (void)distance(Point{1, 2}, Point{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ProjectorSpec, FactoriesValidate) {
  EXPECT_THROW(ProjectorSpec::sphere({0, 0}, 0.0), Error);
  EXPECT_THROW(ProjectorSpec::ball({0, 0}, -1.0), Error);
  EXPECT_THROW(ProjectorSpec::box({1, 0}, {0, 1}), Error);
  EXPECT_THROW(ProjectorSpec::halfspace({1, 1}, 0.0), Error);
  EXPECT_THROW(ProjectorSpec::points(std::vector<Point>{}), Error);
  EXPECT_THROW(ProjectorSpec::union_of({}), Error);
  EXPECT_THROW(ProjectorSpec::union_of({ProjectorSpec::ball({0, 0}, 1),
                                        ProjectorSpec::ball({0, 0, 0}, 1)}),
               Error);
}

TEST(ProjectorSpec, Convexity) {
  EXPECT_FALSE(ProjectorSpec::sphere({0, 0}, 1).is_convex());
  EXPECT_TRUE(ProjectorSpec::ball({0, 0}, 1).is_convex());
  EXPECT_TRUE(ProjectorSpec::box({0, 0}, {1, 1}).is_convex());
  EXPECT_TRUE(ProjectorSpec::halfspace({1, 0}, 0).is_convex());
  EXPECT_TRUE(ProjectorSpec::segment({0, 0}, {1, 1}).is_convex());
  const std::vector<Point> one{{0, 0}};
  const std::vector<Point> two{{0, 0}, {1, 0}};
  EXPECT_TRUE(ProjectorSpec::points(one).is_convex());
  EXPECT_FALSE(ProjectorSpec::points(two).is_convex());
  EXPECT_FALSE(ProjectorSpec::union_of({ProjectorSpec::ball({0, 0}, 1)}).is_convex());
}

TEST(Distance, Examples) {
  const auto s = ProjectorSpec::sphere({0, 0}, 1);
  EXPECT_DOUBLE_EQ(distance(s, {2, 0}), 1.0);
  EXPECT_NEAR(distance(s, spiral::curve(0.0)), std::exp(-0.0), 1e-15);
  const std::vector<Point> pts{{0, 0}, {3, 0}};
  EXPECT_DOUBLE_EQ(distance(ProjectorSpec::union_of({ProjectorSpec::points(pts)}), {1, 0}), 1.0);
  EXPECT_THROW((void)distance(s, {1, 2, 3}), Error);
}

TEST(Project, Examples) {
  const auto r = project(ProjectorSpec::ball({0, 0}, 1), {2, 0});
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0], (Point{1, 0}));
  EXPECT_DOUBLE_EQ(r.distance, 1.0);
  EXPECT_FALSE(r.multivalued);

  const std::vector<Point> pts{{0, 0}, {3, 0}};
  const auto t = project(ProjectorSpec::points(pts), {1.5, 0});
  ASSERT_EQ(t.candidates.size(), 2u);
  EXPECT_TRUE(t.multivalued);
  EXPECT_EQ(t.candidates[0], pts[0]);
  EXPECT_EQ(t.candidates[1], pts[1]);
}

TEST(Project, UnionOfSphereAndSpiralPicksNextIterate) {
  const auto seq = sequence::generate(200);
  std::vector<Point> tail;
  for (std::size_t i = 1; i < seq.records.size(); ++i) tail.push_back(seq.records[i].x);
  const auto u = ProjectorSpec::union_of(
      {ProjectorSpec::sphere({0, 0}, 1), ProjectorSpec::points(tail)});
  const auto r = project(u, seq.records[0].x);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0], seq.records[1].x);
  EXPECT_GT(r.margin, 0.0);
}

TEST(Project, SphereCenterIsDegenerate) {
  try {
    (void)project(ProjectorSpec::sphere({1, 1}, 2), {1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateProjection);
  }
  EXPECT_NO_THROW((void)project(ProjectorSpec::ball({1, 1}, 2), {1, 1}));
}

TEST(Project, BallAndSphereAgreeOutsideBall) {
  std::mt19937_64 rng(11);
  const auto s = ProjectorSpec::sphere({0, 0}, 1);
  const auto b = ProjectorSpec::ball({0, 0}, 1);
  for (int i = 0; i < 500; ++i) {
    Point q = random_point(rng, 2, -4, 4);
    if (norm(q) <= 1.0) continue;
    EXPECT_EQ(project(s, q).candidates, project(b, q).candidates);
  }
}

TEST(Project, UnionTieAndDeduplication) {
  const auto b1 = ProjectorSpec::box({0, 0}, {1, 1});
  const auto b2 = ProjectorSpec::box({0, 0}, {1, 1});
  const auto r = project(ProjectorSpec::union_of({b1, b2}), {2, 0.5});
  EXPECT_EQ(r.candidates.size(), 1u);
  EXPECT_FALSE(r.multivalued);

  const auto l = ProjectorSpec::ball({-2, 0}, 1);
  const auto rr = ProjectorSpec::ball({2, 0}, 1);
  const auto t = project(ProjectorSpec::union_of({l, rr}), {0, 0});
  EXPECT_EQ(t.candidates.size(), 2u);
  EXPECT_TRUE(t.multivalued);
  EXPECT_NEAR(t.distance, 1.0, 1e-15);
}

TEST(Project, UnionMarginSeparatesMembers) {
  const auto r = project(ProjectorSpec::union_of({ProjectorSpec::ball({0, 0}, 1),
                                                  ProjectorSpec::ball({5, 0}, 1)}),
                         {2, 0});
  EXPECT_NEAR(r.distance, 1.0, 1e-15);
  EXPECT_NEAR(r.margin, 1.0, 1e-15);
}

// Property: distance equals the nearest candidate, every candidate is a
// member, all candidates tie, and the closed form matches an independent one.
TEST(ProjectProperty, FuzzAllPrimitives) {
  std::mt19937_64 rng(2024);
  int cases = 0;
  for (std::size_t dim = 1; dim <= 4; ++dim) {
    for (int i = 0; i < 250; ++i, ++cases) {
      const auto spec = random_primitive(rng, dim, i % 6);
      const Point q = random_point(rng, dim, -4, 4);
      ProjectionResult r;
      try {
        r = project(spec, q);
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::DegenerateProjection);
        continue;
      }
      ASSERT_FALSE(r.candidates.empty());
      EXPECT_EQ(r.multivalued, r.candidates.size() > 1);
      const double d = distance(spec, q);
      double best = kInfinity;
      for (const auto& c : r.candidates) {
        EXPECT_TRUE(contains(spec, c, 1e-9)) << spec.type_name();
        EXPECT_NEAR(distance(q, c), d, 1e-9) << spec.type_name();
        best = std::min(best, distance(q, c));
      }
      EXPECT_NEAR(best, d, 1e-9);
      EXPECT_NEAR(r.distance, d, 1e-9);
      EXPECT_NEAR(d, oracle_distance(spec, q), 1e-12)
          << spec.type_name();
    }
  }
  EXPECT_EQ(cases, 1000);
}

TEST(ProjectProperty, FuzzUnions) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const std::size_t dim = 1 + i % 4;
    std::vector<ProjectorSpec> members;
    for (int m = 0; m < 3; ++m) members.push_back(random_primitive(rng, dim, (i + m) % 6));
    const auto u = ProjectorSpec::union_of(members);
    const Point q = random_point(rng, dim, -4, 4);
    ProjectionResult r;
    try {
      r = project(u, q);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::DegenerateProjection);
      continue;
    }
    EXPECT_NEAR(r.distance, oracle_distance(u, q), 1e-9);
    for (const auto& c : r.candidates) {
      EXPECT_TRUE(contains(u, c));
      EXPECT_NEAR(distance(q, c), r.distance, 1e-9);
    }
    for (std::size_t a = 0; a < r.candidates.size(); ++a) {
      for (std::size_t b = a + 1; b < r.candidates.size(); ++b) {
        EXPECT_GE(distance(r.candidates[a], r.candidates[b]), kDefaultTieTol);
      }
    }
  }
}

TEST(ProjectProperty, IdempotentOnConvexPrimitives) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = 1 + i % 4;
    const int kind = 1 + i % 4;  // ball, box, halfspace, segment
    const auto spec = random_primitive(rng, dim, kind);
    const Point q = random_point(rng, dim, -4, 4);
    const Point p = project(spec, q).candidates.at(0);
    const auto again = project(spec, p);
    ASSERT_EQ(again.candidates.size(), 1u);
    EXPECT_NEAR(distance(again.candidates[0], p), 0.0, 1e-12);
    EXPECT_NEAR(again.distance, 0.0, 1e-9);
  }
}

TEST(ProjectProperty, NonexpansiveOnConvexPrimitives) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = 1 + i % 4;
    const auto spec = random_primitive(rng, dim, 1 + i % 4);
    const Point p = random_point(rng, dim, -4, 4);
    const Point q = random_point(rng, dim, -4, 4);
    const Point pp = project(spec, p).candidates.at(0);
    const Point pq = project(spec, q).candidates.at(0);
    EXPECT_LE(distance(pp, pq), distance(p, q) + 1e-9);
  }
}

TEST(Geometry, LawOfCosinesAndTriangleBound) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> rad(0.0, 3.0);
  std::uniform_real_distribution<double> ang(0.0, 4 * spiral::kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    const double r = rad(rng), s = rad(rng), a = ang(rng), b = ang(rng);
    const Point u{r * std::cos(a), r * std::sin(a)};
    const Point v{s * std::cos(b), s * std::sin(b)};
    const double lhs = distance_sq(u, v);
    EXPECT_NEAR(lhs, r * r + s * s - 2 * r * s * std::cos(a - b), 1e-10);
    const double d = std::sqrt(lhs);
    EXPECT_LE(r - d, s + 1e-12);
    EXPECT_LE(s, r + d + 1e-12);
  }
}

TEST(NearestInCloud, Examples) {
  const std::vector<Point> pts{{0, 0}, {3, 0}};
  const auto r = nearest_in_cloud(pts, {1, 0});
  EXPECT_EQ(r.index, 0u);
  EXPECT_DOUBLE_EQ(r.distance, 1.0);
  EXPECT_DOUBLE_EQ(r.margin, 1.0);

  const std::vector<Point> one{{1, 1}};
  const auto s = nearest_in_cloud(one, {4, 5});
  EXPECT_EQ(s.index, 0u);
  EXPECT_DOUBLE_EQ(s.distance, 5.0);
  EXPECT_TRUE(std::isinf(s.margin));

  EXPECT_THROW((void)nearest_in_cloud(one, {0, 0}, 0), Error);
}

TEST(NearestInCloud, SpiralSuccessorWithExclusion) {
  const auto seq = sequence::generate(101);
  std::vector<Point> pts;
  for (const auto& rec : seq.records) pts.push_back(rec.x);
  const auto r = nearest_in_cloud(pts, pts[5], 5);
  EXPECT_EQ(r.index, 6u);
  EXPECT_NEAR(r.distance, seq.records[5].eps, 1e-10);
  EXPECT_GT(r.margin, 0.0);
}

TEST(NearestInCloud, LowestIndexWinsExactTies) {
  std::vector<Point> pts;
  for (int i = 0; i < 20000; ++i) pts.push_back(Point{static_cast<double>(i % 10), 0.0});
  const PointCloud cloud(pts);
  const Point q{4.0, 3.0};
  const auto par = nearest_in_cloud(cloud, q.coords());
  const auto ser = nearest_in_cloud_serial(cloud, q.coords());
  EXPECT_EQ(par.index, 4u);
  EXPECT_EQ(ser.index, 4u);
  EXPECT_EQ(par.margin, 0.0);
  EXPECT_EQ(nearest_in_cloud(cloud, q.coords(), 4).index, 14u);
}

TEST(NearestInCloud, ParallelMatchesSerialAndNaiveScan) {
  std::mt19937_64 rng(31);
  for (std::size_t dim : {2u, 3u}) {
    std::vector<Point> pts;
    for (int i = 0; i < 30000; ++i) pts.push_back(random_point(rng, dim, -1, 1));
    const PointCloud cloud(pts);
    for (int t = 0; t < 40; ++t) {
      const Point q = random_point(rng, dim, -1.5, 1.5);
      const std::optional<std::size_t> ex =
          t % 2 ? std::optional<std::size_t>(static_cast<std::size_t>(t * 701)) : std::nullopt;
      const auto par = nearest_in_cloud(cloud, q.coords(), ex);
      const auto ser = nearest_in_cloud_serial(cloud, q.coords(), ex);
      EXPECT_EQ(par.index, ser.index);
      EXPECT_EQ(par.distance, ser.distance);
      EXPECT_EQ(par.margin, ser.margin);

      double best = kInfinity, second = kInfinity;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (ex && i == *ex) continue;
        const double d = distance(pts[i], q);
        if (d < best) {
          second = best;
          best = d;
          arg = i;
        } else if (d < second) {
          second = d;
        }
      }
      EXPECT_EQ(ser.index, arg);
      EXPECT_NEAR(ser.distance, best, 1e-14);
      EXPECT_NEAR(ser.margin, second - best, 1e-12);
    }
  }
}

TEST(SpecJson, RoundTripIsExact) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    const std::size_t dim = 1 + i % 4;
    std::vector<ProjectorSpec> members;
    for (int m = 0; m < 2; ++m) members.push_back(random_primitive(rng, dim, (i + m) % 6));
    const auto spec = i % 3 == 0 ? ProjectorSpec::union_of(members) : members[0];
    const std::string text = dump_json(to_json(spec));
    const auto back = spec_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(dump_json(to_json(back)), text);
    const Point q = random_point(rng, dim, -3, 3);
    EXPECT_EQ(distance(back, q), distance(spec, q));
  }
}

TEST(SpecJson, SchemaErrorsNamePath) {
  const auto j = nlohmann::json::parse(
      R"({"type":"union","members":[{"type":"ball","center":[0,0],"radius":1},{"type":"ball","center":[0,0]}]})");
  try {
    (void)spec_from_json(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Schema);
    EXPECT_NE(std::string(e.what()).find("/members/1/radius"), std::string::npos) << e.what();
  }
  EXPECT_THROW((void)spec_from_json(nlohmann::json::parse(R"({"type":"blob"})")), Error);
}

TEST(JsonFormat, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  const double v = 0.49906627863414974;
  EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(dump_json(nlohmann::json{{"a", 0.1}, {"b", nullptr}}), R"({"a":0.10000000000000001,"b":null})");
}

}  // namespace
}  // namespace spiralmap::euclid

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spiralmap {

/// A point of R^d with finite coordinates. The dimension is fixed at
/// construction and is always at least one.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Origin of R^d.
Point zeros(std::size_t dim);

Point operator+(const Point& p, const Point& q);
Point operator-(const Point& p, const Point& q);
Point operator*(double s, const Point& p);

double dot(const Point& p, const Point& q);
double norm(const Point& p);
double distance(const Point& p, const Point& q);
double distance_sq(const Point& p, const Point& q);

/// Throws DimensionMismatch when the two dimensions differ.
void require_same_dim(std::size_t expected, std::size_t actual, const char* what);

}  // namespace spiralmap

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "spiralmap/point.hpp"
#include "spiralmap/projector.hpp"

namespace spiralmap::euclid {

struct CloudNearest {
  std::size_t index = 0;
  double distance = 0.0;
  double margin = kInfinity;  // runner-up distance minus `distance`
};

// Clouds smaller than this are scanned on the calling thread.
inline constexpr std::size_t kParallelScanThreshold = 8192;

/// Brute-force nearest point of the cloud to `q`, skipping `exclude`.
/// Exact ties go to the lowest index. Uses OpenMP for large clouds; the
/// result is bitwise identical to nearest_in_cloud_serial.
CloudNearest nearest_in_cloud(const PointCloud& cloud, std::span<const double> q,
                              std::optional<std::size_t> exclude = std::nullopt);

/// Single-threaded reference for nearest_in_cloud.
CloudNearest nearest_in_cloud_serial(const PointCloud& cloud, std::span<const double> q,
                                     std::optional<std::size_t> exclude = std::nullopt);

CloudNearest nearest_in_cloud(std::span<const Point> points, const Point& q,
                              std::optional<std::size_t> exclude = std::nullopt);

}  // namespace spiralmap::euclid

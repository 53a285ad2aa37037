#include "spiralmap/cloud_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <omp.h>

#include "spiralmap/errors.hpp"

namespace spiralmap::euclid {
namespace {

constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct Partial {
  double best_sq = kInfinity;
  std::size_t index = kNoIndex;
  double second_sq = kInfinity;
};

inline void offer(Partial& p, double d2, std::size_t i) {
  if (d2 < p.best_sq || (d2 == p.best_sq && i < p.index)) {
    p.second_sq = p.best_sq;
    p.best_sq = d2;
    p.index = i;
  } else if (d2 < p.second_sq) {
    p.second_sq = d2;
  }
}

// Order-independent: the winner is the lexicographic minimum of
// (distance, index) and the runner-up is the minimum of everything else.
inline Partial merge(const Partial& x, const Partial& y) {
  if (y.index == kNoIndex) return x;
  if (x.index == kNoIndex) return y;
  const bool y_wins = y.best_sq < x.best_sq || (y.best_sq == x.best_sq && y.index < x.index);
  const Partial& w = y_wins ? y : x;
  const Partial& l = y_wins ? x : y;
  return {w.best_sq, w.index, std::min(w.second_sq, l.best_sq)};
}

template <std::size_t Dim>
inline double row_dist_sq(const double* row, const double* q, std::size_t dim) {
  if constexpr (Dim == 2) {
    const double d0 = row[0] - q[0];
    const double d1 = row[1] - q[1];
    return d0 * d0 + d1 * d1;
  } else {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = row[k] - q[k];
      s += d * d;
    }
    return s;
  }
}

// Four interleaved partial minima keep the loop free of unpredictable
// branches; the lanes are merged lexicographically so ties still resolve to
// the lowest index.
template <std::size_t Dim>
void scan_contiguous(const double* data, std::size_t dim, const double* q, std::size_t begin,
                     std::size_t end, Partial& out) {
  constexpr std::size_t kLanes = 4;
  Partial lane[kLanes];
  std::size_t i = begin;
  for (; i + kLanes <= end; i += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double d2 = row_dist_sq<Dim>(data + (i + l) * dim, q, dim);
      const bool better = d2 < lane[l].best_sq;
      lane[l].second_sq = better ? lane[l].best_sq : std::min(lane[l].second_sq, d2);
      lane[l].index = better ? i + l : lane[l].index;
      lane[l].best_sq = better ? d2 : lane[l].best_sq;
    }
  }
  for (; i < end; ++i) offer(lane[0], row_dist_sq<Dim>(data + i * dim, q, dim), i);
  for (const auto& l : lane) out = merge(out, l);
}

void scan_range(const PointCloud& cloud, const double* q, std::size_t exclude, std::size_t begin,
                std::size_t end, Partial& out) {
  const double* data = cloud.data().data();
  const std::size_t dim = cloud.dim();
  const auto scan = [&](std::size_t b, std::size_t e) {
    if (b >= e) return;
    if (dim == 2) {
      scan_contiguous<2>(data, dim, q, b, e, out);
    } else {
      scan_contiguous<0>(data, dim, q, b, e, out);
    }
  };
  if (exclude >= begin && exclude < end) {
    scan(begin, exclude);
    scan(exclude + 1, end);
  } else {
    scan(begin, end);
  }
}

CloudNearest finish(const Partial& p) {
  if (p.index == kNoIndex) {
    throw Error(ErrorCode::InvalidArgument, "nearest_in_cloud: no points left after exclusion");
  }
  CloudNearest r;
  r.index = p.index;
  r.distance = std::sqrt(p.best_sq);
  r.margin = std::isinf(p.second_sq) ? kInfinity : std::sqrt(p.second_sq) - r.distance;
  return r;
}

void check_query(const PointCloud& cloud, std::span<const double> q) {
  require_same_dim(cloud.dim(), q.size(), "nearest_in_cloud");
}

}  // namespace

CloudNearest nearest_in_cloud_serial(const PointCloud& cloud, std::span<const double> q,
                                     std::optional<std::size_t> exclude) {
  check_query(cloud, q);
  Partial p;
  scan_range(cloud, q.data(), exclude.value_or(kNoIndex), 0, cloud.size(), p);
  return finish(p);
}

CloudNearest nearest_in_cloud(const PointCloud& cloud, std::span<const double> q,
                              std::optional<std::size_t> exclude) {
  check_query(cloud, q);
  const std::size_t n = cloud.size();
  if (n < kParallelScanThreshold) return nearest_in_cloud_serial(cloud, q, exclude);

  const std::size_t skip = exclude.value_or(kNoIndex);
  Partial result;
#pragma omp parallel
  {
    const auto threads = static_cast<std::size_t>(omp_get_num_threads());
    const auto id = static_cast<std::size_t>(omp_get_thread_num());
    const std::size_t chunk = (n + threads - 1) / threads;
    const std::size_t begin = std::min(n, id * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    Partial local;
    scan_range(cloud, q.data(), skip, begin, end, local);
#pragma omp critical(spiralmap_cloud_merge)
    result = merge(result, local);
  }
  return finish(result);
}

CloudNearest nearest_in_cloud(std::span<const Point> points, const Point& q,
                              std::optional<std::size_t> exclude) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "nearest_in_cloud: empty point list");
  }
  return nearest_in_cloud(PointCloud(points), q.coords(), exclude);
}

}  // namespace spiralmap::euclid

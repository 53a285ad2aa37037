#pragma once

#include <span>

namespace spiralmap {

/// Largest gap between consecutive angles on the circle, after reducing
/// each angle mod 2 pi. A single distinct angle leaves a gap of 2 pi.
double max_circular_gap(std::span<const double> angles);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace spiralmap

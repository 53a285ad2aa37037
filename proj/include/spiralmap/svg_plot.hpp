#pragma once

#include <cstddef>
#include <string>

#include "spiralmap/sequence.hpp"

namespace spiralmap::plot {

inline constexpr std::size_t kCurveSamples = 2000;

/// Standalone SVG of the spiral over [0, alpha_last], the unit circle, one
/// marker per record (class "iterate", data-n = index) and a circle of
/// radius eps_k around each x_k. Geometry is written in data coordinates
/// with 17 significant digits under a single y-flipping transform, so marker
/// centers equal the stored points exactly. Requires >= 2 records.
std::string render_spiral_svg(const sequence::SequenceReport& report,
                              std::size_t curve_samples = kCurveSamples);

}  // namespace spiralmap::plot

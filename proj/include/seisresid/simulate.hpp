#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "seisresid/catalog.hpp"
#include "seisresid/intensity.hpp"
#include "seisresid/random.hpp"
#include "seisresid/region.hpp"

namespace seisresid {

inline constexpr int kDefaultSimulations = 1000;

// Per-pixel Poisson counts (pixel-indexed; zero on masked pixels). These are
// exactly the counts simulate_catalog() places for the same stream.
std::vector<std::uint32_t> simulate_counts(const IntensityField& field, SeededStream stream);

// Poisson(value * dx * dy) events per active pixel, uniform within the pixel,
// times uniform over the field window (or a unit day when unbounded). Events
// carry depth 0 and magnitude = field.mag_min().
Catalog simulate_catalog(const IntensityField& field, SeededStream stream);

enum class ComplementMode { superpose, superthin };

// Poisson points at rate (level - value) per pixel. superpose requires
// level >= sup; superthin uses max(0, level - value).
std::vector<Point> simulate_cox_complement(const IntensityField& field, double level,
                                           ComplementMode mode, SeededStream stream);
// Per-pixel level (pixel-indexed).
std::vector<Point> simulate_cox_complement(const IntensityField& field,
                                           std::span<const double> level, ComplementMode mode,
                                           SeededStream stream);

// Poisson(rate * area) points, uniform over the region by rejection against
// its bounding box.
std::vector<Point> simulate_homogeneous(const Region& region, double rate, SeededStream stream);

}  // namespace seisresid

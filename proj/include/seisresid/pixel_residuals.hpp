#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seisresid/catalog.hpp"
#include "seisresid/grid.hpp"
#include "seisresid/intensity.hpp"

namespace seisresid {

enum class ResidualKind { raw, pearson, deviance };
enum class PixelFlag { ok, skipped, pos_inf, neg_inf };

struct PixelResidual {
  std::size_t pixel = 0;
  double value = 0.0;
  PixelFlag flag = PixelFlag::ok;
};

struct SkippedPixel {
  std::size_t pixel = 0;
  std::string reason;
};

// One entry per active pixel, in pixel order. Skipped pixels also appear in
// `values` (flag = skipped, value NaN) so maps stay aligned with the grid.
struct PixelResidualMap {
  Grid grid;
  ResidualKind kind = ResidualKind::raw;
  std::vector<PixelResidual> values;
  std::vector<SkippedPixel> skipped;

  const PixelResidual* find(std::size_t pixel) const;
  // Largest finite value among ok pixels (NaN if none).
  double max_value() const;
};

// R = observed - expected count per pixel.
PixelResidualMap raw_residuals(const IntensityField& field, const Catalog& catalog);

// Per pixel: count / sqrt(v) - sqrt(v) * dx * dy, v the pixel rate. Zero-rate
// pixels are skipped.
PixelResidualMap pearson_residuals(const IntensityField& field, const Catalog& catalog);

// Per pixel: [n log v1 - L1] - [n log v2 - L2]. Positive favours field_1.
// Masks are intersected; pixels active in only one field are skipped.
PixelResidualMap deviance_residuals(const IntensityField& field_1, const IntensityField& field_2,
                                    const Catalog& catalog);

// Sum of a deviance map; an infinite entry propagates.
double lr_score(const PixelResidualMap& map);

}  // namespace seisresid

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seisresid/forecast.hpp"
#include "seisresid/grid.hpp"
#include "seisresid/time.hpp"

namespace seisresid {

struct Extremes {
  double infimum;   // b
  double supremum;  // c
};

/// Piecewise-constant, time-integrated rate per unit area over active pixels.
///
/// Values are expected events per square degree over the field's window.
/// Stored as base rates times a window fraction, so successive window scalings
/// compose exactly. Masked pixels have no value.
class IntensityField {
 public:
  IntensityField() = default;
  IntensityField(Grid grid, std::vector<double> base_rate, TimeWindow window = {},
                 double mag_min = 0.0, double window_fraction = 1.0);

  static IntensityField uniform(const Grid& grid, double value);

  const Grid& grid() const { return grid_; }
  const TimeWindow& window() const { return window_; }
  double mag_min() const { return mag_min_; }
  double window_fraction() const { return window_fraction_; }

  // Rate per unit area of an active pixel.
  double value(std::size_t pixel) const { return base_[pixel] * window_fraction_; }
  bool is_zero(std::size_t pixel) const { return base_[pixel] == 0.0; }

  // nullopt means outside the region (bounds or masked pixel), never zero.
  std::optional<double> evaluate(double lon, double lat) const;

  // Expected count in one pixel: value * dx * dy.
  double pixel_integral(std::size_t pixel) const;
  double integrate() const;
  double integrate(std::span<const std::size_t> pixels) const;

  Extremes extremes() const;

  IntensityField scaled(double fraction) const;

 private:
  Grid grid_;
  std::vector<double> base_;
  TimeWindow window_;
  double mag_min_ = 0.0;
  double window_fraction_ = 1.0;
};

// Sums bins with mag_lo >= mag_min per pixel and divides by pixel area.
IntensityField aggregate(const Forecast& forecast, double mag_min);

// Multiplies every value by fraction in (0, 1] (elapsed share of the window).
IntensityField scale_window(const IntensityField& field, double fraction);

}  // namespace seisresid

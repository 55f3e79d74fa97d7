#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seisresid/grid.hpp"
#include "seisresid/time.hpp"

namespace seisresid {

struct ForecastBin {
  std::size_t pixel = 0;
  double mag_lo = 0.0;
  double mag_hi = 0.0;
  double rate = 0.0;  // expected events over the forecast window
  double depth_lo = 0.0;
  double depth_hi = 0.0;
};

/// Gridded rate forecast: expected counts per (pixel, magnitude bin).
///
/// Bins are kept sorted by (pixel, mag_lo); every bin sits on an active pixel
/// and (pixel, magnitude bin) keys are unique.
class Forecast {
 public:
  Forecast() = default;
  Forecast(Grid grid, std::vector<ForecastBin> bins, TimeWindow window = TimeWindow::unbounded());

  const Grid& grid() const { return grid_; }
  const std::vector<ForecastBin>& bins() const { return bins_; }
  const TimeWindow& window() const { return window_; }

  bool empty() const { return bins_.empty(); }
  double min_magnitude() const;  // smallest mag_lo; +inf when empty
  double max_magnitude() const;  // largest mag_hi; -inf when empty
  double total_rate() const;
  // Per-pixel rate summed over bins with mag_lo >= mag_min (pixel-indexed).
  std::vector<double> pixel_rates(double mag_min = -std::numeric_limits<double>::infinity()) const;
  // Pixels (active) carrying at least one bin.
  std::vector<std::uint8_t> forecast_pixels() const;

 private:
  Grid grid_;
  std::vector<ForecastBin> bins_;
  TimeWindow window_;
};

// Ten whitespace-separated columns per row:
//   lon_min lon_max lat_min lat_max depth_min depth_max mag_lo mag_hi rate mask
// '#' lines are comments. Two comment directives are honoured:
//   # window: <iso8601> <iso8601>
//   # grid: lon_min lon_max lat_min lat_max dx dy
Forecast parse_forecast(std::string_view text);
Forecast load_forecast(const std::string& path);
std::string serialize_forecast(const Forecast& forecast);

// Per-pixel sum of forecasts on one grid (daily files -> one window).
Forecast sum_forecasts(const std::vector<Forecast>& parts);

struct SpecialRegion {
  double lon_lo, lon_hi, lat_lo, lat_hi;
  double b_value;
};

struct GutenbergRichter {
  double b_value = 1.0;
  // Corner magnitude of the exponential taper; +inf gives the pure power law.
  double corner_magnitude = std::numeric_limits<double>::infinity();
  std::vector<SpecialRegion> special_regions;  // pixel centre inside -> region's b
};

struct Extrapolation {
  Forecast forecast;
  std::optional<std::string> warning;
};

// Scalar seismic moment (N m) from moment magnitude.
double moment_from_magnitude(double magnitude);

// S(m) / S(m_ref) for the tapered Gutenberg-Richter survival function in
// moment space, S(M) ~ M^(-beta) exp(-M / M_corner), beta = 2b/3.
double tapered_gr_ratio(double magnitude, double reference_magnitude, double b_value,
                        double corner_magnitude);

// Prepends magnitude bins from new_mag_min to the forecast's lowest bound.
// Rates at or above the old bound are untouched.
Extrapolation gr_extrapolate(const Forecast& forecast, double new_mag_min,
                             const GutenbergRichter& law);

}  // namespace seisresid

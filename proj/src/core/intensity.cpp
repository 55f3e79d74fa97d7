#include "seisresid/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seisresid/error.hpp"

namespace seisresid {

IntensityField::IntensityField(Grid grid, std::vector<double> base_rate, TimeWindow window,
                               double mag_min, double window_fraction)
    : grid_(std::move(grid)), base_(std::move(base_rate)), window_(window), mag_min_(mag_min),
      window_fraction_(window_fraction) {
  if (base_.size() != grid_.pixel_count())
    throw Error(ErrorKind::validation, "intensity values do not match the grid");
  if (!(window_fraction_ > 0.0 && window_fraction_ <= 1.0))
    throw Error(ErrorKind::validation, "window fraction must lie in (0, 1]");
  for (std::size_t p = 0; p < base_.size(); ++p) {
    if (!grid_.is_active(p)) {
      base_[p] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (!(base_[p] >= 0.0) || !std::isfinite(base_[p]))
      throw Error(ErrorKind::validation, "intensity must be finite and non-negative on active pixels");
  }
}

IntensityField IntensityField::uniform(const Grid& grid, double value) {
  return IntensityField(grid, std::vector<double>(grid.pixel_count(), value));
}

std::optional<double> IntensityField::evaluate(double lon, double lat) const {
  const auto p = grid_.locate_active(lon, lat);
  if (!p) return std::nullopt;
  return value(*p);
}

double IntensityField::pixel_integral(std::size_t pixel) const {
  return value(pixel) * grid_.pixel_area();
}

double IntensityField::integrate() const {
  double s = 0.0;
  for (std::size_t p = 0; p < base_.size(); ++p)
    if (grid_.is_active(p)) s += pixel_integral(p);
  return s;
}

double IntensityField::integrate(std::span<const std::size_t> pixels) const {
  double s = 0.0;
  for (auto p : pixels) {
    if (!grid_.is_active(p))
      throw Error(ErrorKind::domain, "pixel " + std::to_string(p) + " is outside the region");
    s += pixel_integral(p);
  }
  return s;
}

Extremes IntensityField::extremes() const {
  if (grid_.active_count() == 0) throw Error(ErrorKind::domain, "field has no active pixels");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t p = 0; p < base_.size(); ++p) {
    if (!grid_.is_active(p)) continue;
    lo = std::min(lo, value(p));
    hi = std::max(hi, value(p));
  }
  return {lo, hi};
}

IntensityField IntensityField::scaled(double fraction) const {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorKind::validation, "window fraction must lie in (0, 1]");
  IntensityField out = *this;
  out.window_fraction_ = window_fraction_ * fraction;
  return out;
}

IntensityField aggregate(const Forecast& forecast, double mag_min) {
  if (!forecast.empty() && mag_min > forecast.max_magnitude())
    throw Error(ErrorKind::domain, "magnitude threshold lies above every forecast bin");
  const Grid& g = forecast.grid();
  auto rates = forecast.pixel_rates(mag_min);
  for (auto& r : rates) r /= g.pixel_area();
  return IntensityField(g, std::move(rates), forecast.window(), mag_min);
}

IntensityField scale_window(const IntensityField& field, double fraction) {
  return field.scaled(fraction);
}

}  // namespace seisresid

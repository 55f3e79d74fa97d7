#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace seisresid {

struct PixelBounds {
  double lon_lo, lon_hi, lat_lo, lat_hi;
};

struct LonLat {
  double lon, lat;
};

/// Rectangular lon/lat pixelization with an active-pixel mask.
///
/// Pixel p = iy * nx + ix. Membership is half-open [lo, hi) on both axes with
/// the last column/row closed, so every in-bounds point belongs to exactly one
/// pixel. Coordinates are snapped to edges within 1e-9 pixel widths so that
/// decimal-degree inputs like -117.9 land on the pixel they name.
class Grid {
 public:
  Grid() = default;  // empty: no pixels, zero area
  Grid(double lon_min, double lat_min, double dx, double dy, int nx, int ny,
       std::vector<std::uint8_t> active);

  // All pixels active. nx/ny derived as round(extent / pixel size).
  static Grid from_bounds(double lon_min, double lon_max, double lat_min, double lat_max,
                          double dx, double dy);

  bool empty() const { return nx_ == 0 || ny_ == 0; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double lon_min() const { return lon_min_; }
  double lat_min() const { return lat_min_; }
  double lon_max() const { return lon_edge(nx_); }
  double lat_max() const { return lat_edge(ny_); }
  double lon_edge(int ix) const { return lon_min_ + ix * dx_; }
  double lat_edge(int iy) const { return lat_min_ + iy * dy_; }

  std::size_t pixel_count() const { return active_.size(); }
  std::size_t active_count() const { return active_count_; }
  double pixel_area() const { return dx_ * dy_; }
  // Area of the observation region: active pixels only.
  double area() const { return static_cast<double>(active_count_) * pixel_area(); }

  bool is_active(std::size_t p) const { return p < active_.size() && active_[p] != 0; }
  const std::vector<std::uint8_t>& mask() const { return active_; }
  std::vector<std::size_t> active_pixels() const;

  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
  }
  int ix(std::size_t p) const { return static_cast<int>(p % static_cast<std::size_t>(nx_)); }
  int iy(std::size_t p) const { return static_cast<int>(p / static_cast<std::size_t>(nx_)); }

  PixelBounds bounds(std::size_t p) const;
  LonLat center(std::size_t p) const;

  // Pixel owning (lon, lat) regardless of mask; nullopt outside the bounds.
  std::optional<std::size_t> locate(double lon, double lat) const;
  // As locate(), but nullopt for masked pixels.
  std::optional<std::size_t> locate_active(double lon, double lat) const;

  Grid with_mask(std::vector<std::uint8_t> active) const;
  // Same origin, pixel size and shape (masks may differ).
  bool same_layout(const Grid& other) const;

 private:
  std::optional<int> axis_index(double v, double lo, double step, int n) const;

  double lon_min_ = 0.0;
  double lat_min_ = 0.0;
  double dx_ = 0.0;
  double dy_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint8_t> active_;
  std::size_t active_count_ = 0;
};

}  // namespace seisresid

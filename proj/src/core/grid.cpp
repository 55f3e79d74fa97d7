#include "seisresid/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seisresid/error.hpp"

namespace seisresid {

namespace {
constexpr double kEdgeSnap = 1e-9;  // in pixel widths
}

Grid::Grid(double lon_min, double lat_min, double dx, double dy, int nx, int ny,
           std::vector<std::uint8_t> active)
    : lon_min_(lon_min), lat_min_(lat_min), dx_(dx), dy_(dy), nx_(nx), ny_(ny),
      active_(std::move(active)) {
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
    throw Error(ErrorKind::validation, "grid pixel size must be positive and finite");
  if (nx < 1 || ny < 1) throw Error(ErrorKind::validation, "grid must have at least one pixel per axis");
  if (active_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
    throw Error(ErrorKind::validation, "grid mask size does not match nx*ny");
  for (auto a : active_) active_count_ += a != 0 ? 1 : 0;
}

Grid Grid::from_bounds(double lon_min, double lon_max, double lat_min, double lat_max,
                       double dx, double dy) {
  if (!(dx > 0.0) || !(dy > 0.0))
    throw Error(ErrorKind::validation, "grid pixel size must be positive");
  const int nx = static_cast<int>(std::lround((lon_max - lon_min) / dx));
  const int ny = static_cast<int>(std::lround((lat_max - lat_min) / dy));
  if (nx < 1 || ny < 1) throw Error(ErrorKind::validation, "grid bounds smaller than one pixel");
  return Grid(lon_min, lat_min, dx, dy, nx, ny,
              std::vector<std::uint8_t>(static_cast<std::size_t>(nx) * ny, 1));
}

std::vector<std::size_t> Grid::active_pixels() const {
  std::vector<std::size_t> out;
  out.reserve(active_count_);
  for (std::size_t p = 0; p < active_.size(); ++p)
    if (active_[p]) out.push_back(p);
  return out;
}

PixelBounds Grid::bounds(std::size_t p) const {
  const int i = ix(p), j = iy(p);
  return {lon_edge(i), lon_edge(i + 1), lat_edge(j), lat_edge(j + 1)};
}

LonLat Grid::center(std::size_t p) const {
  const int i = ix(p), j = iy(p);
  return {lon_min_ + (i + 0.5) * dx_, lat_min_ + (j + 0.5) * dy_};
}

std::optional<int> Grid::axis_index(double v, double lo, double step, int n) const {
  if (!std::isfinite(v)) return std::nullopt;
  const double t = (v - lo) / step;
  if (t < -kEdgeSnap) return std::nullopt;
  const double f = std::floor(t + kEdgeSnap);
  if (f < static_cast<double>(n)) return static_cast<int>(std::max(0.0, f));
  // Last pixel is closed on its upper edge.
  if (t <= static_cast<double>(n) + kEdgeSnap) return n - 1;
  return std::nullopt;
}

std::optional<std::size_t> Grid::locate(double lon, double lat) const {
  if (empty()) return std::nullopt;
  const auto i = axis_index(lon, lon_min_, dx_, nx_);
  if (!i) return std::nullopt;
  const auto j = axis_index(lat, lat_min_, dy_, ny_);
  if (!j) return std::nullopt;
  return index(*i, *j);
}

std::optional<std::size_t> Grid::locate_active(double lon, double lat) const {
  auto p = locate(lon, lat);
  if (p && !active_[*p]) return std::nullopt;
  return p;
}

Grid Grid::with_mask(std::vector<std::uint8_t> active) const {
  if (empty()) throw Error(ErrorKind::domain, "cannot re-mask an empty grid");
  return Grid(lon_min_, lat_min_, dx_, dy_, nx_, ny_, std::move(active));
}

bool Grid::same_layout(const Grid& other) const {
  auto close = [](double a, double b, double scale) {
    return std::abs(a - b) <= 1e-9 * scale;
  };
  return nx_ == other.nx_ && ny_ == other.ny_ && close(dx_, other.dx_, dx_) &&
         close(dy_, other.dy_, dy_) && close(lon_min_, other.lon_min_, dx_) &&
         close(lat_min_, other.lat_min_, dy_);
}

}  // namespace seisresid

#include "seisresid/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seisresid/error.hpp"

namespace seisresid {

namespace {
constexpr int kArcSamples = 360;
constexpr int kIndexCells = 64;
}  // namespace

Region Region::from_grid(const Grid& grid) {
  std::vector<Rect> rects;
  for (int iy = 0; iy < grid.ny(); ++iy) {
    int ix = 0;
    while (ix < grid.nx()) {
      if (!grid.is_active(grid.index(ix, iy))) {
        ++ix;
        continue;
      }
      int end = ix;
      while (end < grid.nx() && grid.is_active(grid.index(end, iy))) ++end;
      rects.push_back({grid.lon_edge(ix), grid.lon_edge(end), grid.lat_edge(iy), grid.lat_edge(iy + 1)});
      ix = end;
    }
  }
  return from_rects(std::move(rects));
}

Region Region::from_rects(std::vector<Rect> rects) {
  Region r;
  for (const auto& rc : rects)
    if (rc.x_hi > rc.x_lo && rc.y_hi > rc.y_lo) r.rects_.push_back(rc);
  r.build_index();
  return r;
}

void Region::build_index() {
  area_ = 0.0;
  cell_rects_.clear();
  if (rects_.empty()) {
    is_rectangle_ = false;
    cells_x_ = cells_y_ = 0;
    return;
  }
  bounds_ = rects_.front();
  for (const auto& rc : rects_) {
    area_ += rc.area();
    bounds_.x_lo = std::min(bounds_.x_lo, rc.x_lo);
    bounds_.x_hi = std::max(bounds_.x_hi, rc.x_hi);
    bounds_.y_lo = std::min(bounds_.y_lo, rc.y_lo);
    bounds_.y_hi = std::max(bounds_.y_hi, rc.y_hi);
  }
  is_rectangle_ = std::abs(area_ - bounds_.area()) <= 1e-12 * bounds_.area();

  cells_x_ = cells_y_ = kIndexCells;
  cell_rects_.assign(static_cast<std::size_t>(cells_x_) * cells_y_, {});
  const double wx = (bounds_.x_hi - bounds_.x_lo) / cells_x_;
  const double wy = (bounds_.y_hi - bounds_.y_lo) / cells_y_;
  auto cx = [&](double x) {
    return std::clamp(static_cast<int>(std::floor((x - bounds_.x_lo) / wx)), 0, cells_x_ - 1);
  };
  auto cy = [&](double y) {
    return std::clamp(static_cast<int>(std::floor((y - bounds_.y_lo) / wy)), 0, cells_y_ - 1);
  };
  for (std::size_t k = 0; k < rects_.size(); ++k) {
    const auto& rc = rects_[k];
    for (int j = cy(rc.y_lo); j <= cy(rc.y_hi); ++j)
      for (int i = cx(rc.x_lo); i <= cx(rc.x_hi); ++i)
        cell_rects_[static_cast<std::size_t>(j) * cells_x_ + i].push_back(k);
  }
}

bool Region::contains(double x, double y) const {
  if (rects_.empty()) return false;
  if (x < bounds_.x_lo || x > bounds_.x_hi || y < bounds_.y_lo || y > bounds_.y_hi) return false;
  if (is_rectangle_) return true;
  const double wx = (bounds_.x_hi - bounds_.x_lo) / cells_x_;
  const double wy = (bounds_.y_hi - bounds_.y_lo) / cells_y_;
  const int i = std::clamp(static_cast<int>(std::floor((x - bounds_.x_lo) / wx)), 0, cells_x_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((y - bounds_.y_lo) / wy)), 0, cells_y_ - 1);
  for (auto k : cell_rects_[static_cast<std::size_t>(j) * cells_x_ + i]) {
    const auto& rc = rects_[k];
    if (x >= rc.x_lo && x <= rc.x_hi && y >= rc.y_lo && y <= rc.y_hi) return true;
  }
  return false;
}

double Region::circle_fraction_inside(double cx, double cy, double r) const {
  if (!(r > 0.0)) return 1.0;
  if (is_rectangle_) return circle_fraction_in_rect(bounds_, cx, cy, r);
  int inside = 0;
  for (int k = 0; k < kArcSamples; ++k) {
    const double theta = (k + 0.5) * (2.0 * std::numbers::pi / kArcSamples);
    if (contains(cx + r * std::cos(theta), cy + r * std::sin(theta))) ++inside;
  }
  return static_cast<double>(inside) / kArcSamples;
}

Region Region::translated(double dx, double dy) const {
  std::vector<Rect> moved = rects_;
  for (auto& rc : moved) {
    rc.x_lo += dx;
    rc.x_hi += dx;
    rc.y_lo += dy;
    rc.y_hi += dy;
  }
  return from_rects(std::move(moved));
}

double circle_fraction_in_rect(const Rect& rect, double cx, double cy, double r) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  // Arc outside each side: centred on the outward normal, half-width acos(d/r).
  struct Arc {
    double lo, hi;
  };
  std::vector<Arc> arcs;
  const double dist[4] = {rect.x_hi - cx, rect.y_hi - cy, cx - rect.x_lo, cy - rect.y_lo};
  const double normal[4] = {0.0, std::numbers::pi / 2, std::numbers::pi, 3 * std::numbers::pi / 2};
  for (int s = 0; s < 4; ++s) {
    if (dist[s] >= r) continue;
    const double half = dist[s] <= -r ? std::numbers::pi : std::acos(dist[s] / r);
    double lo = normal[s] - half, hi = normal[s] + half;
    // Normalise into [0, 2pi), splitting wrapped arcs.
    if (lo < 0.0) {
      arcs.push_back({lo + two_pi, two_pi});
      arcs.push_back({0.0, hi});
    } else if (hi > two_pi) {
      arcs.push_back({lo, two_pi});
      arcs.push_back({0.0, hi - two_pi});
    } else {
      arcs.push_back({lo, hi});
    }
  }
  if (arcs.empty()) return 1.0;
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
  double outside = 0.0, cur_lo = arcs.front().lo, cur_hi = arcs.front().hi;
  for (std::size_t k = 1; k < arcs.size(); ++k) {
    if (arcs[k].lo <= cur_hi) {
      cur_hi = std::max(cur_hi, arcs[k].hi);
    } else {
      outside += cur_hi - cur_lo;
      cur_lo = arcs[k].lo;
      cur_hi = arcs[k].hi;
    }
  }
  outside += cur_hi - cur_lo;
  return std::clamp(1.0 - outside / two_pi, 0.0, 1.0);
}

}  // namespace seisresid

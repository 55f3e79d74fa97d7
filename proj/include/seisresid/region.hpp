#pragma once

#include <cstddef>
#include <vector>

#include "seisresid/grid.hpp"

namespace seisresid {

struct Rect {
  double x_lo, x_hi, y_lo, y_hi;
  double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
};

struct Point {
  double x, y;
};

/// Observation window as a union of disjoint axis-aligned rectangles.
///
/// Built either from a grid's active pixels (merged into row runs) or from
/// rescaled-space strips. Containment is closed on rectangle edges.
class Region {
 public:
  Region() = default;
  static Region from_grid(const Grid& grid);
  static Region from_rects(std::vector<Rect> rects);

  const std::vector<Rect>& rects() const { return rects_; }
  double area() const { return area_; }
  const Rect& bounds() const { return bounds_; }
  bool empty() const { return rects_.empty(); }
  // True when the union fills its bounding box.
  bool is_rectangle() const { return is_rectangle_; }

  bool contains(double x, double y) const;

  // Fraction of the circle of radius r centred at (cx, cy) whose
  // circumference lies inside the region. Exact for rectangles; 360-point arc
  // sampling otherwise.
  double circle_fraction_inside(double cx, double cy, double r) const;

  Region translated(double dx, double dy) const;

 private:
  void build_index();

  std::vector<Rect> rects_;
  Rect bounds_{0, 0, 0, 0};
  double area_ = 0.0;
  bool is_rectangle_ = false;
  int cells_x_ = 0, cells_y_ = 0;
  std::vector<std::vector<std::size_t>> cell_rects_;
};

// Circumference fraction of a circle inside an axis-aligned rectangle.
double circle_fraction_in_rect(const Rect& rect, double cx, double cy, double r);

}  // namespace seisresid

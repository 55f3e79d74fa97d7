#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "seisresid/intensity.hpp"
#include "seisresid/random.hpp"
#include "seisresid/region.hpp"

namespace seisresid {

// Strictly increasing, positive distances (degrees).
class RadiiGrid {
 public:
  RadiiGrid() = default;
  explicit RadiiGrid(std::vector<double> values);
  // step, 2*step, ... up to rmax (inclusive within half a step).
  static RadiiGrid linear(double step, double rmax);
  // 0.01 to 0.7 in steps of 0.01.
  static RadiiGrid default_grid() { return linear(0.01, 0.7); }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

enum class EdgeCorrection { none, isotropic };
enum class KKind { plain, weighted };
enum class BandSource { none, analytic, envelope };

struct Band {
  double lower, upper;
};

struct KCurve {
  RadiiGrid radii;
  std::vector<double> k;
  std::vector<double> centered_l;  // sqrt(K / pi) - r, filled by centered_l()
  std::vector<double> variance;    // null variance per radius, when known
  std::vector<Band> bands;         // on the K scale, when computed
  KKind kind = KKind::plain;
  BandSource band_source = BandSource::none;
  // Summation convention of the estimator, recorded for output metadata.
  std::string convention;

  // Bands mapped through sqrt(. / pi) - r (negative K maps to -r).
  std::vector<Band> centered_bands() const;
};

// Calls fn(i, j, d) once per unordered pair i < j with distance d <= rmax.
// Uses a uniform hash grid with cell size rmax; pairs arrive in a fixed order.
void for_each_close_pair(std::span<const Point> points, double rmax,
                         const std::function<void(std::size_t, std::size_t, double)>& fn);

// K(r) = A N^-2 sum_{i<j, d<r} s(x_i, x_j); s = 1 or the inverse circumference
// fraction of the circle centred at x_i through x_j.
KCurve ripley_k(std::span<const Point> points, const Region& region, const RadiiGrid& radii,
                EdgeCorrection edge = EdgeCorrection::none);

// Fills centered_l from k.
KCurve centered_l(KCurve curve);

// K_W(r) = b / int(lambda0) * sum_i lambda0(x_i)^-1 sum_{j != i} lambda0(x_j)^-1 1{d <= r},
// b = min lambda0 over the field's active pixels.
KCurve weighted_k(std::span<const Point> points, const IntensityField& null_field,
                  const RadiiGrid& radii, EdgeCorrection edge = EdgeCorrection::none);

// Weighted K against a constant null rate on an arbitrary region.
KCurve weighted_k(std::span<const Point> points, const Region& region, double null_rate,
                  const RadiiGrid& radii, EdgeCorrection edge = EdgeCorrection::none);

// pi r^2 -/+ z(level) sqrt(2 pi r^2 A) / total_intensity, on the K scale.
std::vector<Band> wk_confidence_bands(const RadiiGrid& radii, double area, double total_intensity,
                                      double level = 0.95);

// Null variance 2 pi r^2 A / total^2 per radius.
std::vector<double> wk_null_variance(const RadiiGrid& radii, double area, double total_intensity);

// Per-radius middle-`level` range of centered weighted L over n_sims
// homogeneous Poisson patterns at `rate` on `region`, on the centered-L scale.
std::vector<Band> envelope_bands(const Region& region, double rate, const RadiiGrid& radii,
                                 int n_sims, SeededStream stream, double level = 0.95,
                                 EdgeCorrection edge = EdgeCorrection::none);

}  // namespace seisresid

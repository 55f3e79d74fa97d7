#include "seisresid/second_order.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "seisresid/error.hpp"
#include "seisresid/simulate.hpp"

namespace seisresid {

namespace {

double dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double centered(double k, double r) { return std::sqrt(std::max(0.0, k) / std::numbers::pi) - r; }

// Prefix-sums per-bin contributions into a cumulative curve.
std::vector<double> cumulate(std::vector<double> bins, std::size_t n) {
  std::vector<double> out(n, 0.0);
  double run = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    run += bins[k];
    out[k] = run;
  }
  return out;
}

// Ordered-pair weighted sum: sum_i w_i sum_{j != i} w_j 1{d <= r} s_i(d).
std::vector<double> ordered_pair_sums(std::span<const Point> points, std::span<const double> w,
                                      const Region& region, const RadiiGrid& radii,
                                      EdgeCorrection edge) {
  const auto r = radii.values();
  std::vector<double> bins(r.size(), 0.0);
  for_each_close_pair(points, radii.max(), [&](std::size_t i, std::size_t j, double d) {
    const auto k = static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), d) - r.begin());
    if (k >= r.size()) return;
    double sij = 1.0, sji = 1.0;
    if (edge == EdgeCorrection::isotropic) {
      sij = 1.0 / region.circle_fraction_inside(points[i].x, points[i].y, d);
      sji = 1.0 / region.circle_fraction_inside(points[j].x, points[j].y, d);
    }
    bins[k] += w[i] * w[j] * sij + w[j] * w[i] * sji;
  });
  return cumulate(std::move(bins), r.size());
}

}  // namespace

RadiiGrid::RadiiGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::validation, "radii grid is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
      throw Error(ErrorKind::validation, "radii must be positive and finite");
    if (i > 0 && !(values_[i] > values_[i - 1]))
      throw Error(ErrorKind::validation, "radii must be strictly increasing");
  }
}

RadiiGrid RadiiGrid::linear(double step, double rmax) {
  if (!(step > 0.0) || !(rmax >= step))
    throw Error(ErrorKind::validation, "radii step must be positive and not exceed rmax");
  const auto n = static_cast<std::size_t>(std::floor(rmax / step + 0.5));
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<double>(k + 1) * step;
  return RadiiGrid(std::move(v));
}

std::vector<Band> KCurve::centered_bands() const {
  std::vector<Band> out;
  out.reserve(bands.size());
  for (std::size_t i = 0; i < bands.size(); ++i)
    out.push_back({centered(bands[i].lower, radii[i]), centered(bands[i].upper, radii[i])});
  return out;
}

void for_each_close_pair(std::span<const Point> points, double rmax,
                         const std::function<void(std::size_t, std::size_t, double)>& fn) {
  const std::size_t n = points.size();
  if (n < 2) return;
  double min_x = points[0].x, min_y = points[0].y;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
  }
  const double cell = rmax * (1.0 + 1e-9);
  auto cell_of = [&](const Point& p) {
    return std::pair<std::int64_t, std::int64_t>{
        static_cast<std::int64_t>(std::floor((p.x - min_x) / cell)),
        static_cast<std::int64_t>(std::floor((p.y - min_y) / cell))};
  };
  auto key = [](std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint64_t>(cy & 0xffffffff);
  };
  std::vector<std::pair<std::uint64_t, std::size_t>> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [cx, cy] = cell_of(points[i]);
    order[i] = {key(cx, cy), i};
  }
  std::sort(order.begin(), order.end());

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    auto [cx, cy] = cell_of(points[i]);
    candidates.clear();
    for (std::int64_t ox = -1; ox <= 1; ++ox)
      for (std::int64_t oy = -1; oy <= 1; ++oy) {
        if (cx + ox < 0 || cy + oy < 0) continue;
        const auto k = key(cx + ox, cy + oy);
        auto lo = std::lower_bound(order.begin(), order.end(), std::pair{k, std::size_t{0}});
        for (auto it = lo; it != order.end() && it->first == k; ++it)
          if (it->second > i) candidates.push_back(it->second);
      }
    std::sort(candidates.begin(), candidates.end());
    for (auto j : candidates) {
      const double d = dist(points[i], points[j]);
      if (d <= rmax) fn(i, j, d);
    }
  }
}

KCurve ripley_k(std::span<const Point> points, const Region& region, const RadiiGrid& radii,
                EdgeCorrection edge) {
  const std::size_t n = points.size();
  if (n < 2) throw Error(ErrorKind::domain, "K-function needs at least two points");
  const auto r = radii.values();
  std::vector<double> bins(r.size(), 0.0);
  for_each_close_pair(points, radii.max(), [&](std::size_t i, std::size_t, double d) {
    // Strict d < r: first radius above d.
    const auto k = static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), d) - r.begin());
    if (k >= r.size()) return;
    double s = 1.0;
    if (edge == EdgeCorrection::isotropic)
      s = 1.0 / region.circle_fraction_inside(points[i].x, points[i].y, d);
    bins[k] += s;
  });
  KCurve curve;
  curve.radii = radii;
  curve.kind = KKind::plain;
  curve.convention = "unordered pairs i<j, d<r";
  curve.k = cumulate(std::move(bins), r.size());
  const double scale = region.area() / (static_cast<double>(n) * static_cast<double>(n));
  for (auto& v : curve.k) v *= scale;
  return centered_l(std::move(curve));
}

KCurve centered_l(KCurve curve) {
  curve.centered_l.resize(curve.k.size());
  for (std::size_t i = 0; i < curve.k.size(); ++i)
    curve.centered_l[i] = centered(curve.k[i], curve.radii[i]);
  return curve;
}

KCurve weighted_k(std::span<const Point> points, const IntensityField& null_field,
                  const RadiiGrid& radii, EdgeCorrection edge) {
  std::vector<double> w(points.size());
  std::vector<std::size_t> outside, zero;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto v = null_field.evaluate(points[i].x, points[i].y);
    if (!v) {
      outside.push_back(i);
    } else if (*v == 0.0) {
      zero.push_back(i);
    } else {
      w[i] = 1.0 / *v;
    }
  }
  if (!outside.empty() || !zero.empty()) {
    std::ostringstream msg;
    msg << "weighted K needs a positive null intensity at every point;";
    auto list = [&](const char* what, const std::vector<std::size_t>& idx) {
      if (idx.empty()) return;
      msg << ' ' << what << ':';
      for (std::size_t k = 0; k < idx.size() && k < 20; ++k) msg << ' ' << idx[k];
      if (idx.size() > 20) msg << " ...";
    };
    list("outside region", outside);
    list("zero-rate pixel", zero);
    throw Error(ErrorKind::domain, msg.str());
  }
  const double b = null_field.extremes().infimum;
  const double total = null_field.integrate();
  const Region region = Region::from_grid(null_field.grid());

  KCurve curve;
  curve.radii = radii;
  curve.kind = KKind::weighted;
  curve.convention = "ordered pairs j!=i, d<=r, prefactor min(lambda0)/integral";
  curve.k = ordered_pair_sums(points, w, region, radii, edge);
  for (auto& v : curve.k) v *= b / total;
  return centered_l(std::move(curve));
}

KCurve weighted_k(std::span<const Point> points, const Region& region, double null_rate,
                  const RadiiGrid& radii, EdgeCorrection edge) {
  if (!(null_rate > 0.0)) throw Error(ErrorKind::domain, "null rate must be positive");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!region.contains(points[i].x, points[i].y))
      throw Error(ErrorKind::domain, "point " + std::to_string(i) + " lies outside the region");
  std::vector<double> w(points.size(), 1.0 / null_rate);
  KCurve curve;
  curve.radii = radii;
  curve.kind = KKind::weighted;
  curve.convention = "ordered pairs j!=i, d<=r, constant null rate";
  curve.k = ordered_pair_sums(points, w, region, radii, edge);
  const double prefactor = null_rate / (null_rate * region.area());
  for (auto& v : curve.k) v *= prefactor;
  return centered_l(std::move(curve));
}

std::vector<double> wk_null_variance(const RadiiGrid& radii, double area, double total_intensity) {
  std::vector<double> out;
  for (double r : radii.values())
    out.push_back(2.0 * std::numbers::pi * r * r * area / (total_intensity * total_intensity));
  return out;
}

std::vector<Band> wk_confidence_bands(const RadiiGrid& radii, double area, double total_intensity,
                                      double level) {
  if (!(total_intensity > 0.0)) throw Error(ErrorKind::domain, "total intensity must be positive");
  if (!(level >= 0.0 && level < 1.0)) throw Error(ErrorKind::validation, "level must be in [0, 1)");
  const double z = level == 0.0 ? 0.0
                                 : boost::math::quantile(boost::math::normal_distribution<>(),
                                                         0.5 + level / 2.0);
  std::vector<Band> out;
  for (double r : radii.values()) {
    const double mean = std::numbers::pi * r * r;
    const double half = z * std::sqrt(2.0 * std::numbers::pi * r * r * area) / total_intensity;
    out.push_back({mean - half, mean + half});
  }
  return out;
}

std::vector<Band> envelope_bands(const Region& region, double rate, const RadiiGrid& radii,
                                 int n_sims, SeededStream stream, double level,
                                 EdgeCorrection edge) {
  if (n_sims < 2) throw Error(ErrorKind::validation, "envelopes need at least two simulations");
  if (!(level > 0.0 && level < 1.0)) throw Error(ErrorKind::validation, "level must be in (0, 1)");
  const std::size_t m = radii.size();
  std::vector<std::vector<double>> per_radius(m, std::vector<double>(n_sims));
  for (int j = 0; j < n_sims; ++j) {
    const auto pts = simulate_homogeneous(region, rate, stream.child(static_cast<std::uint64_t>(j)));
    const KCurve c = weighted_k(pts, region, rate, radii, edge);
    for (std::size_t i = 0; i < m; ++i) per_radius[i][j] = c.centered_l[i];
  }
  const double alpha = 1.0 - level;
  const auto n = static_cast<double>(n_sims);
  const auto lo_idx = static_cast<std::size_t>(std::floor(alpha / 2.0 * n));
  auto hi_idx = static_cast<std::size_t>(std::ceil((1.0 - alpha / 2.0) * n)) - 1;
  hi_idx = std::min(hi_idx, static_cast<std::size_t>(n_sims - 1));
  std::vector<Band> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& v = per_radius[i];
    std::sort(v.begin(), v.end());
    out[i] = {v[lo_idx], v[hi_idx]};
  }
  return out;
}

}  // namespace seisresid

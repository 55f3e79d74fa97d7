#include "seisresid/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "seisresid/error.hpp"

namespace seisresid {

namespace {

enum : std::uint64_t { kCountStream = 1, kPlacementStream = 2 };

void place_uniform(const Grid& g, std::size_t pixel, std::uint64_t n, CounterRng& rng,
                   std::vector<Point>& out) {
  const auto b = g.bounds(pixel);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double x = b.lon_lo + rng.uniform() * (b.lon_hi - b.lon_lo);
    const double y = b.lat_lo + rng.uniform() * (b.lat_hi - b.lat_lo);
    out.push_back({x, y});
  }
}

}  // namespace

std::vector<std::uint32_t> simulate_counts(const IntensityField& field, SeededStream stream) {
  const Grid& g = field.grid();
  std::vector<std::uint32_t> counts(g.pixel_count(), 0);
  CounterRng rng(stream.child(kCountStream));
  for (std::size_t p = 0; p < counts.size(); ++p) {
    if (!g.is_active(p)) continue;
    counts[p] = static_cast<std::uint32_t>(rng.poisson(field.pixel_integral(p)));
  }
  return counts;
}

Catalog simulate_catalog(const IntensityField& field, SeededStream stream) {
  using namespace std::chrono;
  const auto counts = simulate_counts(field, stream);
  const Grid& g = field.grid();
  CounterRng rng(stream.child(kPlacementStream));

  TimePoint t0{};
  double span_ms = 86'400'000.0;
  if (!field.window().is_unbounded()) {
    t0 = field.window().start;
    span_ms = static_cast<double>((field.window().end - field.window().start).count());
  }

  Catalog cat;
  std::vector<Point> pts;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    if (counts[p] == 0) continue;
    pts.clear();
    place_uniform(g, p, counts[p], rng, pts);
    for (const auto& pt : pts) {
      const auto offset = milliseconds(static_cast<long long>(std::floor(rng.uniform() * span_ms)));
      cat.events.push_back({t0 + offset, pt.x, pt.y, 0.0, field.mag_min()});
    }
  }
  std::stable_sort(cat.events.begin(), cat.events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  return cat;
}

std::vector<Point> simulate_cox_complement(const IntensityField& field, double level,
                                           ComplementMode mode, SeededStream stream) {
  std::vector<double> levels(field.grid().pixel_count(), level);
  return simulate_cox_complement(field, levels, mode, stream);
}

std::vector<Point> simulate_cox_complement(const IntensityField& field,
                                           std::span<const double> level, ComplementMode mode,
                                           SeededStream stream) {
  const Grid& g = field.grid();
  if (level.size() != g.pixel_count())
    throw Error(ErrorKind::validation, "level must have one value per pixel");
  CounterRng counts(stream.child(kCountStream));
  CounterRng place(stream.child(kPlacementStream));
  std::vector<Point> out;
  for (std::size_t p = 0; p < g.pixel_count(); ++p) {
    if (!g.is_active(p)) continue;
    double rate = level[p] - field.value(p);
    if (mode == ComplementMode::superpose) {
      // Tolerate round-off when the level was computed as sup of the field.
      if (rate < -1e-12 * std::max(1.0, std::abs(level[p])))
        throw Error(ErrorKind::domain, "superposition level is below the field at pixel " +
                                           std::to_string(p));
    }
    rate = std::max(0.0, rate);
    const auto n = counts.poisson(rate * g.pixel_area());
    place_uniform(g, p, n, place, out);
  }
  return out;
}

std::vector<Point> simulate_homogeneous(const Region& region, double rate, SeededStream stream) {
  if (!(region.area() > 0.0) || !std::isfinite(region.area()))
    throw Error(ErrorKind::domain, "homogeneous simulation needs a region of positive area");
  if (!(rate >= 0.0) || !std::isfinite(rate))
    throw Error(ErrorKind::validation, "rate must be finite and non-negative");
  CounterRng counts(stream.child(kCountStream));
  CounterRng place(stream.child(kPlacementStream));
  const auto n = counts.poisson(rate * region.area());
  const auto& b = region.bounds();
  std::vector<Point> out;
  out.reserve(n);
  while (out.size() < n) {
    const double x = b.x_lo + place.uniform() * (b.x_hi - b.x_lo);
    const double y = b.y_lo + place.uniform() * (b.y_hi - b.y_lo);
    if (region.contains(x, y)) out.push_back({x, y});
  }
  return out;
}

}  // namespace seisresid

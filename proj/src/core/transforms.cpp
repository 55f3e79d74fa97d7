#include "seisresid/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "seisresid/error.hpp"
#include "seisresid/simulate.hpp"
#include "text_util.hpp"

namespace seisresid {

namespace {

enum : std::uint64_t { kRetentionStream = 11, kComplementStream = 12 };

std::size_t require_pixel(const IntensityField& field, const Event& e, std::size_t index) {
  const auto p = field.grid().locate_active(e.lon, e.lat);
  if (!p)
    throw Error(ErrorKind::domain,
                "event " + std::to_string(index) + " lies outside the forecast region");
  return *p;
}

ResidualSet base_set(const IntensityField& field, TransformKind kind, SeededStream stream) {
  ResidualSet s;
  s.region = Region::from_grid(field.grid());
  s.transform = kind;
  s.stream = stream;
  return s;
}

void append_simulated(ResidualSet& set, const std::vector<Point>& pts) {
  for (const auto& p : pts) set.points.push_back({p.x, p.y, PointLabel::simulated});
}

}  // namespace

std::size_t ResidualSet::count(PointLabel label) const {
  return static_cast<std::size_t>(std::count_if(
      points.begin(), points.end(), [&](const ResidualPoint& p) { return p.label == label; }));
}

double ResidualSet::simulated_fraction() const {
  if (points.empty()) return 0.0;
  return static_cast<double>(count(PointLabel::simulated)) / static_cast<double>(points.size());
}

std::vector<Point> ResidualSet::locations() const {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back({p.x, p.y});
  return out;
}

double RescaledRegion::area() const {
  double a = 0.0;
  for (const auto& s : strips) a += s.extent * (s.band_hi - s.band_lo);
  return a;
}

Region RescaledRegion::to_region() const {
  std::vector<Rect> rects;
  for (const auto& s : strips) {
    if (axis == Axis::horizontal)
      rects.push_back({0.0, s.extent, s.band_lo, s.band_hi});
    else
      rects.push_back({s.band_lo, s.band_hi, 0.0, s.extent});
  }
  return Region::from_rects(std::move(rects));
}

Rescaled rescale(const Catalog& catalog, const IntensityField& field, Axis axis) {
  const Grid& g = field.grid();
  const bool horiz = axis == Axis::horizontal;
  const int n_strips = horiz ? g.ny() : g.nx();
  const int n_along = horiz ? g.nx() : g.ny();
  const double step = horiz ? g.dx() : g.dy();
  auto pixel_at = [&](int strip, int along) {
    return horiz ? g.index(along, strip) : g.index(strip, along);
  };

  // cumulative[strip][along] = integral from the grid edge to the start of `along`.
  std::vector<std::vector<double>> cumulative(n_strips, std::vector<double>(n_along + 1, 0.0));
  RescaledRegion region;
  region.axis = axis;
  for (int s = 0; s < n_strips; ++s) {
    double run = 0.0;
    for (int a = 0; a < n_along; ++a) {
      cumulative[s][a] = run;
      const auto p = pixel_at(s, a);
      if (g.is_active(p)) run += field.value(p) * step;
    }
    cumulative[s][n_along] = run;
    const double lo = horiz ? g.lat_edge(s) : g.lon_edge(s);
    const double hi = horiz ? g.lat_edge(s + 1) : g.lon_edge(s + 1);
    region.strips.push_back({lo, hi, run});
  }

  Rescaled out;
  out.set.transform = TransformKind::rescale;
  out.set.null_rate = 1.0;
  out.set.notes.push_back("rescaling uses the time-integrated rate of each pixel");
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    const auto& e = catalog.events[i];
    const auto p = require_pixel(field, e, i);
    const int s = horiz ? g.iy(p) : g.ix(p);
    const int a = horiz ? g.ix(p) : g.iy(p);
    const double offset = horiz ? e.lon - g.lon_edge(a) : e.lat - g.lat_edge(a);
    const double moved = cumulative[s][a] + field.value(p) * std::clamp(offset, 0.0, step);
    if (horiz)
      out.set.points.push_back({moved, e.lat, PointLabel::retained});
    else
      out.set.points.push_back({e.lon, moved, PointLabel::retained});
  }
  out.set.region = region.to_region();
  out.region = std::move(region);
  return out;
}

ResidualSet thin_exact(const Catalog& catalog, const IntensityField& field, SeededStream stream) {
  const double b = field.extremes().infimum;
  if (!(b > 0.0))
    throw Error(ErrorKind::domain,
                "infimum of the field is 0, so exact thinning keeps no points; use approximate "
                "thinning with an expected retained count instead");
  ResidualSet set = base_set(field, TransformKind::thin, stream);
  set.null_rate = b;
  const CounterRng rng(stream.child(kRetentionStream));
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    const auto& e = catalog.events[i];
    const auto p = require_pixel(field, e, i);
    if (rng.uniform_at(i) < b / field.value(p)) set.points.push_back({e.lon, e.lat, PointLabel::retained});
  }
  return set;
}

ResidualSet thin_approx(const Catalog& catalog, const IntensityField& field, double k_count,
                        SeededStream stream) {
  if (!(k_count > 0.0)) throw Error(ErrorKind::validation, "expected retained count must be positive");
  ResidualSet set = base_set(field, TransformKind::thin_approx, stream);
  set.null_rate = k_count / field.grid().area();
  set.notes.push_back("null rate = k_count / region area");
  if (catalog.empty()) return set;

  std::vector<double> rate(catalog.events.size());
  double inv_sum = 0.0;
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    const auto p = require_pixel(field, catalog.events[i], i);
    rate[i] = field.value(p);
    if (rate[i] == 0.0)
      throw Error(ErrorKind::domain,
                  "event " + std::to_string(i) + " lies in a zero-rate pixel; retention undefined");
    inv_sum += 1.0 / rate[i];
  }
  const CounterRng rng(stream.child(kRetentionStream));
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    double prob = k_count / (rate[i] * inv_sum);
    if (prob > 1.0) {
      prob = 1.0;
      ++clamped;
    }
    if (rng.uniform_at(i) < prob)
      set.points.push_back({catalog.events[i].lon, catalog.events[i].lat, PointLabel::retained});
  }
  if (clamped > 0)
    set.notes.push_back("warning: " + std::to_string(clamped) +
                        " retention probabilities exceeded 1 and were clamped");
  return set;
}

ResidualSet superpose(const Catalog& catalog, const IntensityField& field, SeededStream stream) {
  const double c = field.extremes().supremum;
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorKind::domain, "superposition needs a positive, finite supremum");
  ResidualSet set = base_set(field, TransformKind::superpose, stream);
  set.null_rate = c;
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    require_pixel(field, catalog.events[i], i);
    set.points.push_back({catalog.events[i].lon, catalog.events[i].lat, PointLabel::retained});
  }
  append_simulated(set, simulate_cox_complement(field, c, ComplementMode::superpose,
                                                stream.child(kComplementStream)));
  return set;
}

ResidualSet super_thin(const Catalog& catalog, const IntensityField& field, double k_rate,
                       SeededStream stream) {
  if (!(k_rate > 0.0) || !std::isfinite(k_rate))
    throw Error(ErrorKind::validation, "super-thinning rate must be positive and finite");
  ResidualSet set = base_set(field, TransformKind::superthin, stream);
  set.null_rate = k_rate;
  const CounterRng rng(stream.child(kRetentionStream));
  for (std::size_t i = 0; i < catalog.events.size(); ++i) {
    const auto& e = catalog.events[i];
    const auto p = require_pixel(field, e, i);
    const double v = field.value(p);
    const double prob = v <= k_rate ? 1.0 : k_rate / v;
    if (rng.uniform_at(i) < prob) set.points.push_back({e.lon, e.lat, PointLabel::retained});
  }
  append_simulated(set, simulate_cox_complement(field, k_rate, ComplementMode::superthin,
                                                stream.child(kComplementStream)));
  return set;
}

double default_k_rate(const IntensityField& field) {
  const double area = field.grid().area();
  if (!(area > 0.0)) throw Error(ErrorKind::domain, "field has no active area");
  return field.integrate() / area;
}

KCurve assess_homogeneity(const ResidualSet& set, const RadiiGrid& radii,
                          const AssessmentOptions& options, SeededStream stream) {
  if (set.points.empty()) throw Error(ErrorKind::domain, "residual set is empty");
  if (set.transform == TransformKind::rescale && options.bands == BandMode::analytic)
    throw Error(ErrorKind::domain,
                "rescaled residuals live on an irregular region; use envelope bands");
  const auto pts = set.locations();
  KCurve curve = weighted_k(pts, set.region, set.null_rate, radii, options.edge);
  const double area = set.region.area();
  if (options.bands == BandMode::analytic) {
    curve.bands = wk_confidence_bands(radii, area, set.null_rate * area, options.level);
    curve.variance = wk_null_variance(radii, area, set.null_rate * area);
    curve.band_source = BandSource::analytic;
  } else {
    const auto env = envelope_bands(set.region, set.null_rate, radii, options.n_sims, stream,
                                    options.level, options.edge);
    curve.bands.resize(env.size());
    for (std::size_t i = 0; i < env.size(); ++i) {
      const double r = radii[i];
      curve.bands[i] = {std::numbers::pi * (env[i].lower + r) * (env[i].lower + r),
                        std::numbers::pi * (env[i].upper + r) * (env[i].upper + r)};
    }
    curve.band_source = BandSource::envelope;
  }
  return curve;
}

double band_coverage(const KCurve& curve) {
  if (curve.bands.empty() || curve.k.empty()) return 0.0;
  const auto lb = curve.centered_bands();
  std::size_t inside = 0;
  for (std::size_t i = 0; i < curve.k.size(); ++i) {
    const double l = curve.centered_l[i];
    // Tolerance absorbs the sqrt/square round trip of envelope bands.
    const double tol = 1e-12 * (1.0 + std::abs(l));
    if (l >= lb[i].lower - tol && l <= lb[i].upper + tol) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(curve.k.size());
}

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::rescale: return "rescale";
    case TransformKind::thin: return "thin";
    case TransformKind::thin_approx: return "thin_approx";
    case TransformKind::superpose: return "superpose";
    case TransformKind::superthin: return "superthin";
  }
  return "unknown";
}

std::string to_string(PointLabel label) {
  return label == PointLabel::retained ? "retained" : "simulated";
}

}  // namespace seisresid

#include "seisresid/seisresid.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "seisresid/catalog.hpp"
#include "seisresid/consistency.hpp"
#include "seisresid/error.hpp"
#include "seisresid/forecast.hpp"
#include "seisresid/intensity.hpp"
#include "seisresid/pixel_residuals.hpp"
#include "seisresid/report.hpp"
#include "seisresid/second_order.hpp"
#include "seisresid/simulate.hpp"
#include "seisresid/transforms.hpp"
#include "text_util.hpp"

using namespace seisresid;

struct sr_forecast {
  Forecast value;
};
struct sr_catalog {
  Catalog value;
};
struct sr_field {
  IntensityField value;
};
struct sr_residual_map {
  PixelResidualMap value;
};
struct sr_kcurve {
  KCurve value;
};
struct sr_residual_set {
  ResidualSet value;
};
struct sr_rescaled_region {
  RescaledRegion value;
};

namespace {

thread_local std::string last_error;

sr_status fail(sr_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

sr_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return SR_ERR_PARSE;
    case ErrorKind::schema: return SR_ERR_SCHEMA;
    case ErrorKind::validation: return SR_ERR_VALIDATION;
    case ErrorKind::domain: return SR_ERR_DOMAIN;
    case ErrorKind::io: return SR_ERR_IO;
    case ErrorKind::usage: return SR_ERR_USAGE;
  }
  return SR_ERR_INTERNAL;
}

template <class Fn>
sr_status guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return SR_OK;
  } catch (const Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SR_ERR_INTERNAL, e.what());
  }
}

#define SR_REQUIRE(cond, what)                                        \
  do {                                                                \
    if (!(cond)) return fail(SR_ERR_INVALID_ARGUMENT, what);          \
  } while (0)

std::string path_of(const char* path) { return path ? path : ""; }

void write(const char* path, const std::string& body) { detail::write_file(path_of(path), body); }

RadiiGrid radii_of(double rmax, double dr) { return RadiiGrid::linear(dr, rmax); }

EdgeCorrection edge_of(sr_edge edge) {
  return edge == SR_EDGE_ISOTROPIC ? EdgeCorrection::isotropic : EdgeCorrection::none;
}

std::vector<Point> locations(const Catalog& catalog) {
  std::vector<Point> pts;
  pts.reserve(catalog.size());
  for (const auto& e : catalog.events) pts.push_back({e.lon, e.lat});
  return pts;
}

void to_c(const QuantileScore& s, sr_score* out) {
  out->statistic = s.statistic == Statistic::gamma ? SR_GAMMA : SR_DELTA;
  out->value = s.value;
  out->n_sims = s.n_sims;
  out->observed_stat = s.observed_stat;
  out->method = s.method == ScoreMethod::simulation ? SR_SIMULATION : SR_ANALYTIC;
  out->seed = s.seed;
  out->reject_at_5pct = rejects_at_5pct(s) ? 1 : 0;
}

QuantileScore from_c(const sr_score& s) {
  QuantileScore q;
  q.statistic = s.statistic == SR_GAMMA ? Statistic::gamma : Statistic::delta;
  q.value = s.value;
  q.n_sims = s.n_sims;
  q.observed_stat = s.observed_stat;
  q.method = s.method == SR_SIMULATION ? ScoreMethod::simulation : ScoreMethod::analytic;
  q.seed = s.seed;
  return q;
}

void copy_digest(const std::string& hex, char out[65]) {
  std::memcpy(out, hex.data(), 64);
  out[64] = '\0';
}

}  // namespace

extern "C" {

const char* sr_version(void) { return report::kVersion; }

const char* sr_last_error(void) { return last_error.c_str(); }

const char* sr_status_name(sr_status status) {
  switch (status) {
    case SR_OK: return "ok";
    case SR_ERR_PARSE: return "parse error";
    case SR_ERR_SCHEMA: return "schema error";
    case SR_ERR_VALIDATION: return "validation error";
    case SR_ERR_DOMAIN: return "domain error";
    case SR_ERR_IO: return "i/o error";
    case SR_ERR_USAGE: return "usage error";
    case SR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

// ---- forecasts

sr_status sr_forecast_load(const char* path, sr_forecast** out) {
  SR_REQUIRE(path && out, "path and out are required");
  return guard([&] { *out = new sr_forecast{load_forecast(path)}; });
}

sr_status sr_forecast_parse(const char* text, size_t length, sr_forecast** out) {
  SR_REQUIRE((text || length == 0) && out, "text and out are required");
  return guard([&] { *out = new sr_forecast{parse_forecast(std::string_view(text, length))}; });
}

sr_status sr_forecast_sum(const sr_forecast* const* parts, size_t count, sr_forecast** out) {
  SR_REQUIRE(parts && count > 0 && out, "at least one forecast is required");
  for (size_t i = 0; i < count; ++i) SR_REQUIRE(parts[i], "null forecast in list");
  return guard([&] {
    std::vector<Forecast> v;
    v.reserve(count);
    for (size_t i = 0; i < count; ++i) v.push_back(parts[i]->value);
    *out = new sr_forecast{count == 1 ? v.front() : sum_forecasts(v)};
  });
}

sr_status sr_forecast_extrapolate(const sr_forecast* forecast, double new_mag_min,
                                  double b_value, double corner_magnitude, sr_forecast** out,
                                  int* warned) {
  SR_REQUIRE(forecast && out, "forecast and out are required");
  return guard([&] {
    GutenbergRichter law;
    law.b_value = b_value;
    law.corner_magnitude = corner_magnitude;
    auto result = gr_extrapolate(forecast->value, new_mag_min, law);
    if (warned) *warned = result.warning ? 1 : 0;
    if (result.warning) last_error = *result.warning;
    *out = new sr_forecast{std::move(result.forecast)};
  });
}

sr_status sr_forecast_write(const sr_forecast* forecast, const char* path) {
  SR_REQUIRE(forecast, "forecast is required");
  return guard([&] { write(path, serialize_forecast(forecast->value)); });
}

double sr_forecast_total_rate(const sr_forecast* forecast) {
  return forecast ? forecast->value.total_rate() : std::numeric_limits<double>::quiet_NaN();
}

size_t sr_forecast_bin_count(const sr_forecast* forecast) {
  return forecast ? forecast->value.bins().size() : 0;
}

void sr_forecast_free(sr_forecast* forecast) { delete forecast; }

// ---- catalogs

sr_status sr_catalog_load(const char* path, sr_catalog** out) {
  SR_REQUIRE(path && out, "path and out are required");
  return guard([&] { *out = new sr_catalog{load_catalog(path)}; });
}

sr_status sr_catalog_parse(const char* text, size_t length, sr_catalog** out) {
  SR_REQUIRE((text || length == 0) && out, "text and out are required");
  return guard([&] { *out = new sr_catalog{parse_catalog(std::string_view(text, length))}; });
}

sr_status sr_catalog_filter(const sr_catalog* catalog, const sr_forecast* forecast,
                            double mag_min, double depth_max, sr_catalog** out,
                            sr_filter_counts* counts) {
  SR_REQUIRE(catalog && forecast && out, "catalog, forecast and out are required");
  return guard([&] {
    auto report = filter_catalog(catalog->value, forecast->value, {mag_min, depth_max});
    if (counts) {
      counts->kept = report.catalog.size();
      counts->below_magnitude = report.below_magnitude;
      counts->too_deep = report.too_deep;
      counts->outside_window = report.outside_window;
      counts->outside_region = report.outside_region;
    }
    *out = new sr_catalog{std::move(report.catalog)};
  });
}

sr_status sr_catalog_write(const sr_catalog* catalog, const char* path) {
  SR_REQUIRE(catalog, "catalog is required");
  return guard([&] { write(path, serialize_catalog(catalog->value)); });
}

size_t sr_catalog_size(const sr_catalog* catalog) { return catalog ? catalog->value.size() : 0; }

sr_status sr_catalog_event(const sr_catalog* catalog, size_t index, double* lon, double* lat,
                           double* depth, double* magnitude) {
  SR_REQUIRE(catalog && index < catalog->value.size(), "event index out of range");
  const auto& e = catalog->value.events[index];
  if (lon) *lon = e.lon;
  if (lat) *lat = e.lat;
  if (depth) *depth = e.depth;
  if (magnitude) *magnitude = e.magnitude;
  return SR_OK;
}

void sr_catalog_free(sr_catalog* catalog) { delete catalog; }

// ---- fields

sr_status sr_field_from_forecast(const sr_forecast* forecast, double mag_min,
                                 double window_fraction, sr_field** out) {
  SR_REQUIRE(forecast && out, "forecast and out are required");
  return guard([&] {
    auto field = aggregate(forecast->value, mag_min);
    if (window_fraction != 1.0) field = scale_window(field, window_fraction);
    *out = new sr_field{std::move(field)};
  });
}

sr_status sr_field_create(double lon_min, double lat_min, double dx, double dy, int nx, int ny,
                          const double* rates, const uint8_t* mask, sr_field** out) {
  SR_REQUIRE(rates && out && nx > 0 && ny > 0, "rates, out and a positive shape are required");
  return guard([&] {
    const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    std::vector<std::uint8_t> active(n, 1);
    if (mask) active.assign(mask, mask + n);
    std::vector<double> base(rates, rates + n);
    for (std::size_t p = 0; p < n; ++p)
      if (!active[p]) base[p] = std::numeric_limits<double>::quiet_NaN();
    *out = new sr_field{IntensityField(Grid(lon_min, lat_min, dx, dy, nx, ny, std::move(active)),
                                       std::move(base))};
  });
}

sr_status sr_field_write_csv(const sr_field* field, const char* path) {
  SR_REQUIRE(field, "field is required");
  return guard([&] { write(path, report::field_csv(field->value)); });
}

double sr_field_integral(const sr_field* field) {
  return field ? field->value.integrate() : std::numeric_limits<double>::quiet_NaN();
}

double sr_field_area(const sr_field* field) {
  return field ? field->value.grid().area() : std::numeric_limits<double>::quiet_NaN();
}

sr_status sr_field_extremes(const sr_field* field, double* infimum, double* supremum) {
  SR_REQUIRE(field, "field is required");
  return guard([&] {
    const auto e = field->value.extremes();
    if (infimum) *infimum = e.infimum;
    if (supremum) *supremum = e.supremum;
  });
}

void sr_field_free(sr_field* field) { delete field; }

sr_status sr_simulate_catalog(const sr_field* field, uint64_t seed, sr_catalog** out) {
  SR_REQUIRE(field && out, "field and out are required");
  return guard([&] { *out = new sr_catalog{simulate_catalog(field->value, SeededStream{seed, 0})}; });
}

// ---- consistency tests

sr_status sr_n_test(const sr_field* field, const sr_catalog* catalog, int n_sims, uint64_t seed,
                    sr_method method, sr_score* out) {
  SR_REQUIRE(field && catalog && out, "field, catalog and out are required");
  return guard([&] {
    to_c(n_test(field->value, catalog->value, n_sims, SeededStream{seed, 0},
                method == SR_ANALYTIC ? ScoreMethod::analytic : ScoreMethod::simulation),
         out);
  });
}

sr_status sr_l_test(const sr_field* field, const sr_catalog* catalog, int n_sims, uint64_t seed,
                    sr_score* out) {
  SR_REQUIRE(field && catalog && out, "field, catalog and out are required");
  return guard(
      [&] { to_c(l_test(field->value, catalog->value, n_sims, SeededStream{seed, 0}), out); });
}

sr_status sr_log_likelihood(const sr_field* field, const sr_catalog* catalog, double* out) {
  SR_REQUIRE(field && catalog && out, "field, catalog and out are required");
  return guard([&] { *out = log_likelihood(field->value, catalog->value); });
}

sr_status sr_score_write_json(const sr_score* score, const char* path) {
  SR_REQUIRE(score, "score is required");
  return guard([&] { write(path, report::score_json(from_c(*score))); });
}

// ---- pixel residuals

sr_status sr_residuals(const sr_field* field, const sr_catalog* catalog, sr_residual_kind kind,
                       sr_residual_map** out) {
  SR_REQUIRE(field && catalog && out, "field, catalog and out are required");
  if (kind != SR_RAW && kind != SR_PEARSON)
    return fail(SR_ERR_USAGE, "deviance residuals need two forecasts");
  return guard([&] {
    *out = new sr_residual_map{kind == SR_RAW ? raw_residuals(field->value, catalog->value)
                                              : pearson_residuals(field->value, catalog->value)};
  });
}

sr_status sr_deviance_residuals(const sr_field* field_a, const sr_field* field_b,
                                const sr_catalog* catalog, sr_residual_map** out) {
  SR_REQUIRE(field_a && field_b && catalog && out, "two fields, a catalog and out are required");
  return guard([&] {
    *out = new sr_residual_map{
        deviance_residuals(field_a->value, field_b->value, catalog->value)};
  });
}

sr_status sr_residual_map_lr_score(const sr_residual_map* map, double* out) {
  SR_REQUIRE(map && out, "map and out are required");
  return guard([&] { *out = lr_score(map->value); });
}

size_t sr_residual_map_size(const sr_residual_map* map) {
  return map ? map->value.values.size() : 0;
}

size_t sr_residual_map_skipped(const sr_residual_map* map) {
  return map ? map->value.skipped.size() : 0;
}

sr_status sr_residual_map_entry(const sr_residual_map* map, size_t index, size_t* pixel,
                                double* value, sr_pixel_flag* flag) {
  SR_REQUIRE(map && index < map->value.values.size(), "entry index out of range");
  const auto& v = map->value.values[index];
  if (pixel) *pixel = v.pixel;
  if (value) *value = v.value;
  if (flag) *flag = static_cast<sr_pixel_flag>(v.flag);
  return SR_OK;
}

double sr_residual_map_max(const sr_residual_map* map) {
  return map ? map->value.max_value() : std::numeric_limits<double>::quiet_NaN();
}

sr_status sr_residual_map_write_csv(const sr_residual_map* map, const char* path) {
  SR_REQUIRE(map, "map is required");
  return guard([&] { write(path, report::residual_map_csv(map->value)); });
}

sr_status sr_residual_map_write_svg(const sr_residual_map* map, const sr_catalog* events,
                                    const char* path, const char* title) {
  SR_REQUIRE(map, "map is required");
  return guard([&] {
    static const Catalog none;
    write(path, report::residual_map_svg(map->value, events ? events->value : none,
                                         title ? title : ""));
  });
}

void sr_residual_map_free(sr_residual_map* map) { delete map; }

// ---- K-functions

sr_status sr_k_plain(const sr_catalog* catalog, const sr_field* region, double rmax, double dr,
                     sr_edge edge, sr_kcurve** out) {
  SR_REQUIRE(catalog && region && out, "catalog, region and out are required");
  return guard([&] {
    const auto pts = locations(catalog->value);
    *out = new sr_kcurve{ripley_k(pts, Region::from_grid(region->value.grid()),
                                  radii_of(rmax, dr), edge_of(edge))};
  });
}

sr_status sr_k_weighted(const sr_catalog* catalog, const sr_field* null_field, double rmax,
                        double dr, sr_edge edge, double level, sr_kcurve** out) {
  SR_REQUIRE(catalog && null_field && out, "catalog, field and out are required");
  return guard([&] {
    if (catalog->value.size() < 2)
      throw Error(ErrorKind::domain, "K-function needs at least two events");
    const auto pts = locations(catalog->value);
    const auto radii = radii_of(rmax, dr);
    KCurve curve = weighted_k(pts, null_field->value, radii, edge_of(edge));
    const double area = null_field->value.grid().area();
    const double total = null_field->value.integrate();
    curve.bands = wk_confidence_bands(radii, area, total, level);
    curve.variance = wk_null_variance(radii, area, total);
    curve.band_source = BandSource::analytic;
    *out = new sr_kcurve{std::move(curve)};
  });
}

size_t sr_kcurve_size(const sr_kcurve* curve) { return curve ? curve->value.k.size() : 0; }

sr_status sr_kcurve_entry(const sr_kcurve* curve, size_t index, double* r, double* k,
                          double* centered_l, double* lower, double* upper) {
  SR_REQUIRE(curve && index < curve->value.k.size(), "radius index out of range");
  const auto& c = curve->value;
  if (r) *r = c.radii[index];
  if (k) *k = c.k[index];
  if (centered_l) *centered_l = c.centered_l[index];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (c.bands.empty()) {
    if (lower) *lower = nan;
    if (upper) *upper = nan;
  } else {
    const auto b = c.centered_bands()[index];
    if (lower) *lower = b.lower;
    if (upper) *upper = b.upper;
  }
  return SR_OK;
}

double sr_kcurve_coverage(const sr_kcurve* curve) {
  if (!curve || curve->value.bands.empty()) return std::numeric_limits<double>::quiet_NaN();
  return band_coverage(curve->value);
}

sr_status sr_kcurve_write_csv(const sr_kcurve* curve, const char* path) {
  SR_REQUIRE(curve, "curve is required");
  return guard([&] { write(path, report::kcurve_csv(curve->value)); });
}

sr_status sr_kcurve_write_svg(const sr_kcurve* curve, const char* path, const char* title) {
  SR_REQUIRE(curve, "curve is required");
  return guard([&] { write(path, report::kcurve_svg(curve->value, title ? title : "")); });
}

void sr_kcurve_free(sr_kcurve* curve) { delete curve; }

// ---- transforms

sr_status sr_transform(const sr_catalog* catalog, const sr_field* field, sr_transform_kind kind,
                       double parameter, sr_axis axis, uint64_t seed, sr_residual_set** out,
                       sr_rescaled_region** region_out) {
  SR_REQUIRE(catalog && field && out, "catalog, field and out are required");
  if (region_out) *region_out = nullptr;
  return guard([&] {
    const SeededStream stream{seed, 0};
    const auto& cat = catalog->value;
    const auto& f = field->value;
    switch (kind) {
      case SR_RESCALE: {
        auto r = rescale(cat, f, axis == SR_AXIS_VERTICAL ? Axis::vertical : Axis::horizontal);
        if (region_out) *region_out = new sr_rescaled_region{std::move(r.region)};
        *out = new sr_residual_set{std::move(r.set)};
        return;
      }
      case SR_THIN: *out = new sr_residual_set{thin_exact(cat, f, stream)}; return;
      case SR_THIN_APPROX:
        if (std::isnan(parameter)) throw Error(ErrorKind::usage, "thin-approx needs --k-count");
        *out = new sr_residual_set{thin_approx(cat, f, parameter, stream)};
        return;
      case SR_SUPERPOSE: *out = new sr_residual_set{superpose(cat, f, stream)}; return;
      case SR_SUPERTHIN: {
        const double k = std::isnan(parameter) ? default_k_rate(f) : parameter;
        *out = new sr_residual_set{super_thin(cat, f, k, stream)};
        return;
      }
    }
    throw Error(ErrorKind::usage, "unknown transform kind");
  });
}

size_t sr_residual_set_size(const sr_residual_set* set) {
  return set ? set->value.points.size() : 0;
}

size_t sr_residual_set_simulated(const sr_residual_set* set) {
  return set ? set->value.count(PointLabel::simulated) : 0;
}

double sr_residual_set_null_rate(const sr_residual_set* set) {
  return set ? set->value.null_rate : std::numeric_limits<double>::quiet_NaN();
}

double sr_residual_set_area(const sr_residual_set* set) {
  return set ? set->value.region.area() : std::numeric_limits<double>::quiet_NaN();
}

sr_status sr_residual_set_point(const sr_residual_set* set, size_t index, double* x, double* y,
                                int* simulated) {
  SR_REQUIRE(set && index < set->value.points.size(), "point index out of range");
  const auto& p = set->value.points[index];
  if (x) *x = p.x;
  if (y) *y = p.y;
  if (simulated) *simulated = p.label == PointLabel::simulated ? 1 : 0;
  return SR_OK;
}

size_t sr_residual_set_note_count(const sr_residual_set* set) {
  return set ? set->value.notes.size() : 0;
}

const char* sr_residual_set_note(const sr_residual_set* set, size_t index) {
  if (!set || index >= set->value.notes.size()) return nullptr;
  return set->value.notes[index].c_str();
}

sr_status sr_residual_set_write_csv(const sr_residual_set* set, const char* path) {
  SR_REQUIRE(set, "set is required");
  return guard([&] { write(path, report::residual_set_csv(set->value)); });
}

sr_status sr_residual_set_write_svg(const sr_residual_set* set, const char* path,
                                    const char* title) {
  SR_REQUIRE(set, "set is required");
  return guard([&] { write(path, report::residual_points_svg(set->value, title ? title : "")); });
}

sr_status sr_residual_set_assess(const sr_residual_set* set, double rmax, double dr,
                                 int envelope, int n_sims, uint64_t seed, sr_edge edge,
                                 sr_kcurve** out) {
  SR_REQUIRE(set && out, "set and out are required");
  return guard([&] {
    AssessmentOptions opt;
    opt.bands = envelope ? BandMode::envelope : BandMode::analytic;
    opt.n_sims = n_sims;
    opt.edge = edge_of(edge);
    *out = new sr_kcurve{
        assess_homogeneity(set->value, radii_of(rmax, dr), opt, SeededStream{seed, 0})};
  });
}

void sr_residual_set_free(sr_residual_set* set) { delete set; }

double sr_rescaled_region_area(const sr_rescaled_region* region) {
  return region ? region->value.area() : std::numeric_limits<double>::quiet_NaN();
}

sr_status sr_rescaled_region_write_csv(const sr_rescaled_region* region, const char* path) {
  SR_REQUIRE(region, "region is required");
  return guard([&] { write(path, report::rescaled_region_csv(region->value)); });
}

void sr_rescaled_region_free(sr_rescaled_region* region) { delete region; }

// ---- digests

sr_status sr_file_digest(const char* path, char out[65]) {
  SR_REQUIRE(path && out, "path and out are required");
  return guard([&] { copy_digest(report::file_sha256(path), out); });
}

sr_status sr_buffer_digest(const void* data, size_t length, char out[65]) {
  SR_REQUIRE((data || length == 0) && out, "data and out are required");
  return guard([&] {
    copy_digest(report::sha256_hex(std::string_view(static_cast<const char*>(data), length)), out);
  });
}

}  // extern "C"

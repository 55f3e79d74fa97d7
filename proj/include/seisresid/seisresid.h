/* seisresid C API.
 *
 * Every fallible call returns an sr_status. On failure the thread-local
 * message from sr_last_error() describes the problem. Objects are opaque and
 * owned by the caller; release them with the matching *_free function.
 * Output paths of "" or "-" write to stdout.
 */
#ifndef SEISRESID_H
#define SEISRESID_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SR_API __declspec(dllexport)
#else
#define SR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
  SR_OK = 0,
  SR_ERR_PARSE = 1,
  SR_ERR_SCHEMA = 2,
  SR_ERR_VALIDATION = 3,
  SR_ERR_DOMAIN = 4,
  SR_ERR_IO = 5,
  SR_ERR_USAGE = 6,
  SR_ERR_INVALID_ARGUMENT = 7,
  SR_ERR_INTERNAL = 8
} sr_status;

typedef struct sr_forecast sr_forecast;
typedef struct sr_catalog sr_catalog;
typedef struct sr_field sr_field;
typedef struct sr_residual_map sr_residual_map;
typedef struct sr_kcurve sr_kcurve;
typedef struct sr_residual_set sr_residual_set;
typedef struct sr_rescaled_region sr_rescaled_region;

SR_API const char* sr_version(void);
SR_API const char* sr_last_error(void);
SR_API const char* sr_status_name(sr_status status);

/* ---- forecasts ---- */
SR_API sr_status sr_forecast_load(const char* path, sr_forecast** out);
SR_API sr_status sr_forecast_parse(const char* text, size_t length, sr_forecast** out);
SR_API sr_status sr_forecast_sum(const sr_forecast* const* parts, size_t count, sr_forecast** out);
/* Tapered Gutenberg-Richter extrapolation down to new_mag_min. corner_magnitude
 * may be +inf. *warned is set to 1 when the call was a no-op. */
SR_API sr_status sr_forecast_extrapolate(const sr_forecast* forecast, double new_mag_min,
                                         double b_value, double corner_magnitude,
                                         sr_forecast** out, int* warned);
SR_API sr_status sr_forecast_write(const sr_forecast* forecast, const char* path);
SR_API double sr_forecast_total_rate(const sr_forecast* forecast);
SR_API size_t sr_forecast_bin_count(const sr_forecast* forecast);
SR_API void sr_forecast_free(sr_forecast* forecast);

/* ---- catalogs ---- */
typedef struct sr_filter_counts {
  size_t kept;
  size_t below_magnitude;
  size_t too_deep;
  size_t outside_window;
  size_t outside_region;
} sr_filter_counts;

SR_API sr_status sr_catalog_load(const char* path, sr_catalog** out);
SR_API sr_status sr_catalog_parse(const char* text, size_t length, sr_catalog** out);
SR_API sr_status sr_catalog_filter(const sr_catalog* catalog, const sr_forecast* forecast,
                                   double mag_min, double depth_max, sr_catalog** out,
                                   sr_filter_counts* counts);
SR_API sr_status sr_catalog_write(const sr_catalog* catalog, const char* path);
SR_API size_t sr_catalog_size(const sr_catalog* catalog);
SR_API sr_status sr_catalog_event(const sr_catalog* catalog, size_t index, double* lon,
                                  double* lat, double* depth, double* magnitude);
SR_API void sr_catalog_free(sr_catalog* catalog);

/* ---- intensity fields ---- */
/* Aggregates bins with mag_lo >= mag_min per pixel, per unit area, scaled by
 * window_fraction in (0, 1]. */
SR_API sr_status sr_field_from_forecast(const sr_forecast* forecast, double mag_min,
                                        double window_fraction, sr_field** out);
/* rates has nx*ny entries (row-major from the south-west corner), mask may be
 * NULL for all active. */
SR_API sr_status sr_field_create(double lon_min, double lat_min, double dx, double dy, int nx,
                                 int ny, const double* rates, const uint8_t* mask,
                                 sr_field** out);
SR_API sr_status sr_field_write_csv(const sr_field* field, const char* path);
SR_API double sr_field_integral(const sr_field* field);
SR_API double sr_field_area(const sr_field* field);
SR_API sr_status sr_field_extremes(const sr_field* field, double* infimum, double* supremum);
SR_API void sr_field_free(sr_field* field);

SR_API sr_status sr_simulate_catalog(const sr_field* field, uint64_t seed, sr_catalog** out);

/* ---- consistency tests ---- */
typedef enum sr_statistic { SR_GAMMA = 0, SR_DELTA = 1 } sr_statistic;
typedef enum sr_method { SR_SIMULATION = 0, SR_ANALYTIC = 1 } sr_method;

typedef struct sr_score {
  sr_statistic statistic;
  double value;
  int64_t n_sims;
  double observed_stat;
  sr_method method;
  uint64_t seed;
  int reject_at_5pct;
} sr_score;

SR_API sr_status sr_n_test(const sr_field* field, const sr_catalog* catalog, int n_sims,
                           uint64_t seed, sr_method method, sr_score* out);
SR_API sr_status sr_l_test(const sr_field* field, const sr_catalog* catalog, int n_sims,
                           uint64_t seed, sr_score* out);
SR_API sr_status sr_log_likelihood(const sr_field* field, const sr_catalog* catalog, double* out);
SR_API sr_status sr_score_write_json(const sr_score* score, const char* path);

/* ---- pixel residuals ---- */
typedef enum sr_residual_kind { SR_RAW = 0, SR_PEARSON = 1, SR_DEVIANCE = 2 } sr_residual_kind;
typedef enum sr_pixel_flag {
  SR_PIXEL_OK = 0,
  SR_PIXEL_SKIPPED = 1,
  SR_PIXEL_POS_INF = 2,
  SR_PIXEL_NEG_INF = 3
} sr_pixel_flag;

/* kind must be SR_RAW or SR_PEARSON. */
SR_API sr_status sr_residuals(const sr_field* field, const sr_catalog* catalog,
                              sr_residual_kind kind, sr_residual_map** out);
SR_API sr_status sr_deviance_residuals(const sr_field* field_a, const sr_field* field_b,
                                       const sr_catalog* catalog, sr_residual_map** out);
SR_API sr_status sr_residual_map_lr_score(const sr_residual_map* map, double* out);
SR_API size_t sr_residual_map_size(const sr_residual_map* map);
SR_API size_t sr_residual_map_skipped(const sr_residual_map* map);
SR_API sr_status sr_residual_map_entry(const sr_residual_map* map, size_t index, size_t* pixel,
                                       double* value, sr_pixel_flag* flag);
SR_API double sr_residual_map_max(const sr_residual_map* map);
SR_API sr_status sr_residual_map_write_csv(const sr_residual_map* map, const char* path);
SR_API sr_status sr_residual_map_write_svg(const sr_residual_map* map, const sr_catalog* events,
                                           const char* path, const char* title);
SR_API void sr_residual_map_free(sr_residual_map* map);

/* ---- K-functions ---- */
typedef enum sr_edge { SR_EDGE_NONE = 0, SR_EDGE_ISOTROPIC = 1 } sr_edge;

/* Plain Ripley K of the catalog on the field's active region. */
SR_API sr_status sr_k_plain(const sr_catalog* catalog, const sr_field* region, double rmax,
                            double dr, sr_edge edge, sr_kcurve** out);
/* Weighted K against the field as null, with analytic bands at `level`. */
SR_API sr_status sr_k_weighted(const sr_catalog* catalog, const sr_field* null_field,
                               double rmax, double dr, sr_edge edge, double level,
                               sr_kcurve** out);
SR_API size_t sr_kcurve_size(const sr_kcurve* curve);
/* lower/upper are on the centered-L scale; NaN when the curve has no bands. */
SR_API sr_status sr_kcurve_entry(const sr_kcurve* curve, size_t index, double* r, double* k,
                                 double* centered_l, double* lower, double* upper);
SR_API double sr_kcurve_coverage(const sr_kcurve* curve);
SR_API sr_status sr_kcurve_write_csv(const sr_kcurve* curve, const char* path);
SR_API sr_status sr_kcurve_write_svg(const sr_kcurve* curve, const char* path, const char* title);
SR_API void sr_kcurve_free(sr_kcurve* curve);

/* ---- residual point transforms ---- */
typedef enum sr_transform_kind {
  SR_RESCALE = 0,
  SR_THIN = 1,
  SR_THIN_APPROX = 2,
  SR_SUPERPOSE = 3,
  SR_SUPERTHIN = 4
} sr_transform_kind;

typedef enum sr_axis { SR_AXIS_HORIZONTAL = 0, SR_AXIS_VERTICAL = 1 } sr_axis;

/* `parameter` is k_count for SR_THIN_APPROX and k_rate for SR_SUPERTHIN (NaN
 * selects the field integral over its area); ignored otherwise. For
 * SR_RESCALE, *region_out (if non-NULL) receives the rescaled window. */
SR_API sr_status sr_transform(const sr_catalog* catalog, const sr_field* field,
                              sr_transform_kind kind, double parameter, sr_axis axis,
                              uint64_t seed, sr_residual_set** out,
                              sr_rescaled_region** region_out);
SR_API size_t sr_residual_set_size(const sr_residual_set* set);
SR_API size_t sr_residual_set_simulated(const sr_residual_set* set);
SR_API double sr_residual_set_null_rate(const sr_residual_set* set);
SR_API double sr_residual_set_area(const sr_residual_set* set);
SR_API sr_status sr_residual_set_point(const sr_residual_set* set, size_t index, double* x,
                                       double* y, int* simulated);
SR_API size_t sr_residual_set_note_count(const sr_residual_set* set);
SR_API const char* sr_residual_set_note(const sr_residual_set* set, size_t index);
SR_API sr_status sr_residual_set_write_csv(const sr_residual_set* set, const char* path);
SR_API sr_status sr_residual_set_write_svg(const sr_residual_set* set, const char* path,
                                           const char* title);
/* Weighted-K homogeneity assessment. envelope != 0 uses simulation envelopes
 * (required for rescaled sets). */
SR_API sr_status sr_residual_set_assess(const sr_residual_set* set, double rmax, double dr,
                                        int envelope, int n_sims, uint64_t seed, sr_edge edge,
                                        sr_kcurve** out);
SR_API void sr_residual_set_free(sr_residual_set* set);

SR_API double sr_rescaled_region_area(const sr_rescaled_region* region);
SR_API sr_status sr_rescaled_region_write_csv(const sr_rescaled_region* region, const char* path);
SR_API void sr_rescaled_region_free(sr_rescaled_region* region);

/* ---- digests ---- */
/* Writes the lower-case hex SHA-256 of a file into out (65 bytes). */
SR_API sr_status sr_file_digest(const char* path, char out[65]);
SR_API sr_status sr_buffer_digest(const void* data, size_t length, char out[65]);

#ifdef __cplusplus
}
#endif

#endif

// seisresid command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "seisresid/seisresid.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Failure {
  int code;
  std::string message;
};

void check(sr_status status) {
  if (status == SR_OK) return;
  const int code =
      status == SR_ERR_USAGE || status == SR_ERR_INVALID_ARGUMENT ? kExitUsage : kExitData;
  throw Failure{code, std::string(sr_status_name(status)) + ": " + sr_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{kExitUsage, message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ForecastPtr = std::unique_ptr<sr_forecast, Deleter<sr_forecast, sr_forecast_free>>;
using CatalogPtr = std::unique_ptr<sr_catalog, Deleter<sr_catalog, sr_catalog_free>>;
using FieldPtr = std::unique_ptr<sr_field, Deleter<sr_field, sr_field_free>>;
using MapPtr = std::unique_ptr<sr_residual_map, Deleter<sr_residual_map, sr_residual_map_free>>;
using CurvePtr = std::unique_ptr<sr_kcurve, Deleter<sr_kcurve, sr_kcurve_free>>;
using SetPtr = std::unique_ptr<sr_residual_set, Deleter<sr_residual_set, sr_residual_set_free>>;
using RegionPtr =
    std::unique_ptr<sr_rescaled_region, Deleter<sr_rescaled_region, sr_rescaled_region_free>>;

struct Options {
  std::vector<std::string> forecasts;
  std::string forecast_a, forecast_b, catalog;
  double mag_min = 3.95;
  double depth_max = 30.0;
  double window_fraction = 1.0;
  int sims = 1000;
  std::uint64_t seed = 0;
  std::string kind;
  double k_count = std::numeric_limits<double>::quiet_NaN();
  double k_rate = std::numeric_limits<double>::quiet_NaN();
  double bare_k = std::numeric_limits<double>::quiet_NaN();
  double rmax = 0.7;
  double dr = 0.01;
  std::string edge = "none";
  bool analytic = false;
  bool assess = false;
  std::string svg, out;
};

std::string digest(const std::string& path) {
  char hex[65];
  check(sr_file_digest(path.c_str(), hex));
  return hex;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Run {
 public:
  Run(std::string command, const Options& opt) : command_(std::move(command)), opt_(opt) {}

  void input(const std::string& role, const std::string& path) {
    inputs_.push_back({{"role", role}, {"path", path}, {"sha256", digest(path)}});
  }
  void param(const std::string& key, ordered_json value) { params_[key] = std::move(value); }
  void output(const std::string& path) {
    if (!path.empty() && path != "-") outputs_.push_back(path);
  }

  ordered_json manifest() const {
    ordered_json m;
    m["command"] = command_;
    m["inputs"] = inputs_;
    m["seed"] = opt_.seed;
    m["parameters"] = params_;
    ordered_json outs = ordered_json::array();
    for (const auto& p : outputs_) outs.push_back({{"path", p}, {"sha256", digest(p)}});
    m["outputs"] = outs;
    m["version"] = sr_version();
    m["timestamp"] = utc_now();
    return m;
  }

  // Sidecar next to each file output, or one manifest at `path`.
  void write_manifest(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw Failure{kExitData, "cannot write " + path};
    const auto text = manifest().dump(2) + "\n";
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  void write_sidecar() const {
    if (outputs_.empty()) return;
    write_manifest(outputs_.front() + ".manifest.json");
  }

 private:
  std::string command_;
  const Options& opt_;
  ordered_json inputs_ = ordered_json::array();
  ordered_json params_ = ordered_json::object();
  std::vector<std::string> outputs_;
};

ForecastPtr load_forecasts(const std::vector<std::string>& paths, Run& run) {
  if (paths.empty()) usage("--forecast is required");
  std::vector<ForecastPtr> parts;
  std::vector<const sr_forecast*> raw;
  for (const auto& p : paths) {
    sr_forecast* f = nullptr;
    check(sr_forecast_load(p.c_str(), &f));
    parts.emplace_back(f);
    raw.push_back(f);
    run.input("forecast", p);
  }
  if (parts.size() == 1) return std::move(parts.front());
  sr_forecast* sum = nullptr;
  check(sr_forecast_sum(raw.data(), raw.size(), &sum));
  return ForecastPtr(sum);
}

ForecastPtr load_one(const std::string& path, const char* role, Run& run) {
  sr_forecast* f = nullptr;
  check(sr_forecast_load(path.c_str(), &f));
  run.input(role, path);
  return ForecastPtr(f);
}

FieldPtr field_of(const sr_forecast* forecast, const Options& opt) {
  sr_field* field = nullptr;
  check(sr_field_from_forecast(forecast, opt.mag_min, opt.window_fraction, &field));
  return FieldPtr(field);
}

CatalogPtr filtered_catalog(const sr_forecast* forecast, const Options& opt, Run& run) {
  if (opt.catalog.empty()) usage("--catalog is required");
  sr_catalog* raw = nullptr;
  check(sr_catalog_load(opt.catalog.c_str(), &raw));
  CatalogPtr all(raw);
  run.input("catalog", opt.catalog);
  sr_catalog* kept = nullptr;
  sr_filter_counts counts{};
  check(sr_catalog_filter(all.get(), forecast, opt.mag_min, opt.depth_max, &kept, &counts));
  run.param("events_kept", counts.kept);
  run.param("events_dropped", ordered_json{{"below_magnitude", counts.below_magnitude},
                                           {"too_deep", counts.too_deep},
                                           {"outside_window", counts.outside_window},
                                           {"outside_region", counts.outside_region}});
  return CatalogPtr(kept);
}

void common_params(Run& run, const Options& opt) {
  run.param("mag_min", opt.mag_min);
  run.param("depth_max", opt.depth_max);
  run.param("window_fraction", opt.window_fraction);
}

sr_edge edge_of(const std::string& s) {
  return s == "isotropic" ? SR_EDGE_ISOTROPIC : SR_EDGE_NONE;
}

void write_score(const sr_score& score, const Options& opt, Run& run) {
  check(sr_score_write_json(&score, opt.out.c_str()));
  run.output(opt.out);
  run.write_sidecar();
}

int cmd_score(bool is_n, const Options& opt) {
  Run run(is_n ? "ntest" : "ltest", opt);
  auto forecast = load_forecasts(opt.forecasts, run);
  auto catalog = filtered_catalog(forecast.get(), opt, run);
  auto field = field_of(forecast.get(), opt);
  common_params(run, opt);
  run.param("sims", opt.sims);
  sr_score score{};
  if (is_n) {
    run.param("analytic", opt.analytic);
    check(sr_n_test(field.get(), catalog.get(), opt.sims, opt.seed,
                    opt.analytic ? SR_ANALYTIC : SR_SIMULATION, &score));
  } else {
    if (opt.analytic) usage("--analytic applies to ntest only");
    check(sr_l_test(field.get(), catalog.get(), opt.sims, opt.seed, &score));
  }
  write_score(score, opt, run);
  return 0;
}

int cmd_resid(const Options& opt) {
  Run run("resid", opt);
  const std::string kind = opt.kind.empty() ? "raw" : opt.kind;
  run.param("kind", kind);
  common_params(run, opt);
  MapPtr map;
  CatalogPtr catalog;
  if (kind == "deviance") {
    if (opt.forecast_a.empty() || opt.forecast_b.empty())
      usage("--kind deviance needs --forecast-a and --forecast-b");
    auto fa = load_one(opt.forecast_a, "forecast_a", run);
    auto fb = load_one(opt.forecast_b, "forecast_b", run);
    catalog = filtered_catalog(fa.get(), opt, run);
    auto a = field_of(fa.get(), opt);
    auto b = field_of(fb.get(), opt);
    sr_residual_map* m = nullptr;
    check(sr_deviance_residuals(a.get(), b.get(), catalog.get(), &m));
    map.reset(m);
  } else if (kind == "raw" || kind == "pearson") {
    auto forecast = load_forecasts(opt.forecasts, run);
    catalog = filtered_catalog(forecast.get(), opt, run);
    auto field = field_of(forecast.get(), opt);
    sr_residual_map* m = nullptr;
    check(sr_residuals(field.get(), catalog.get(), kind == "raw" ? SR_RAW : SR_PEARSON, &m));
    map.reset(m);
  } else {
    usage("--kind must be raw, pearson or deviance");
  }
  check(sr_residual_map_write_csv(map.get(), opt.out.c_str()));
  run.output(opt.out);
  if (!opt.svg.empty()) {
    check(sr_residual_map_write_svg(map.get(), catalog.get(), opt.svg.c_str(),
                                    (kind + " residuals").c_str()));
    run.output(opt.svg);
  }
  ordered_json footer;
  footer["kind"] = kind;
  footer["pixels"] = sr_residual_map_size(map.get());
  footer["skipped"] = sr_residual_map_skipped(map.get());
  if (kind == "deviance") {
    double lr = 0.0;
    check(sr_residual_map_lr_score(map.get(), &lr));
    if (std::isfinite(lr)) footer["lr_score"] = lr;
    else footer["lr_score"] = lr > 0 ? "inf" : "-inf";
  } else {
    const double mx = sr_residual_map_max(map.get());
    if (std::isfinite(mx)) footer["max"] = mx;
  }
  std::cout << footer.dump() << "\n";
  run.write_sidecar();
  return 0;
}

int cmd_k(const Options& opt) {
  Run run("k", opt);
  const std::string kind = opt.kind.empty() ? "weighted" : opt.kind;
  if (kind != "weighted" && kind != "plain") usage("--kind must be weighted or plain");
  auto forecast = load_forecasts(opt.forecasts, run);
  auto catalog = filtered_catalog(forecast.get(), opt, run);
  auto field = field_of(forecast.get(), opt);
  common_params(run, opt);
  run.param("kind", kind);
  run.param("rmax", opt.rmax);
  run.param("dr", opt.dr);
  run.param("edge", opt.edge);
  sr_kcurve* c = nullptr;
  if (kind == "weighted")
    check(sr_k_weighted(catalog.get(), field.get(), opt.rmax, opt.dr, edge_of(opt.edge), 0.95, &c));
  else
    check(sr_k_plain(catalog.get(), field.get(), opt.rmax, opt.dr, edge_of(opt.edge), &c));
  CurvePtr curve(c);
  check(sr_kcurve_write_csv(curve.get(), opt.out.c_str()));
  run.output(opt.out);
  if (!opt.svg.empty()) {
    check(sr_kcurve_write_svg(curve.get(), opt.svg.c_str(),
                              kind == "weighted" ? "Weighted L-function" : "L-function"));
    run.output(opt.svg);
  }
  run.write_sidecar();
  return 0;
}

sr_transform_kind transform_of(const std::string& s) {
  if (s == "rescale") return SR_RESCALE;
  if (s == "thin") return SR_THIN;
  if (s == "thin-approx") return SR_THIN_APPROX;
  if (s == "superpose") return SR_SUPERPOSE;
  if (s == "superthin") return SR_SUPERTHIN;
  usage("--kind must be rescale, thin, thin-approx, superpose or superthin");
}

int cmd_transform(const Options& opt) {
  if (!std::isnan(opt.bare_k))
    usage("--k is ambiguous: use --k-count (expected retained events, thin-approx) or "
          "--k-rate (events per square degree, superthin)");
  if (opt.out.empty() || opt.out == "-") usage("transform --out must name a directory");
  const auto kind = transform_of(opt.kind);
  double parameter = std::numeric_limits<double>::quiet_NaN();
  if (kind == SR_THIN_APPROX) {
    if (std::isnan(opt.k_count)) usage("thin-approx needs --k-count");
    if (!std::isnan(opt.k_rate)) usage("--k-rate applies to superthin, not thin-approx");
    parameter = opt.k_count;
  } else if (kind == SR_SUPERTHIN) {
    if (!std::isnan(opt.k_count)) usage("--k-count applies to thin-approx, not superthin");
    parameter = opt.k_rate;
  } else if (!std::isnan(opt.k_count) || !std::isnan(opt.k_rate)) {
    usage("--k-count / --k-rate apply only to thin-approx / superthin");
  }

  Run run("transform", opt);
  auto forecast = load_forecasts(opt.forecasts, run);
  auto catalog = filtered_catalog(forecast.get(), opt, run);
  auto field = field_of(forecast.get(), opt);
  common_params(run, opt);
  run.param("kind", opt.kind);
  if (kind == SR_THIN_APPROX) run.param("k_count", parameter);
  if (kind == SR_SUPERTHIN) {
    run.param("k_rate", std::isnan(parameter) ? sr_field_integral(field.get()) /
                                                    sr_field_area(field.get())
                                              : parameter);
    if (std::isnan(parameter))
      run.param("k_rate_source", "forecast integral divided by region area");
  }

  sr_residual_set* s = nullptr;
  sr_rescaled_region* r = nullptr;
  check(sr_transform(catalog.get(), field.get(), kind, parameter, SR_AXIS_HORIZONTAL, opt.seed, &s,
                     &r));
  SetPtr set(s);
  RegionPtr region(r);

  std::error_code ec;
  fs::create_directories(opt.out, ec);
  if (ec) throw Failure{kExitData, "cannot create directory " + opt.out + ": " + ec.message()};
  const fs::path dir(opt.out);

  const auto points = (dir / "points.csv").string();
  check(sr_residual_set_write_csv(set.get(), points.c_str()));
  run.output(points);
  if (region) {
    const auto rpath = (dir / "region.csv").string();
    check(sr_rescaled_region_write_csv(region.get(), rpath.c_str()));
    run.output(rpath);
    run.param("rescaled_area", sr_rescaled_region_area(region.get()));
  }
  run.param("null_rate", sr_residual_set_null_rate(set.get()));
  run.param("points", sr_residual_set_size(set.get()));
  run.param("simulated_points", sr_residual_set_simulated(set.get()));
  ordered_json notes = ordered_json::array();
  for (size_t i = 0; i < sr_residual_set_note_count(set.get()); ++i)
    notes.push_back(sr_residual_set_note(set.get(), i));
  run.param("notes", notes);
  if (!opt.svg.empty()) {
    check(sr_residual_set_write_svg(set.get(), opt.svg.c_str(),
                                    (opt.kind + " residuals").c_str()));
    run.output(opt.svg);
  }

  if (opt.assess) {
    const bool envelope = kind == SR_RESCALE;
    run.param("assessment_bands", envelope ? "envelope" : "analytic");
    run.param("rmax", opt.rmax);
    run.param("dr", opt.dr);
    run.param("edge", opt.edge);
    if (envelope) run.param("sims", opt.sims);
    sr_kcurve* c = nullptr;
    check(sr_residual_set_assess(set.get(), opt.rmax, opt.dr, envelope ? 1 : 0, opt.sims, opt.seed,
                                 edge_of(opt.edge), &c));
    CurvePtr curve(c);
    const auto apath = (dir / "assessment.csv").string();
    check(sr_kcurve_write_csv(curve.get(), apath.c_str()));
    run.output(apath);
    run.param("band_coverage", sr_kcurve_coverage(curve.get()));
    if (!opt.svg.empty()) {
      const auto asvg = (dir / "assessment.svg").string();
      check(sr_kcurve_write_svg(curve.get(), asvg.c_str(),
                                ("Weighted L-function, " + opt.kind + " residuals").c_str()));
      run.output(asvg);
    }
  }
  run.write_manifest((dir / "manifest.json").string());
  return 0;
}

int cmd_simulate(const Options& opt) {
  Run run("simulate", opt);
  auto forecast = load_forecasts(opt.forecasts, run);
  auto field = field_of(forecast.get(), opt);
  common_params(run, opt);
  sr_catalog* c = nullptr;
  check(sr_simulate_catalog(field.get(), opt.seed, &c));
  CatalogPtr catalog(c);
  check(sr_catalog_write(catalog.get(), opt.out.c_str()));
  run.output(opt.out);
  run.write_sidecar();
  return 0;
}

int cmd_report(const Options& opt) {
  if (opt.out.empty() || opt.out == "-") usage("report --out must name a directory");
  Run run("report", opt);
  auto forecast = load_forecasts(opt.forecasts, run);
  auto catalog = filtered_catalog(forecast.get(), opt, run);
  auto field = field_of(forecast.get(), opt);
  common_params(run, opt);
  run.param("sims", opt.sims);
  run.param("rmax", opt.rmax);
  run.param("dr", opt.dr);

  std::error_code ec;
  fs::create_directories(opt.out, ec);
  if (ec) throw Failure{kExitData, "cannot create directory " + opt.out + ": " + ec.message()};
  const fs::path dir(opt.out);
  auto at = [&](const char* name) { return (dir / name).string(); };

  sr_score score{};
  check(sr_n_test(field.get(), catalog.get(), opt.sims, opt.seed, SR_SIMULATION, &score));
  check(sr_score_write_json(&score, at("ntest.json").c_str()));
  run.output(at("ntest.json"));
  check(sr_l_test(field.get(), catalog.get(), opt.sims, opt.seed, &score));
  check(sr_score_write_json(&score, at("ltest.json").c_str()));
  run.output(at("ltest.json"));

  for (auto [kind, name] : {std::pair{SR_RAW, "raw"}, std::pair{SR_PEARSON, "pearson"}}) {
    sr_residual_map* m = nullptr;
    check(sr_residuals(field.get(), catalog.get(), kind, &m));
    MapPtr map(m);
    const auto csv = at((std::string(name) + "_residuals.csv").c_str());
    const auto svg = at((std::string(name) + "_residuals.svg").c_str());
    check(sr_residual_map_write_csv(map.get(), csv.c_str()));
    check(sr_residual_map_write_svg(map.get(), catalog.get(), svg.c_str(),
                                    (std::string(name) + " residuals").c_str()));
    run.output(csv);
    run.output(svg);
  }

  if (sr_catalog_size(catalog.get()) >= 2) {
    sr_kcurve* c = nullptr;
    check(sr_k_weighted(catalog.get(), field.get(), opt.rmax, opt.dr, edge_of(opt.edge), 0.95, &c));
    CurvePtr curve(c);
    check(sr_kcurve_write_csv(curve.get(), at("weighted_k.csv").c_str()));
    check(sr_kcurve_write_svg(curve.get(), at("weighted_k.svg").c_str(), "Weighted L-function"));
    run.output(at("weighted_k.csv"));
    run.output(at("weighted_k.svg"));
  } else {
    run.param("weighted_k", "skipped: fewer than two events");
  }

  sr_residual_set* s = nullptr;
  check(sr_transform(catalog.get(), field.get(), SR_SUPERTHIN, opt.k_rate, SR_AXIS_HORIZONTAL,
                     opt.seed, &s, nullptr));
  SetPtr set(s);
  run.param("superthin_k_rate", sr_residual_set_null_rate(set.get()));
  check(sr_residual_set_write_csv(set.get(), at("superthin_points.csv").c_str()));
  check(sr_residual_set_write_svg(set.get(), at("superthin_points.svg").c_str(),
                                  "superthin residuals"));
  run.output(at("superthin_points.csv"));
  run.output(at("superthin_points.svg"));
  if (sr_residual_set_size(set.get()) >= 2) {
    sr_kcurve* c = nullptr;
    check(sr_residual_set_assess(set.get(), opt.rmax, opt.dr, 0, opt.sims, opt.seed,
                                 edge_of(opt.edge), &c));
    CurvePtr curve(c);
    check(sr_kcurve_write_csv(curve.get(), at("superthin_assessment.csv").c_str()));
    check(sr_kcurve_write_svg(curve.get(), at("superthin_assessment.svg").c_str(),
                              "Weighted L-function, superthin residuals"));
    run.output(at("superthin_assessment.csv"));
    run.output(at("superthin_assessment.svg"));
  }
  run.write_manifest(at("manifest.json"));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual diagnostics for gridded earthquake forecasts"};
  app.set_version_flag("--version", std::string(sr_version()));
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--forecast", opt.forecasts, "forecast file (repeat to sum)");
    sub->add_option("--catalog", opt.catalog, "catalog CSV");
    sub->add_option("--mag-min", opt.mag_min, "magnitude threshold")->capture_default_str();
    sub->add_option("--depth-max", opt.depth_max, "maximum depth (km)")->capture_default_str();
    sub->add_option("--window-fraction", opt.window_fraction, "elapsed share of the window")
        ->capture_default_str();
    sub->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    sub->add_option("--out", opt.out, "output path (stdout when omitted)");
  };
  auto add_radii = [&](CLI::App* sub) {
    sub->add_option("--rmax", opt.rmax, "largest radius (degrees)")->capture_default_str();
    sub->add_option("--dr", opt.dr, "radius step (degrees)")->capture_default_str();
    sub->add_option("--edge", opt.edge, "edge correction")
        ->check(CLI::IsMember({"none", "isotropic"}))
        ->capture_default_str();
  };

  auto* ntest = app.add_subcommand("ntest", "number test (delta)");
  add_io(ntest);
  ntest->add_option("--sims", opt.sims, "simulations")->capture_default_str();
  ntest->add_flag("--analytic", opt.analytic, "use the Poisson CDF instead of simulation");

  auto* ltest = app.add_subcommand("ltest", "likelihood test (gamma)");
  add_io(ltest);
  ltest->add_option("--sims", opt.sims, "simulations")->capture_default_str();

  auto* resid = app.add_subcommand("resid", "pixel residual map");
  add_io(resid);
  resid->add_option("--kind", opt.kind, "raw, pearson or deviance");
  resid->add_option("--forecast-a", opt.forecast_a, "first model (deviance)");
  resid->add_option("--forecast-b", opt.forecast_b, "second model (deviance)");
  resid->add_option("--svg", opt.svg, "pixel map figure");

  auto* k = app.add_subcommand("k", "K-function with bands");
  add_io(k);
  add_radii(k);
  k->add_option("--kind", opt.kind, "weighted (default) or plain");
  k->add_option("--svg", opt.svg, "L-function figure");

  auto* transform = app.add_subcommand("transform", "residual point transforms");
  add_io(transform);
  add_radii(transform);
  transform->add_option("--kind", opt.kind, "rescale, thin, thin-approx, superpose, superthin")
      ->required();
  transform->add_option("--k-count", opt.k_count, "expected retained events (thin-approx)");
  transform->add_option("--k-rate", opt.k_rate, "events per square degree (superthin)");
  transform->add_option("--k", opt.bare_k, "rejected; use --k-count or --k-rate")
      ->group("");
  transform->add_option("--sims", opt.sims, "envelope simulations")->capture_default_str();
  transform->add_flag("--assess", opt.assess, "weighted-K homogeneity assessment");
  transform->add_option("--svg", opt.svg, "residual point figure");

  auto* simulate = app.add_subcommand("simulate", "simulate a catalog from a forecast");
  add_io(simulate);

  auto* report = app.add_subcommand("report", "full evaluation into one directory");
  add_io(report);
  add_radii(report);
  report->add_option("--sims", opt.sims, "simulations")->capture_default_str();
  report->add_option("--k-rate", opt.k_rate, "super-thinning rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ntest) return cmd_score(true, opt);
    if (*ltest) return cmd_score(false, opt);
    if (*resid) return cmd_resid(opt);
    if (*k) return cmd_k(opt);
    if (*transform) return cmd_transform(opt);
    if (*simulate) return cmd_simulate(opt);
    if (*report) return cmd_report(opt);
  } catch (const Failure& f) {
    std::cerr << "seisresid: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "seisresid: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

#include "seisresid/forecast.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "seisresid/error.hpp"
#include "text_util.hpp"

namespace seisresid {

namespace {

constexpr double kAlignTol = 1e-6;  // relative to pixel size

struct RawRow {
  std::size_t line;
  double lon_lo, lon_hi, lat_lo, lat_hi, depth_lo, depth_hi, mag_lo, mag_hi, rate;
  bool active;
};

using BinKey = std::tuple<std::size_t, long long, long long>;

BinKey key_of(std::size_t pixel, double mag_lo, double mag_hi) {
  return {pixel, std::llround(mag_lo * 1e6), std::llround(mag_hi * 1e6)};
}

bool bin_less(const ForecastBin& a, const ForecastBin& b) {
  return std::tie(a.pixel, a.mag_lo, a.mag_hi) < std::tie(b.pixel, b.mag_lo, b.mag_hi);
}

double parse_field(std::string_view tok, std::size_t line, const char* what) {
  auto v = detail::parse_double(tok);
  if (!v) throw ParseError(line, std::string("cannot parse ") + what + " '" + std::string(tok) + "'");
  return *v;
}

int aligned_index(double value, double origin, double step, std::size_t line, const char* axis) {
  const double t = (value - origin) / step;
  const double r = std::round(t);
  if (std::abs(t - r) > kAlignTol)
    throw Error(ErrorKind::schema, "line " + std::to_string(line) + ": " + axis +
                                       " edge is not aligned with the grid");
  return static_cast<int>(r);
}

}  // namespace

Forecast::Forecast(Grid grid, std::vector<ForecastBin> bins, TimeWindow window)
    : grid_(std::move(grid)), bins_(std::move(bins)), window_(window) {
  if (!(window_.start < window_.end))
    throw Error(ErrorKind::validation, "forecast window start must precede its end");
  std::sort(bins_.begin(), bins_.end(), bin_less);
  std::set<BinKey> seen;
  for (const auto& b : bins_) {
    if (!grid_.is_active(b.pixel))
      throw Error(ErrorKind::validation, "forecast bin on inactive pixel " + std::to_string(b.pixel));
    if (!(b.rate >= 0.0) || !std::isfinite(b.rate))
      throw Error(ErrorKind::validation, "forecast rate must be finite and non-negative");
    if (!(b.mag_lo < b.mag_hi))
      throw Error(ErrorKind::validation, "magnitude bin must satisfy mag_lo < mag_hi");
    if (!seen.insert(key_of(b.pixel, b.mag_lo, b.mag_hi)).second)
      throw Error(ErrorKind::schema, "duplicate (pixel, magnitude bin) key at pixel " +
                                         std::to_string(b.pixel));
  }
}

double Forecast::min_magnitude() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : bins_) m = std::min(m, b.mag_lo);
  return m;
}

double Forecast::max_magnitude() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& b : bins_) m = std::max(m, b.mag_hi);
  return m;
}

double Forecast::total_rate() const {
  double s = 0.0;
  for (const auto& b : bins_) s += b.rate;
  return s;
}

std::vector<double> Forecast::pixel_rates(double mag_min) const {
  std::vector<double> out(grid_.pixel_count(), 0.0);
  for (const auto& b : bins_)
    if (b.mag_lo >= mag_min - 1e-9) out[b.pixel] += b.rate;
  return out;
}

std::vector<std::uint8_t> Forecast::forecast_pixels() const {
  std::vector<std::uint8_t> out(grid_.pixel_count(), 0);
  for (const auto& b : bins_) out[b.pixel] = 1;
  return out;
}

Forecast parse_forecast(std::string_view text) {
  std::vector<RawRow> rows;
  TimeWindow window = TimeWindow::unbounded();
  std::optional<std::array<double, 6>> grid_spec;
  std::size_t grid_line = 0;

  detail::for_each_line(text, [&](std::size_t line, std::string_view raw) {
    const auto s = detail::trim(raw);
    if (s.empty()) return;
    if (s.front() == '#') {
      auto body = detail::trim(s.substr(1));
      if (body.rfind("window:", 0) == 0) {
        auto toks = detail::split_ws(body.substr(7));
        if (toks.size() != 2) throw ParseError(line, "window directive needs two timestamps");
        auto a = parse_iso8601(toks[0]);
        auto b = parse_iso8601(toks[1]);
        if (!a || !b) throw ParseError(line, "unparseable timestamp in window directive");
        window = {*a, *b};
      } else if (body.rfind("grid:", 0) == 0) {
        auto toks = detail::split_ws(body.substr(5));
        if (toks.size() != 6) throw ParseError(line, "grid directive needs six numbers");
        std::array<double, 6> g{};
        for (int i = 0; i < 6; ++i) g[i] = parse_field(toks[i], line, "grid value");
        grid_spec = g;
        grid_line = line;
      }
      return;
    }
    auto toks = detail::split_ws(s);
    if (toks.size() != 10)
      throw ParseError(line, "expected 10 columns, found " + std::to_string(toks.size()));
    RawRow r{};
    r.line = line;
    r.lon_lo = parse_field(toks[0], line, "lon_min");
    r.lon_hi = parse_field(toks[1], line, "lon_max");
    r.lat_lo = parse_field(toks[2], line, "lat_min");
    r.lat_hi = parse_field(toks[3], line, "lat_max");
    r.depth_lo = parse_field(toks[4], line, "depth_min");
    r.depth_hi = parse_field(toks[5], line, "depth_max");
    r.mag_lo = parse_field(toks[6], line, "mag_lo");
    r.mag_hi = parse_field(toks[7], line, "mag_hi");
    r.rate = parse_field(toks[8], line, "rate");
    const double flag = parse_field(toks[9], line, "mask flag");
    if (flag != 0.0 && flag != 1.0) throw ParseError(line, "mask flag must be 0 or 1");
    r.active = flag == 1.0;
    if (!(r.rate >= 0.0) || !std::isfinite(r.rate))
      throw Error(ErrorKind::validation,
                  "line " + std::to_string(line) + ": rate must be finite and non-negative");
    if (!(r.mag_lo < r.mag_hi))
      throw Error(ErrorKind::validation, "line " + std::to_string(line) + ": mag_lo must be below mag_hi");
    rows.push_back(r);
  });

  if (!(window.start < window.end))
    throw Error(ErrorKind::validation, "forecast window start must precede its end");

  Grid layout;
  if (grid_spec) {
    const auto& g = *grid_spec;
    try {
      layout = Grid::from_bounds(g[0], g[1], g[2], g[3], g[4], g[5]);
    } catch (const Error& e) {
      throw Error(ErrorKind::schema, "line " + std::to_string(grid_line) + ": " + e.what());
    }
  } else if (!rows.empty()) {
    const double dx = rows.front().lon_hi - rows.front().lon_lo;
    const double dy = rows.front().lat_hi - rows.front().lat_lo;
    if (!(dx > 0.0) || !(dy > 0.0))
      throw Error(ErrorKind::schema, "line " + std::to_string(rows.front().line) +
                                         ": pixel must have positive extent");
    double lon_min = rows.front().lon_lo, lon_max = rows.front().lon_hi;
    double lat_min = rows.front().lat_lo, lat_max = rows.front().lat_hi;
    for (const auto& r : rows) {
      lon_min = std::min(lon_min, r.lon_lo);
      lon_max = std::max(lon_max, r.lon_hi);
      lat_min = std::min(lat_min, r.lat_lo);
      lat_max = std::max(lat_max, r.lat_hi);
    }
    layout = Grid::from_bounds(lon_min, lon_max, lat_min, lat_max, dx, dy);
  } else {
    return Forecast(Grid{}, {}, window);
  }

  const double dx = layout.dx(), dy = layout.dy();
  std::vector<std::uint8_t> covered(layout.pixel_count(), 0), masked(layout.pixel_count(), 0);
  std::vector<std::size_t> pixel_of(rows.size());
  std::set<BinKey> seen;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (std::abs((r.lon_hi - r.lon_lo) - dx) > kAlignTol * dx ||
        std::abs((r.lat_hi - r.lat_lo) - dy) > kAlignTol * dy)
      throw Error(ErrorKind::schema, "line " + std::to_string(r.line) +
                                         ": pixel size differs from the rest of the grid");
    const int ix = aligned_index(r.lon_lo, layout.lon_min(), dx, r.line, "longitude");
    const int iy = aligned_index(r.lat_lo, layout.lat_min(), dy, r.line, "latitude");
    if (ix < 0 || iy < 0 || ix >= layout.nx() || iy >= layout.ny())
      throw Error(ErrorKind::schema, "line " + std::to_string(r.line) + ": pixel outside the grid");
    const auto p = layout.index(ix, iy);
    if (!seen.insert(key_of(p, r.mag_lo, r.mag_hi)).second)
      throw Error(ErrorKind::schema, "line " + std::to_string(r.line) +
                                         ": duplicate (pixel, magnitude bin) key");
    pixel_of[k] = p;
    covered[p] = 1;
    if (!r.active) masked[p] = 1;
  }

  std::vector<std::uint8_t> active(layout.pixel_count(), 0);
  for (std::size_t p = 0; p < active.size(); ++p) active[p] = covered[p] && !masked[p];
  Grid grid = layout.with_mask(std::move(active));

  std::vector<ForecastBin> bins;
  bins.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!grid.is_active(pixel_of[k])) continue;
    const auto& r = rows[k];
    bins.push_back({pixel_of[k], r.mag_lo, r.mag_hi, r.rate, r.depth_lo, r.depth_hi});
  }
  return Forecast(std::move(grid), std::move(bins), window);
}

Forecast load_forecast(const std::string& path) { return parse_forecast(detail::read_file(path)); }

std::string serialize_forecast(const Forecast& f) {
  std::ostringstream out;
  if (!f.window().is_unbounded())
    out << "# window: " << format_iso8601(f.window().start) << ' '
        << format_iso8601(f.window().end) << '\n';
  const auto& g = f.grid();
  if (g.empty()) return out.str();
  out << "# grid: " << detail::fmt(g.lon_min()) << ' ' << detail::fmt(g.lon_max()) << ' '
      << detail::fmt(g.lat_min()) << ' ' << detail::fmt(g.lat_max()) << ' '
      << detail::fmt(g.dx()) << ' ' << detail::fmt(g.dy()) << '\n';
  for (const auto& b : f.bins()) {
    const auto pb = g.bounds(b.pixel);
    out << detail::fmt(pb.lon_lo) << ' ' << detail::fmt(pb.lon_hi) << ' ' << detail::fmt(pb.lat_lo)
        << ' ' << detail::fmt(pb.lat_hi) << ' ' << detail::fmt(b.depth_lo) << ' '
        << detail::fmt(b.depth_hi) << ' ' << detail::fmt(b.mag_lo) << ' ' << detail::fmt(b.mag_hi)
        << ' ' << detail::fmt(b.rate) << " 1\n";
  }
  return out.str();
}

Forecast sum_forecasts(const std::vector<Forecast>& parts) {
  if (parts.empty()) throw Error(ErrorKind::domain, "no forecasts to combine");
  if (parts.size() == 1) return parts.front();
  const Grid& base = parts.front().grid();
  std::vector<std::uint8_t> active(base.pixel_count(), 0);
  std::map<BinKey, ForecastBin> merged;
  TimeWindow window = parts.front().window();
  for (const auto& f : parts) {
    if (!f.grid().same_layout(base))
      throw Error(ErrorKind::schema, "forecasts to combine must share one grid");
    for (std::size_t p = 0; p < active.size(); ++p) active[p] |= f.grid().mask()[p];
    window.start = std::min(window.start, f.window().start);
    window.end = std::max(window.end, f.window().end);
    for (const auto& b : f.bins()) {
      auto [it, inserted] = merged.try_emplace(key_of(b.pixel, b.mag_lo, b.mag_hi), b);
      if (!inserted) it->second.rate += b.rate;
    }
  }
  std::vector<ForecastBin> bins;
  bins.reserve(merged.size());
  for (auto& [k, b] : merged) bins.push_back(b);
  return Forecast(base.with_mask(std::move(active)), std::move(bins), window);
}

double moment_from_magnitude(double magnitude) { return std::pow(10.0, 1.5 * magnitude + 9.05); }

double tapered_gr_ratio(double magnitude, double reference_magnitude, double b_value,
                        double corner_magnitude) {
  const double beta = 2.0 * b_value / 3.0;
  // (M_ref / M)^beta, written in magnitude units to avoid overflow.
  double log_ratio = beta * 1.5 * std::log(10.0) * (reference_magnitude - magnitude);
  if (std::isfinite(corner_magnitude)) {
    const double corner = moment_from_magnitude(corner_magnitude);
    log_ratio += (moment_from_magnitude(reference_magnitude) - moment_from_magnitude(magnitude)) / corner;
  }
  return std::exp(log_ratio);
}

Extrapolation gr_extrapolate(const Forecast& forecast, double new_mag_min,
                             const GutenbergRichter& law) {
  if (!(law.b_value > 0.0)) throw Error(ErrorKind::validation, "b-value must be positive");
  for (const auto& r : law.special_regions)
    if (!(r.b_value > 0.0)) throw Error(ErrorKind::validation, "special-region b-value must be positive");
  if (forecast.empty()) return {forecast, "forecast has no bins; nothing to extrapolate"};

  const double old_min = forecast.min_magnitude();
  if (new_mag_min >= old_min - 1e-9)
    return {forecast, "new lower magnitude " + detail::fmt(new_mag_min) +
                          " is not below the forecast's lower bound " + detail::fmt(old_min) +
                          "; forecast left unchanged"};

  double width = 0.0;
  for (const auto& b : forecast.bins())
    if (std::abs(b.mag_lo - old_min) < 1e-9) {
      width = b.mag_hi - b.mag_lo;
      break;
    }
  const auto n_new = std::max<long>(1, std::lround((old_min - new_mag_min) / width));
  std::vector<double> edges(static_cast<std::size_t>(n_new) + 1);
  for (long i = 0; i <= n_new; ++i)
    edges[i] = new_mag_min + (old_min - new_mag_min) * static_cast<double>(i) / n_new;
  edges.back() = old_min;

  const Grid& grid = forecast.grid();
  std::vector<ForecastBin> bins = forecast.bins();
  std::size_t i = 0;
  const auto& old_bins = forecast.bins();
  while (i < old_bins.size()) {
    const std::size_t pixel = old_bins[i].pixel;
    double total = 0.0;
    std::size_t j = i;
    for (; j < old_bins.size() && old_bins[j].pixel == pixel; ++j) total += old_bins[j].rate;

    double b_value = law.b_value;
    const auto c = grid.center(pixel);
    for (const auto& r : law.special_regions)
      if (c.lon >= r.lon_lo && c.lon <= r.lon_hi && c.lat >= r.lat_lo && c.lat <= r.lat_hi) {
        b_value = r.b_value;
        break;
      }

    for (long k = 0; k < n_new; ++k) {
      const double upper = tapered_gr_ratio(edges[k], old_min, b_value, law.corner_magnitude);
      const double lower = tapered_gr_ratio(edges[k + 1], old_min, b_value, law.corner_magnitude);
      bins.push_back({pixel, edges[k], edges[k + 1], total * (upper - lower),
                      old_bins[i].depth_lo, old_bins[i].depth_hi});
    }
    i = j;
  }
  return {Forecast(grid, std::move(bins), forecast.window()), std::nullopt};
}

}  // namespace seisresid

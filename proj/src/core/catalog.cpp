#include "seisresid/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "seisresid/error.hpp"
#include "text_util.hpp"

namespace seisresid {

Catalog parse_catalog(std::string_view text) {
  Catalog cat;
  bool header_seen = false;
  detail::for_each_line(text, [&](std::size_t line, std::string_view raw) {
    auto s = detail::trim(raw);
    if (!header_seen && s.size() >= 3 && s.substr(0, 3) == "\xEF\xBB\xBF") s = detail::trim(s.substr(3));
    if (s.empty() || s.front() == '#') return;
    if (!header_seen) {
      auto cols = detail::split(s, ',');
      const std::vector<std::string_view> want{"time", "lon", "lat", "depth", "mag"};
      if (cols != want) throw ParseError(line, "expected header 'time,lon,lat,depth,mag'");
      header_seen = true;
      return;
    }
    auto cols = detail::split(s, ',');
    if (cols.size() != 5)
      throw ParseError(line, "expected 5 columns, found " + std::to_string(cols.size()));
    auto t = parse_iso8601(cols[0]);
    if (!t) throw ParseError(line, "unparseable timestamp '" + std::string(cols[0]) + "'");
    Event e;
    e.time = *t;
    const char* names[] = {"lon", "lat", "depth", "mag"};
    double* targets[] = {&e.lon, &e.lat, &e.depth, &e.magnitude};
    for (int k = 0; k < 4; ++k) {
      auto v = detail::parse_double(cols[k + 1]);
      if (!v || !std::isfinite(*v))
        throw ParseError(line, std::string("cannot parse ") + names[k] + " '" +
                                   std::string(cols[k + 1]) + "'");
      *targets[k] = *v;
    }
    cat.events.push_back(e);
  });
  if (!header_seen && !detail::trim(text).empty())
    throw ParseError(1, "missing header 'time,lon,lat,depth,mag'");
  std::stable_sort(cat.events.begin(), cat.events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  return cat;
}

Catalog load_catalog(const std::string& path) { return parse_catalog(detail::read_file(path)); }

std::string serialize_catalog(const Catalog& catalog) {
  std::ostringstream out;
  out << "time,lon,lat,depth,mag\n";
  for (const auto& e : catalog.events)
    out << format_iso8601(e.time) << ',' << detail::fmt(e.lon) << ',' << detail::fmt(e.lat) << ','
        << detail::fmt(e.depth) << ',' << detail::fmt(e.magnitude) << '\n';
  return out.str();
}

FilterReport filter_catalog(const Catalog& catalog, const Forecast& forecast,
                            const FilterOptions& options) {
  FilterReport report;
  const auto with_bins = forecast.forecast_pixels();
  const Grid& grid = forecast.grid();
  for (const auto& e : catalog.events) {
    if (!(e.magnitude >= options.mag_min - 1e-9)) {
      ++report.below_magnitude;
      continue;
    }
    if (e.depth > options.depth_max) {
      ++report.too_deep;
      continue;
    }
    if (!forecast.window().contains(e.time)) {
      ++report.outside_window;
      continue;
    }
    const auto p = grid.locate_active(e.lon, e.lat);
    if (!p || !with_bins[*p]) {
      ++report.outside_region;
      continue;
    }
    report.catalog.events.push_back(e);
  }
  return report;
}

}  // namespace seisresid

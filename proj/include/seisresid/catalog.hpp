#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seisresid/forecast.hpp"
#include "seisresid/time.hpp"

namespace seisresid {

struct Event {
  TimePoint time{};
  double lon = 0.0;
  double lat = 0.0;
  double depth = 0.0;  // km
  double magnitude = 0.0;
};

// Time-ordered (non-decreasing) event list.
struct Catalog {
  std::vector<Event> events;

  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }
};

// CSV with header "time,lon,lat,depth,mag"; rows are stably sorted by time.
Catalog parse_catalog(std::string_view text);
Catalog load_catalog(const std::string& path);
std::string serialize_catalog(const Catalog& catalog);

struct FilterOptions {
  double mag_min = 3.95;
  double depth_max = 30.0;  // km, inclusive
};

struct FilterReport {
  Catalog catalog;
  std::size_t below_magnitude = 0;
  std::size_t too_deep = 0;
  std::size_t outside_window = 0;
  std::size_t outside_region = 0;
};

// Keeps events with magnitude >= mag_min, depth <= depth_max, time inside the
// forecast window and location inside an active pixel that carries bins.
FilterReport filter_catalog(const Catalog& catalog, const Forecast& forecast,
                            const FilterOptions& options = {});

}  // namespace seisresid

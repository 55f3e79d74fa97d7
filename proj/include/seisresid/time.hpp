#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace seisresid {

using TimePoint = std::chrono::sys_time<std::chrono::milliseconds>;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS[.fff][Z]" (space allowed in
// place of 'T'). Returns nullopt on anything else.
std::optional<TimePoint> parse_iso8601(std::string_view text);

// Always "YYYY-MM-DDTHH:MM:SS[.mmm]Z"; milliseconds printed only when nonzero.
std::string format_iso8601(TimePoint t);

// Half-open [start, end).
struct TimeWindow {
  TimePoint start{TimePoint::min()};
  TimePoint end{TimePoint::max()};

  static TimeWindow unbounded() { return {}; }
  bool is_unbounded() const { return start == TimePoint::min() && end == TimePoint::max(); }
  bool contains(TimePoint t) const { return start <= t && t < end; }
  double seconds() const {
    return std::chrono::duration<double>(end - start).count();
  }
};

}  // namespace seisresid

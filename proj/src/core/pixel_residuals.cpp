#include "seisresid/pixel_residuals.hpp"

#include <cmath>
#include <limits>

#include "seisresid/consistency.hpp"
#include "seisresid/error.hpp"

namespace seisresid {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

const PixelResidual* PixelResidualMap::find(std::size_t pixel) const {
  for (const auto& v : values)
    if (v.pixel == pixel) return &v;
  return nullptr;
}

double PixelResidualMap::max_value() const {
  double best = kNaN;
  for (const auto& v : values)
    if (v.flag == PixelFlag::ok && (std::isnan(best) || v.value > best)) best = v.value;
  return best;
}

PixelResidualMap raw_residuals(const IntensityField& field, const Catalog& catalog) {
  PixelResidualMap map{field.grid(), ResidualKind::raw, {}, {}};
  const auto counts = pixel_counts(field, catalog);
  for (auto p : field.grid().active_pixels())
    map.values.push_back({p, counts[p] - field.pixel_integral(p), PixelFlag::ok});
  return map;
}

PixelResidualMap pearson_residuals(const IntensityField& field, const Catalog& catalog) {
  PixelResidualMap map{field.grid(), ResidualKind::pearson, {}, {}};
  const auto counts = pixel_counts(field, catalog);
  const double area = field.grid().pixel_area();
  for (auto p : field.grid().active_pixels()) {
    const double v = field.value(p);
    if (v == 0.0) {
      map.values.push_back({p, kNaN, PixelFlag::skipped});
      map.skipped.push_back({p, counts[p] > 0 ? "zero forecast rate with observed events"
                                               : "zero forecast rate"});
      continue;
    }
    const double root = std::sqrt(v);
    map.values.push_back({p, counts[p] / root - root * area, PixelFlag::ok});
  }
  return map;
}

PixelResidualMap deviance_residuals(const IntensityField& field_1, const IntensityField& field_2,
                                    const Catalog& catalog) {
  const Grid& g1 = field_1.grid();
  if (!g1.same_layout(field_2.grid()))
    throw Error(ErrorKind::schema, "deviance residuals need both fields on the same grid");
  std::vector<std::uint8_t> both(g1.pixel_count(), 0);
  for (std::size_t p = 0; p < both.size(); ++p)
    both[p] = g1.is_active(p) && field_2.grid().is_active(p);
  const Grid shared = g1.with_mask(both);

  PixelResidualMap map{shared, ResidualKind::deviance, {}, {}};
  std::vector<std::uint32_t> counts(g1.pixel_count(), 0);
  for (const auto& e : catalog.events)
    if (auto p = shared.locate_active(e.lon, e.lat)) ++counts[*p];

  for (std::size_t p = 0; p < g1.pixel_count(); ++p) {
    const bool a1 = g1.is_active(p), a2 = field_2.grid().is_active(p);
    if (!a1 && !a2) continue;
    if (a1 != a2) {
      map.skipped.push_back({p, "pixel active in only one model"});
      continue;
    }
    const double n = counts[p];
    const double v1 = field_1.value(p), v2 = field_2.value(p);
    const double l1 = field_1.pixel_integral(p), l2 = field_2.pixel_integral(p);
    if (n > 0.0 && (v1 == 0.0 || v2 == 0.0)) {
      if (v1 == 0.0 && v2 == 0.0) {
        map.values.push_back({p, kNaN, PixelFlag::skipped});
        map.skipped.push_back({p, "events in a pixel where both models forecast zero"});
      } else if (v1 == 0.0) {
        map.values.push_back({p, -kInf, PixelFlag::neg_inf});
        map.skipped.push_back({p, "events where model 1 forecasts zero"});
      } else {
        map.values.push_back({p, kInf, PixelFlag::pos_inf});
        map.skipped.push_back({p, "events where model 2 forecasts zero"});
      }
      continue;
    }
    double value = -(l1 - l2);
    if (n > 0.0) value += n * (std::log(v1) - std::log(v2));
    map.values.push_back({p, value, PixelFlag::ok});
  }
  return map;
}

double lr_score(const PixelResidualMap& map) {
  if (map.kind != ResidualKind::deviance)
    throw Error(ErrorKind::domain, "log-likelihood ratio score needs a deviance map");
  double sum = 0.0;
  for (const auto& v : map.values) {
    if (v.flag == PixelFlag::skipped) continue;
    sum += v.value;
  }
  return sum;
}

}  // namespace seisresid

#pragma once

#include <string>

#include "seisresid/catalog.hpp"
#include "seisresid/consistency.hpp"
#include "seisresid/intensity.hpp"
#include "seisresid/pixel_residuals.hpp"
#include "seisresid/second_order.hpp"
#include "seisresid/transforms.hpp"

namespace seisresid::report {

inline constexpr const char* kVersion = "0.3.0";

// pixel_index,lon_center,lat_center,rate
std::string field_csv(const IntensityField& field);
// pixel_index,lon_center,lat_center,value,flag
std::string residual_map_csv(const PixelResidualMap& map);
// r,k,centered_l,lower,upper,kind; lower/upper on the centered-L scale,
// empty when the curve carries no bands.
std::string kcurve_csv(const KCurve& curve);
// x,y,label,transform,seed
std::string residual_set_csv(const ResidualSet& set);
// y_lo,y_hi,t_of_y (strip bounds are longitudes for vertical rescaling)
std::string rescaled_region_csv(const RescaledRegion& region);

// One JSON object; keys in a fixed order, trailing newline.
std::string score_json(const QuantileScore& score);

// 800x600 SVG figures.
std::string kcurve_svg(const KCurve& curve, const std::string& title);
std::string residual_map_svg(const PixelResidualMap& map, const Catalog& events,
                             const std::string& title);
std::string residual_points_svg(const ResidualSet& set, const std::string& title);

// Lower-case hex SHA-256 of a byte string / file.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::string& path);

std::string to_string(ResidualKind kind);
std::string to_string(PixelFlag flag);

}  // namespace seisresid::report

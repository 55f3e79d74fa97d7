#include "seisresid/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "seisresid/error.hpp"
#include "text_util.hpp"

namespace seisresid::report {

using detail::fmt;
using detail::fmt_fixed;

std::string to_string(ResidualKind kind) {
  switch (kind) {
    case ResidualKind::raw: return "raw";
    case ResidualKind::pearson: return "pearson";
    case ResidualKind::deviance: return "deviance";
  }
  return "unknown";
}

std::string to_string(PixelFlag flag) {
  switch (flag) {
    case PixelFlag::ok: return "ok";
    case PixelFlag::skipped: return "skipped";
    case PixelFlag::pos_inf: return "+inf";
    case PixelFlag::neg_inf: return "-inf";
  }
  return "unknown";
}

std::string field_csv(const IntensityField& field) {
  std::ostringstream out;
  out << "pixel_index,lon_center,lat_center,rate\n";
  for (auto p : field.grid().active_pixels()) {
    const auto c = field.grid().center(p);
    out << p << ',' << fmt(c.lon) << ',' << fmt(c.lat) << ',' << fmt(field.value(p)) << '\n';
  }
  return out.str();
}

std::string residual_map_csv(const PixelResidualMap& map) {
  std::ostringstream out;
  out << "pixel_index,lon_center,lat_center,value,flag\n";
  for (const auto& v : map.values) {
    const auto c = map.grid.center(v.pixel);
    out << v.pixel << ',' << fmt(c.lon) << ',' << fmt(c.lat) << ','
        << (v.flag == PixelFlag::skipped ? std::string() : fmt(v.value)) << ','
        << to_string(v.flag) << '\n';
  }
  return out.str();
}

std::string kcurve_csv(const KCurve& curve) {
  std::ostringstream out;
  out << "r,k,centered_l,lower,upper,kind\n";
  const auto lb = curve.centered_bands();
  const char* kind = curve.kind == KKind::plain ? "plain" : "weighted";
  for (std::size_t i = 0; i < curve.k.size(); ++i) {
    out << fmt(curve.radii[i]) << ',' << fmt(curve.k[i]) << ',' << fmt(curve.centered_l[i]) << ',';
    if (!lb.empty()) out << fmt(lb[i].lower) << ',' << fmt(lb[i].upper);
    else out << ',';
    out << ',' << kind << '\n';
  }
  return out.str();
}

std::string residual_set_csv(const ResidualSet& set) {
  std::ostringstream out;
  out << "x,y,label,transform,seed\n";
  const auto kind = to_string(set.transform);
  for (const auto& p : set.points)
    out << fmt(p.x) << ',' << fmt(p.y) << ',' << to_string(p.label) << ',' << kind << ','
        << set.stream.seed << '\n';
  return out.str();
}

std::string rescaled_region_csv(const RescaledRegion& region) {
  std::ostringstream out;
  out << "y_lo,y_hi,t_of_y\n";
  for (const auto& s : region.strips)
    out << fmt(s.band_lo) << ',' << fmt(s.band_hi) << ',' << fmt(s.extent) << '\n';
  return out.str();
}

std::string score_json(const QuantileScore& score) {
  nlohmann::ordered_json j;
  j["statistic"] = score.statistic == Statistic::gamma ? "gamma" : "delta";
  j["value"] = score.value;
  j["n_sims"] = score.n_sims;
  if (std::isfinite(score.observed_stat))
    j["observed_stat"] = score.observed_stat;
  else
    j["observed_stat"] = score.observed_stat > 0 ? "inf" : "-inf";
  j["method"] = score.method == ScoreMethod::simulation ? "simulation" : "analytic";
  j["seed"] = score.seed;
  j["reject_at_5pct"] = rejects_at_5pct(score);
  j["ties"] = "strict inequality; ties count as not less";
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- SVG

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

struct Axes {
  double x0, x1, y0, y1;  // data range
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string p2(double v) { return fmt_fixed(v, 2); }

void header(std::ostringstream& out, const std::string& title) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">"
      << esc(title) << "</text>\n";
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return step * mag;
}

void frame(std::ostringstream& out, const Axes& ax, const std::string& xlabel,
           const std::string& ylabel) {
  out << "<rect x=\"" << p2(kLeft) << "\" y=\"" << p2(kTop) << "\" width=\""
      << p2(kWidth - kLeft - kRight) << "\" height=\"" << p2(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  const double sx = nice_step(ax.x1 - ax.x0), sy = nice_step(ax.y1 - ax.y0);
  const int dx = std::max(0, static_cast<int>(-std::floor(std::log10(sx))));
  const int dy = std::max(0, static_cast<int>(-std::floor(std::log10(sy))));
  for (double t = std::ceil(ax.x0 / sx) * sx; t <= ax.x1 + 1e-9 * sx; t += sx) {
    const double x = ax.px(t);
    out << "<line x1=\"" << p2(x) << "\" y1=\"" << p2(kHeight - kBottom) << "\" x2=\"" << p2(x)
        << "\" y2=\"" << p2(kHeight - kBottom + 6) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << p2(x) << "\" y=\"" << p2(kHeight - kBottom + 22)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << fmt_fixed(std::abs(t) < 1e-12 * sx ? 0.0 : t, dx) << "</text>\n";
  }
  for (double t = std::ceil(ax.y0 / sy) * sy; t <= ax.y1 + 1e-9 * sy; t += sy) {
    const double y = ax.py(t);
    out << "<line x1=\"" << p2(kLeft - 6) << "\" y1=\"" << p2(y) << "\" x2=\"" << p2(kLeft)
        << "\" y2=\"" << p2(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << p2(kLeft - 10) << "\" y=\"" << p2(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << fmt_fixed(std::abs(t) < 1e-12 * sy ? 0.0 : t, dy) << "</text>\n";
  }
  out << "<text x=\"" << p2((kLeft + kWidth - kRight) / 2) << "\" y=\"" << p2(kHeight - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << esc(xlabel)
      << "</text>\n"
      << "<text x=\"20\" y=\"" << p2((kTop + kHeight - kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 20 "
      << p2((kTop + kHeight - kBottom) / 2) << ")\">" << esc(ylabel) << "</text>\n";
}

void polyline(std::ostringstream& out, const Axes& ax, std::span<const double> xs,
              const std::vector<double>& ys, const char* style) {
  out << "<polyline fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < ys.size(); ++i)
    out << (i ? " " : "") << p2(ax.px(xs[i])) << ',' << p2(ax.py(ys[i]));
  out << "\"/>\n";
}

// Fits a lon/lat box into the plot area with equal degree scaling.
Axes equal_aspect(double x0, double x1, double y0, double y1) {
  const double w = kWidth - kLeft - kRight, h = kHeight - kTop - kBottom;
  double sx = x1 - x0, sy = y1 - y0;
  if (!(sx > 0)) sx = 1;
  if (!(sy > 0)) sy = 1;
  if (sx / w > sy / h) {
    const double pad = (sx * h / w - sy) / 2;
    return {x0, x0 + sx, y0 - pad, y0 + sy + pad};
  }
  const double pad = (sy * w / h - sx) / 2;
  return {x0 - pad, x0 + sx + pad, y0, y0 + sy};
}

std::string diverging(double v, double vmax) {
  // Blue (negative) - white - red (positive).
  const double t = vmax > 0 ? std::clamp(v / vmax, -1.0, 1.0) : 0.0;
  int r = 255, g = 255, b = 255;
  if (t > 0) {
    g = b = static_cast<int>(std::lround(255 * (1 - t)));
  } else if (t < 0) {
    r = g = static_cast<int>(std::lround(255 * (1 + t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string kcurve_svg(const KCurve& curve, const std::string& title) {
  std::ostringstream out;
  header(out, title);
  const auto r = curve.radii.values();
  const auto bands = curve.centered_bands();
  double lo = 0.0, hi = 0.0;
  for (double v : curve.centered_l) lo = std::min(lo, v), hi = std::max(hi, v);
  for (const auto& b : bands) lo = std::min(lo, b.lower), hi = std::max(hi, b.upper);
  const double pad = 0.05 * std::max(hi - lo, 1e-6);
  const Axes ax{0.0, curve.radii.max(), lo - pad, hi + pad};
  frame(out, ax, "r (degrees)", curve.kind == KKind::plain ? "L(r) - r" : "L_W(r) - r");
  out << "<line x1=\"" << p2(ax.px(0)) << "\" y1=\"" << p2(ax.py(0)) << "\" x2=\""
      << p2(ax.px(ax.x1)) << "\" y2=\"" << p2(ax.py(0)) << "\" stroke=\"#999999\"/>\n";
  if (!bands.empty()) {
    std::vector<double> l, u;
    for (const auto& b : bands) l.push_back(b.lower), u.push_back(b.upper);
    polyline(out, ax, r, l, "stroke=\"black\" stroke-dasharray=\"6,4\"");
    polyline(out, ax, r, u, "stroke=\"black\" stroke-dasharray=\"6,4\"");
  }
  polyline(out, ax, r, curve.centered_l, "stroke=\"black\" stroke-width=\"2\"");
  out << "</svg>\n";
  return out.str();
}

std::string residual_map_svg(const PixelResidualMap& map, const Catalog& events,
                             const std::string& title) {
  std::ostringstream out;
  header(out, title);
  const Grid& g = map.grid;
  if (g.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  const Axes ax = equal_aspect(g.lon_min(), g.lon_max(), g.lat_min(), g.lat_max());
  frame(out, ax, "longitude", "latitude");
  double vmax = 0.0;
  for (const auto& v : map.values)
    if (v.flag == PixelFlag::ok) vmax = std::max(vmax, std::abs(v.value));
  for (const auto& v : map.values) {
    const auto b = g.bounds(v.pixel);
    std::string fill;
    switch (v.flag) {
      case PixelFlag::ok: fill = diverging(v.value, vmax); break;
      case PixelFlag::skipped: fill = "#bbbbbb"; break;
      case PixelFlag::pos_inf: fill = "#800000"; break;
      case PixelFlag::neg_inf: fill = "#000080"; break;
    }
    const double x0 = ax.px(b.lon_lo), x1 = ax.px(b.lon_hi);
    const double y0 = ax.py(b.lat_hi), y1 = ax.py(b.lat_lo);
    out << "<rect x=\"" << p2(x0) << "\" y=\"" << p2(y0) << "\" width=\"" << p2(x1 - x0)
        << "\" height=\"" << p2(y1 - y0) << "\" fill=\"" << fill << "\"/>\n";
  }
  for (const auto& e : events.events)
    out << "<circle cx=\"" << p2(ax.px(e.lon)) << "\" cy=\"" << p2(ax.py(e.lat))
        << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << p2(kWidth - kRight) << "\" y=\"44\" text-anchor=\"end\" "
         "font-family=\"sans-serif\" font-size=\"12\">|max| = "
      << fmt_fixed(vmax, 3) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string residual_points_svg(const ResidualSet& set, const std::string& title) {
  std::ostringstream out;
  header(out, title);
  if (set.region.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  const auto& bb = set.region.bounds();
  const Axes ax = set.transform == TransformKind::rescale
                      ? Axes{bb.x_lo, bb.x_hi, bb.y_lo, bb.y_hi}
                      : equal_aspect(bb.x_lo, bb.x_hi, bb.y_lo, bb.y_hi);
  frame(out, ax, set.transform == TransformKind::rescale ? "rescaled coordinate" : "longitude",
        "latitude");
  for (const auto& rc : set.region.rects()) {
    const double x0 = ax.px(rc.x_lo), x1 = ax.px(rc.x_hi);
    const double y0 = ax.py(rc.y_hi), y1 = ax.py(rc.y_lo);
    out << "<rect x=\"" << p2(x0) << "\" y=\"" << p2(y0) << "\" width=\"" << p2(x1 - x0)
        << "\" height=\"" << p2(y1 - y0) << "\" fill=\"#eeeeee\" stroke=\"none\"/>\n";
  }
  for (const auto& p : set.points) {
    const double x = ax.px(p.x), y = ax.py(p.y);
    if (p.label == PointLabel::retained) {
      out << "<circle cx=\"" << p2(x) << "\" cy=\"" << p2(y)
          << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    } else {
      out << "<path d=\"M" << p2(x - 3) << ' ' << p2(y) << "H" << p2(x + 3) << "M" << p2(x) << ' '
          << p2(y - 3) << "V" << p2(y + 3) << "\" stroke=\"#c00000\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::io, "SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string file_sha256(const std::string& path) { return sha256_hex(detail::read_file(path)); }

}  // namespace seisresid::report

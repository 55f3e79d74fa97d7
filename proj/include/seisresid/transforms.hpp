#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "seisresid/catalog.hpp"
#include "seisresid/intensity.hpp"
#include "seisresid/random.hpp"
#include "seisresid/region.hpp"
#include "seisresid/second_order.hpp"

namespace seisresid {

enum class PointLabel { retained, simulated };
enum class TransformKind { rescale, thin, thin_approx, superpose, superthin };

struct ResidualPoint {
  double x, y;
  PointLabel label;
};

struct ResidualSet {
  std::vector<ResidualPoint> points;
  double null_rate = 0.0;  // points per unit area expected under a correct model
  Region region;
  TransformKind transform = TransformKind::thin;
  SeededStream stream;
  std::vector<std::string> notes;  // warnings and interpretation metadata

  std::size_t count(PointLabel label) const;
  double simulated_fraction() const;
  std::vector<Point> locations() const;
};

enum class Axis { horizontal, vertical };

/// Rescaled-space window: one strip per grid row (horizontal) or column
/// (vertical), spanning [0, extent] along the rescaled axis.
struct RescaledRegion {
  struct Strip {
    double band_lo, band_hi;  // latitude (horizontal) or longitude (vertical)
    double extent;            // integral of the rate across the strip
  };
  Axis axis = Axis::horizontal;
  std::vector<Strip> strips;

  double area() const;
  Region to_region() const;
};

struct Rescaled {
  ResidualSet set;
  RescaledRegion region;
};

// Moves each event along `axis` to the integrated rate from the grid edge.
Rescaled rescale(const Catalog& catalog, const IntensityField& field, Axis axis);

// Keeps each event with probability b / value, b = inf of the field. Errors
// when b = 0.
ResidualSet thin_exact(const Catalog& catalog, const IntensityField& field, SeededStream stream);

// Keeps each event with probability k / (value_i * sum_j 1 / value_j),
// clamped to 1 with a note.
ResidualSet thin_approx(const Catalog& catalog, const IntensityField& field, double k_count,
                        SeededStream stream);

// All events plus Cox points at rate sup - value.
ResidualSet superpose(const Catalog& catalog, const IntensityField& field, SeededStream stream);

// Keeps events with probability min(1, k / value) and adds Cox points at rate
// max(0, k - value).
ResidualSet super_thin(const Catalog& catalog, const IntensityField& field, double k_rate,
                       SeededStream stream);

// Integral of the field over its area: the rate at which a super-thinned
// residual set has as many expected points as the forecast.
double default_k_rate(const IntensityField& field);

enum class BandMode { analytic, envelope };

struct AssessmentOptions {
  BandMode bands = BandMode::analytic;
  int n_sims = 1000;
  double level = 0.95;
  EdgeCorrection edge = EdgeCorrection::none;
};

// Weighted K of the residual points against their constant null rate, with
// analytic bands or simulation envelopes on the set's own region.
KCurve assess_homogeneity(const ResidualSet& set, const RadiiGrid& radii,
                          const AssessmentOptions& options, SeededStream stream);

// Fraction of radii whose centered L lies inside the (centered) bands.
double band_coverage(const KCurve& curve);

std::string to_string(TransformKind kind);
std::string to_string(PointLabel label);

}  // namespace seisresid

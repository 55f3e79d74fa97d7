#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "seisresid/catalog.hpp"
#include "seisresid/intensity.hpp"
#include "seisresid/random.hpp"

namespace seisresid {

enum class Statistic { gamma, delta };
enum class ScoreMethod { simulation, analytic };

struct QuantileScore {
  Statistic statistic = Statistic::gamma;
  double value = 0.0;  // in [0, 1]
  std::int64_t n_sims = 0;
  double observed_stat = 0.0;  // log-likelihood (gamma) or event count (delta)
  ScoreMethod method = ScoreMethod::simulation;
  std::uint64_t seed = 0;
};

// Rejection thresholds used for reporting: gamma < 0.05 (one-sided), delta
// outside [0.025, 0.975] (two-sided).
bool rejects_at_5pct(const QuantileScore& score);

// Observed count per pixel (pixel-indexed). Events outside active pixels are
// not counted.
std::vector<std::uint32_t> pixel_counts(const IntensityField& field, const Catalog& catalog);

// Sum over active pixels of w*log(L) - L - log(w!), L the expected pixel count.
// -inf when an event falls in a pixel with L = 0.
double log_likelihood(const IntensityField& field, const Catalog& catalog);
double log_likelihood(const IntensityField& field, std::span<const std::uint32_t> counts);

// gamma = fraction of simulated log-likelihoods strictly below the observed.
QuantileScore l_test(const IntensityField& field, const Catalog& catalog, int n_sims,
                     SeededStream stream);

// delta = fraction of simulated totals strictly below the observed count, or
// P(N < N_obs) for N ~ Poisson(integral) with the analytic method.
QuantileScore n_test(const IntensityField& field, const Catalog& catalog, int n_sims,
                     SeededStream stream, ScoreMethod method);

// P(N < n_obs), N ~ Poisson(mean).
double poisson_below(double mean, std::uint64_t n_obs);

}  // namespace seisresid

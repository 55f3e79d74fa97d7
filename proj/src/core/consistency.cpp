#include "seisresid/consistency.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numeric>

#include "seisresid/error.hpp"
#include "seisresid/simulate.hpp"

namespace seisresid {

bool rejects_at_5pct(const QuantileScore& score) {
  if (score.statistic == Statistic::gamma) return score.value < 0.05;
  return score.value < 0.025 || score.value > 0.975;
}

std::vector<std::uint32_t> pixel_counts(const IntensityField& field, const Catalog& catalog) {
  std::vector<std::uint32_t> counts(field.grid().pixel_count(), 0);
  for (const auto& e : catalog.events)
    if (auto p = field.grid().locate_active(e.lon, e.lat)) ++counts[*p];
  return counts;
}

double log_likelihood(const IntensityField& field, std::span<const std::uint32_t> counts) {
  const Grid& g = field.grid();
  double ll = 0.0;
  for (std::size_t p = 0; p < g.pixel_count(); ++p) {
    if (!g.is_active(p)) continue;
    const double expected = field.pixel_integral(p);
    const double w = counts[p];
    if (w > 0.0) {
      if (expected == 0.0) return -std::numeric_limits<double>::infinity();
      ll += w * std::log(expected) - std::lgamma(w + 1.0);
    }
    ll -= expected;
  }
  return ll;
}

double log_likelihood(const IntensityField& field, const Catalog& catalog) {
  return log_likelihood(field, pixel_counts(field, catalog));
}

QuantileScore l_test(const IntensityField& field, const Catalog& catalog, int n_sims,
                     SeededStream stream) {
  if (n_sims < 1) throw Error(ErrorKind::validation, "L-test needs at least one simulation");
  QuantileScore s;
  s.statistic = Statistic::gamma;
  s.method = ScoreMethod::simulation;
  s.n_sims = n_sims;
  s.seed = stream.seed;
  s.observed_stat = log_likelihood(field, catalog);
  std::int64_t below = 0;
  for (int j = 0; j < n_sims; ++j) {
    const auto sim = simulate_counts(field, stream.child(static_cast<std::uint64_t>(j)));
    if (log_likelihood(field, sim) < s.observed_stat) ++below;
  }
  s.value = static_cast<double>(below) / n_sims;
  return s;
}

double poisson_below(double mean, std::uint64_t n_obs) {
  if (n_obs == 0) return 0.0;
  if (mean <= 0.0) return 1.0;
  // P(N <= n_obs - 1) = Q(n_obs, mean), the regularized upper incomplete gamma.
  return boost::math::gamma_q(static_cast<double>(n_obs), mean);
}

QuantileScore n_test(const IntensityField& field, const Catalog& catalog, int n_sims,
                     SeededStream stream, ScoreMethod method) {
  QuantileScore s;
  s.statistic = Statistic::delta;
  s.method = method;
  s.seed = stream.seed;
  const auto counts = pixel_counts(field, catalog);
  const std::uint64_t n_obs = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  s.observed_stat = static_cast<double>(n_obs);
  if (method == ScoreMethod::analytic) {
    s.n_sims = 0;
    s.value = poisson_below(field.integrate(), n_obs);
    return s;
  }
  if (n_sims < 1) throw Error(ErrorKind::validation, "N-test needs at least one simulation");
  s.n_sims = n_sims;
  std::int64_t below = 0;
  for (int j = 0; j < n_sims; ++j) {
    const auto sim = simulate_counts(field, stream.child(static_cast<std::uint64_t>(j)));
    const auto total = std::accumulate(sim.begin(), sim.end(), std::uint64_t{0});
    if (total < n_obs) ++below;
  }
  s.value = static_cast<double>(below) / n_sims;
  return s;
}

}  // namespace seisresid

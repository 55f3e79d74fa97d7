#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "seisresid/consistency.hpp"
#include "seisresid/error.hpp"
#include "seisresid/simulate.hpp"
#include "toys.hpp"

using namespace seisresid;
using toys::kind_of;

namespace {

// Per-pixel Poisson log-likelihood, term by term.
double ll_terms(const std::vector<double>& expected, const std::vector<int>& counts) {
  double ll = 0.0;
  for (std::size_t p = 0; p < expected.size(); ++p) {
    double log_fact = 0.0;
    for (int k = 2; k <= counts[p]; ++k) log_fact += std::log(static_cast<double>(k));
    ll += counts[p] * std::log(expected[p]) - expected[p] - log_fact;
  }
  return ll;
}

double poisson_pmf(double mean, int k) {
  double p = std::exp(-mean);
  for (int i = 1; i <= k; ++i) p *= mean / i;
  return p;
}

// Catalog with counts[p] events at the centre of pixel p.
Catalog events_at(const Grid& g, const std::vector<int>& counts) {
  Catalog c;
  for (std::size_t p = 0; p < counts.size(); ++p)
    for (int k = 0; k < counts[p]; ++k) {
      Event e;
      e.lon = g.center(p).lon;
      e.lat = g.center(p).lat;
      c.events.push_back(e);
    }
  return c;
}

IntensityField row_field(const std::vector<double>& expected) {
  const int n = static_cast<int>(expected.size());
  Grid g(0.0, 0.0, 1.0, 1.0, n, 1, std::vector<std::uint8_t>(expected.size(), 1));
  return IntensityField(g, expected);
}

}  // namespace

TEST_CASE("log-likelihood worked examples") {
  const auto one = row_field({1.0});
  CHECK(log_likelihood(one, events_at(one.grid(), {1})) == doctest::Approx(-1.0).epsilon(1e-15));

  toys::Gen gen(1);
  const auto f = toys::random_field(gen, 4, 4);
  CHECK(log_likelihood(f, Catalog{}) == doctest::Approx(-f.integrate()).epsilon(1e-14));

  const auto three = row_field({0.4, 1.3, 2.2});
  const double expect = ll_terms({0.4, 1.3, 2.2}, {0, 1, 2});
  CHECK(log_likelihood(three, events_at(three.grid(), {0, 1, 2})) ==
        doctest::Approx(expect).epsilon(1e-14));
  // Hand value: 0 - 0.4 + log 1.3 - 1.3 + 2 log 2.2 - 2.2 - log 2.
  CHECK(expect == doctest::Approx(-0.4 + std::log(1.3) - 1.3 + 2 * std::log(2.2) - 2.2 - std::log(2.0)));

  const auto zero = row_field({0.0, 1.0});
  CHECK(log_likelihood(zero, events_at(zero.grid(), {1, 0})) == -INFINITY);
}

TEST_CASE("analytic delta equals the Poisson partial sum") {
  const auto f = row_field({2.0, 3.0});
  double below = 0.0;
  for (int k = 0; k <= 4; ++k) below += poisson_pmf(5.0, k);
  const auto s = n_test(f, events_at(f.grid(), {2, 3}), 0, {0, 0}, ScoreMethod::analytic);
  CHECK(s.value == doctest::Approx(below).epsilon(1e-13));
  CHECK(s.observed_stat == 5.0);
  CHECK(poisson_below(7.5, 0) == 0.0);
  for (int n : {1, 3, 12, 40}) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += poisson_pmf(12.5, k);
    CHECK(poisson_below(12.5, static_cast<std::uint64_t>(n)) == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("empty catalog gives delta 0 for every method") {
  toys::Gen gen(2);
  const auto f = toys::random_field(gen, 3, 3);
  CHECK(n_test(f, Catalog{}, 200, {1, 0}, ScoreMethod::simulation).value == 0.0);
  CHECK(n_test(f, Catalog{}, 0, {1, 0}, ScoreMethod::analytic).value == 0.0);
}

TEST_CASE("ties count as not less") {
  // Zero field, empty catalog: every simulation ties the observation exactly.
  const auto f = row_field({0.0, 0.0});
  const auto g = l_test(f, Catalog{}, 100, {3, 0});
  CHECK(g.value == 0.0);
  CHECK(g.observed_stat == 0.0);
  CHECK(n_test(f, Catalog{}, 100, {3, 0}, ScoreMethod::simulation).value == 0.0);
  // An impossible observation is below every simulation.
  CHECK(l_test(f, events_at(f.grid(), {1, 0}), 50, {3, 0}).value == 0.0);
}

TEST_CASE("gamma matches exhaustive enumeration on a two-pixel field") {
  const std::vector<std::pair<std::vector<double>, std::vector<int>>> cases = {
      {{1.7, 2.9}, {1, 5}}, {{0.6, 2.3}, {0, 2}}, {{3.0, 1.1}, {4, 0}}, {{2.2, 2.7}, {2, 3}}};
  for (const auto& [lam, obs] : cases) {
    const auto f = row_field(lam);
    const double l_obs = ll_terms(lam, obs);
    double exact = 0.0;
    for (int a = 0; a <= 40; ++a)
      for (int b = 0; b <= 40; ++b) {
        if (a == obs[0] && b == obs[1]) continue;
        const double l = ll_terms(lam, {a, b});
        if (l < l_obs - 1e-12) exact += poisson_pmf(lam[0], a) * poisson_pmf(lam[1], b);
      }
    const auto s = l_test(f, events_at(f.grid(), obs), 10000, {17, 0});
    CHECK(std::abs(s.value - exact) < 0.02);
  }
}

TEST_CASE("analytic and simulated delta agree within 0.02") {
  toys::Gen gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = toys::random_field(gen, 3, 3, 0.5, 1.0, 20.0);
    std::poisson_distribution<int> pd(f.integrate());
    const auto cat = toys::uniform_catalog(gen, f.grid(), pd(gen));
    const auto a = n_test(f, cat, 0, {0, 0}, ScoreMethod::analytic);
    const auto s = n_test(f, cat, 10000, {static_cast<std::uint64_t>(trial), 0},
                          ScoreMethod::simulation);
    CHECK(std::abs(a.value - s.value) < 0.02);
  }
}

TEST_CASE("scores stay in [0, 1] and delta falls as the forecast grows") {
  toys::Gen gen(6);
  const auto base = toys::random_field(gen, 4, 4);
  const auto cat = toys::uniform_catalog(gen, base.grid(), 30);
  double prev = 2.0;
  for (double scale = 0.1; scale <= 3.0; scale += 0.1) {
    std::vector<double> v(base.grid().pixel_count());
    for (std::size_t p = 0; p < v.size(); ++p) v[p] = base.value(p) * scale;
    const IntensityField f(base.grid(), v);
    const auto d = n_test(f, cat, 0, {0, 0}, ScoreMethod::analytic);
    CHECK(d.value >= 0.0);
    CHECK(d.value <= 1.0);
    CHECK(d.value <= prev);
    prev = d.value;
    const auto g = l_test(f, cat, 50, {1, 0});
    CHECK(g.value >= 0.0);
    CHECK(g.value <= 1.0);
  }
}

TEST_CASE("overprediction drives delta to 0") {
  const auto truth = toys::unit_square(4, 25.0);
  const auto doubled = toys::unit_square(4, 50.0);
  const auto cat = simulate_catalog(truth, {4, 0});
  CHECK(n_test(doubled, cat, 1000, {1, 0}, ScoreMethod::simulation).value < 0.025);
}

TEST_CASE("simulated delta is close to uniform under the true model") {
  const auto f = toys::unit_square(3, 900.0);
  std::vector<double> deltas;
  for (std::uint64_t r = 0; r < 300; ++r) {
    const auto cat = simulate_catalog(f, {1000 + r, 0});
    deltas.push_back(n_test(f, cat, 300, {r, 9}, ScoreMethod::simulation).value);
  }
  std::sort(deltas.begin(), deltas.end());
  double ks = 0.0;
  const double n = static_cast<double>(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i)
    ks = std::max({ks, std::abs((i + 1) / n - deltas[i]), std::abs(deltas[i] - i / n)});
  CHECK(ks < 0.1);
}

TEST_CASE("rejection thresholds") {
  QuantileScore g{Statistic::gamma, 0.049, 100, 0, ScoreMethod::simulation, 0};
  CHECK(rejects_at_5pct(g));
  g.value = 0.05;
  CHECK_FALSE(rejects_at_5pct(g));
  QuantileScore d{Statistic::delta, 0.02, 100, 0, ScoreMethod::simulation, 0};
  CHECK(rejects_at_5pct(d));
  d.value = 0.5;
  CHECK_FALSE(rejects_at_5pct(d));
  d.value = 0.98;
  CHECK(rejects_at_5pct(d));
  CHECK(kind_of([] { l_test(toys::unit_square(1, 1.0), Catalog{}, 0, {0, 0}); }) ==
        ErrorKind::validation);
}

#include <doctest.h>

#include <cmath>

#include "seisresid/consistency.hpp"
#include "seisresid/error.hpp"
#include "seisresid/pixel_residuals.hpp"
#include "seisresid/simulate.hpp"
#include "toys.hpp"

using namespace seisresid;
using toys::kind_of;

namespace {

Catalog at(double lon, double lat, int n = 1) {
  Catalog c;
  for (int i = 0; i < n; ++i) {
    Event e;
    e.lon = lon;
    e.lat = lat;
    c.events.push_back(e);
  }
  return c;
}

}  // namespace

TEST_CASE("raw residual is observed minus expected") {
  const auto f = toys::unit_square(1, 2.0);
  const auto m = raw_residuals(f, at(0.5, 0.5, 3));
  REQUIRE(m.values.size() == 1);
  CHECK(m.values[0].value == doctest::Approx(1.0));
  CHECK(m.kind == ResidualKind::raw);

  toys::Gen gen(1);
  const auto r = toys::random_field(gen, 5, 4);
  double sum = 0.0;
  const auto empty = raw_residuals(r, Catalog{});
  for (const auto& v : empty.values) {
    CHECK(v.value == -r.pixel_integral(v.pixel));
    sum += v.value;
  }
  CHECK(sum == doctest::Approx(-r.integrate()).epsilon(1e-12));
}

TEST_CASE("raw residuals sum to N minus the integral") {
  toys::Gen gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = toys::random_field(gen, 6, 6);
    const auto cat = toys::uniform_catalog(gen, f.grid(), 40);
    double sum = 0.0;
    for (const auto& v : raw_residuals(f, cat).values) sum += v.value;
    CHECK(sum == doctest::Approx(40.0 - f.integrate()).epsilon(1e-12));
  }
}

TEST_CASE("raw residuals have zero mean under the true model") {
  toys::Gen gen(3);
  const auto f = toys::random_field(gen, 3, 3, 0.5, 1.0, 10.0);
  const int n = 1000;
  std::vector<double> totals;
  std::vector<double> per_pixel(9, 0.0);
  for (int s = 0; s < n; ++s) {
    const auto m = raw_residuals(f, simulate_catalog(f, {static_cast<std::uint64_t>(s), 0}));
    double t = 0.0;
    for (const auto& v : m.values) {
      t += v.value;
      per_pixel[v.pixel] += v.value;
    }
    totals.push_back(t);
  }
  CHECK(std::abs(toys::mean(totals)) < 3.0 * std::sqrt(f.integrate() / n));
  for (std::size_t p = 0; p < 9; ++p)
    CHECK(std::abs(per_pixel[p] / n) < 3.0 * std::sqrt(f.pixel_integral(p) / n));
}

TEST_CASE("pearson residual worked example and zero-rate skipping") {
  const auto f = toys::unit_square(1, 4.0);
  CHECK(pearson_residuals(f, at(0.5, 0.5)).values[0].value == doctest::Approx(-1.5));

  Grid g(0.0, 0.0, 1.0, 1.0, 2, 1, {1, 1});
  IntensityField z(g, {0.0, 4.0});
  const auto m = pearson_residuals(z, Catalog{});
  REQUIRE(m.values.size() == 2);
  CHECK(m.values[0].flag == PixelFlag::skipped);
  CHECK(std::isnan(m.values[0].value));
  REQUIRE(m.skipped.size() == 1);
  CHECK(m.skipped[0].pixel == 0);
  CHECK(m.values[1].value == doctest::Approx(-2.0));
  CHECK(m.max_value() == doctest::Approx(-2.0));
}

TEST_CASE("pearson maximum sits in the densest unmodelled cluster") {
  const auto f = toys::unit_square(4, 10.0);
  auto cat = at(0.6, 0.6, 6);
  cat.events.push_back(at(0.1, 0.1).events[0]);
  const auto m = pearson_residuals(f, cat);
  const auto* best = &m.values[0];
  for (const auto& v : m.values)
    if (v.value > best->value) best = &v;
  CHECK(best->pixel == *f.grid().locate(0.6, 0.6));
  CHECK(m.max_value() == best->value);
}

TEST_CASE("deviance residual worked example and identity") {
  const auto f1 = toys::unit_square(1, 2.0);
  const auto f2 = toys::unit_square(1, 1.0);
  const auto m = deviance_residuals(f1, f2, at(0.5, 0.5));
  CHECK(m.values[0].value == doctest::Approx(std::log(2.0) - 1.0).epsilon(1e-14));
  CHECK(m.values[0].value == doctest::Approx(-0.3069).epsilon(1e-4));

  toys::Gen gen(4);
  const auto r = toys::random_field(gen, 5, 5);
  const auto cat = toys::uniform_catalog(gen, r.grid(), 30);
  for (const auto& v : deviance_residuals(r, r, cat).values) CHECK(v.value == 0.0);
  CHECK(lr_score(deviance_residuals(r, r, cat)) == 0.0);
}

TEST_CASE("deviance residuals are antisymmetric and sum to the likelihood ratio") {
  toys::Gen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = toys::random_field(gen, 5, 5);
    const auto b = toys::random_field(gen, 5, 5);
    const auto cat = toys::uniform_catalog(gen, a.grid(), 25);
    const auto ab = deviance_residuals(a, b, cat);
    const auto ba = deviance_residuals(b, a, cat);
    for (std::size_t i = 0; i < ab.values.size(); ++i) CHECK(ab.values[i].value == -ba.values[i].value);
    const double diff = log_likelihood(a, cat) - log_likelihood(b, cat);
    CHECK(lr_score(ab) == doctest::Approx(diff).epsilon(1e-9));
  }
}

TEST_CASE("deviance sentinels and mask intersection") {
  Grid g(0.0, 0.0, 1.0, 1.0, 3, 1, {1, 1, 1});
  IntensityField a(g, {0.0, 2.0, 1.0});
  IntensityField b(g.with_mask({1, 1, 0}), {1.0, 0.0, 1.0});
  auto cat = at(0.5, 0.5);
  cat.events.push_back(at(1.5, 0.5).events[0]);
  const auto m = deviance_residuals(a, b, cat);
  REQUIRE(m.find(0));
  CHECK(m.find(0)->flag == PixelFlag::neg_inf);
  CHECK(m.find(1)->flag == PixelFlag::pos_inf);
  CHECK_FALSE(m.find(2));
  CHECK(m.grid.active_count() == 2);
  bool listed = false;
  for (const auto& sk : m.skipped) listed |= sk.pixel == 2;
  CHECK(listed);
  CHECK(std::isnan(lr_score(m)));  // opposite sentinels
  CHECK(lr_score(deviance_residuals(a, b, at(0.5, 0.5))) == -INFINITY);
  CHECK(kind_of([&] { lr_score(raw_residuals(a, cat)); }) == ErrorKind::domain);

  // Both zero: no events gives a plain zero, events are skipped.
  IntensityField c(g, {0.0, 1.0, 1.0});
  CHECK(deviance_residuals(c, c, Catalog{}).find(0)->value == 0.0);
  CHECK(deviance_residuals(c, c, at(0.5, 0.5)).find(0)->flag == PixelFlag::skipped);
}

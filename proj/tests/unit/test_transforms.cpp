#include <doctest.h>

#include <cmath>

#include "seisresid/error.hpp"
#include "seisresid/report.hpp"
#include "seisresid/simulate.hpp"
#include "seisresid/transforms.hpp"
#include "toys.hpp"

using namespace seisresid;
using toys::kind_of;

namespace {

Catalog at(std::initializer_list<Point> pts) { return toys::catalog_of(std::vector<Point>(pts)); }

double expected_integral(const IntensityField& f, double lon, double lat) {
  // Midpoint-free oracle: walk pixels of the row left to right.
  const Grid& g = f.grid();
  const int iy = g.iy(*g.locate(lon, lat));
  double acc = 0.0;
  for (int ix = 0; ix < g.nx(); ++ix) {
    const double lo = g.lon_edge(ix), hi = g.lon_edge(ix + 1);
    const auto p = g.index(ix, iy);
    if (!g.is_active(p)) continue;
    const double seg = std::max(0.0, std::min(hi, lon) - lo);
    acc += f.value(p) * seg;
  }
  return acc;
}

}  // namespace

TEST_CASE("rescaling a uniform field is a linear stretch") {
  const auto f = IntensityField::uniform(Grid::from_bounds(-118, -117, 34, 34.5, 0.1, 0.1), 7.0);
  const auto cat = at({{-117.95, 34.05}, {-117.5, 34.2}, {-117.15, 34.45}});
  const auto r = rescale(cat, f, Axis::horizontal);
  REQUIRE(r.set.points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.set.points[i].x == doctest::Approx(7.0 * (cat.events[i].lon + 118.0)).epsilon(1e-12));
    CHECK(r.set.points[i].y == cat.events[i].lat);
  }
  const double ratio = (r.set.points[1].x - r.set.points[0].x) / (r.set.points[2].x - r.set.points[1].x);
  CHECK(ratio == doctest::Approx((-117.5 + 117.95) / (-117.15 + 117.5)).epsilon(1e-10));
  CHECK(r.set.null_rate == 1.0);

  // Right boundary maps to T(y).
  const auto edge = rescale(at({{-117.0, 34.25}}), f, Axis::horizontal);
  CHECK(edge.set.points[0].x == doctest::Approx(edge.region.strips[2].extent).epsilon(1e-12));
  CHECK(edge.region.strips[2].extent == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("rescaled positions match a row-walk oracle, both axes") {
  toys::Gen gen(4);
  for (int t = 0; t < 10; ++t) {
    auto f = toys::random_field(gen, 6, 4, 0.1, 0.0, 10.0, 0.2);
    const auto cat = toys::uniform_catalog(gen, f.grid(), 30);
    const auto r = rescale(cat, f, Axis::horizontal);
    for (std::size_t i = 0; i < cat.size(); ++i)
      CHECK(r.set.points[i].x ==
            doctest::Approx(expected_integral(f, cat.events[i].lon, cat.events[i].lat)).epsilon(1e-12).scale(1.0));
    const auto v = rescale(cat, f, Axis::vertical);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      CHECK(v.set.points[i].x == cat.events[i].lon);
      CHECK(v.set.points[i].y >= 0.0);
      CHECK(v.set.points[i].y <= v.region.strips[static_cast<std::size_t>(f.grid().ix(*f.grid().locate(cat.events[i].lon, cat.events[i].lat)))].extent + 1e-12);
    }
  }
}

TEST_CASE("rescaled region area equals the field integral") {
  toys::Gen gen(5);
  for (int t = 0; t < 50; ++t) {
    const auto f = toys::random_field(gen, 4, 4, 0.25, 0.0, 50.0, 0.1);
    const auto h = rescale(Catalog{}, f, Axis::horizontal);
    const auto v = rescale(Catalog{}, f, Axis::vertical);
    CHECK(std::abs(h.region.area() - f.integrate()) <= 1e-12 * f.integrate());
    CHECK(std::abs(v.region.area() - f.integrate()) <= 1e-12 * f.integrate());
    CHECK(h.set.region.area() == doctest::Approx(f.integrate()).epsilon(1e-12));
  }
  CHECK(kind_of([] { rescale(at({{5.0, 5.0}}), toys::unit_square(2, 1.0), Axis::horizontal); }) ==
        ErrorKind::domain);
}

TEST_CASE("exact thinning") {
  const auto flat = toys::unit_square(3, 4.0);
  toys::Gen gen(1);
  const auto cat = toys::uniform_catalog(gen, flat.grid(), 25);
  CHECK(thin_exact(cat, flat, {1, 0}).points.size() == 25);

  Grid g(0.0, 0.0, 1.0, 1.0, 2, 1, {1, 1});
  const IntensityField f(g, {2.0, 4.0});
  const auto two = at({{0.5, 0.5}, {1.5, 0.5}, {1.2, 0.3}});
  const int n = 10000;
  std::vector<int> kept(3, 0);
  std::vector<double> totals;
  for (int s = 0; s < n; ++s) {
    const auto set = thin_exact(two, f, {static_cast<std::uint64_t>(s), 0});
    CHECK(set.null_rate == 2.0);
    for (const auto& p : set.points)
      for (std::size_t i = 0; i < 3; ++i)
        if (p.x == two.events[i].lon && p.y == two.events[i].lat) ++kept[i];
    totals.push_back(static_cast<double>(set.points.size()));
  }
  CHECK(kept[0] == n);
  for (std::size_t i = 1; i < 3; ++i) CHECK(std::abs(kept[i] / double(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
  // Expected retained = sum b / lambda = 1 + 0.5 + 0.5.
  CHECK(std::abs(toys::mean(totals) - 2.0) < 3.0 * std::sqrt(0.5 / n));

  Grid z(0.0, 0.0, 1.0, 1.0, 2, 1, {1, 1});
  CHECK(kind_of([&] { thin_exact(two, IntensityField(z, {0.0, 1.0}), {0, 0}); }) == ErrorKind::domain);
}

TEST_CASE("approximate thinning probabilities") {
  Grid g(0.0, 0.0, 1.0, 1.0, 2, 1, {1, 1});
  const IntensityField f(g, {1.0, 3.0});
  const auto cat = at({{0.5, 0.5}, {1.5, 0.5}});
  const int n = 10000;
  int first = 0, second = 0;
  for (int s = 0; s < n; ++s)
    for (const auto& p : thin_approx(cat, f, 1.0, {static_cast<std::uint64_t>(s), 0}).points)
      (p.x < 1.0 ? first : second)++;
  CHECK(std::abs(first / double(n) - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / n));
  CHECK(std::abs(second / double(n) - 0.25) < 3.0 * std::sqrt(0.75 * 0.25 / n));
  CHECK(thin_approx(cat, f, 1.0, {0, 0}).null_rate == doctest::Approx(0.5));

  // Uniform field: simple random thinning with probability k / N.
  const auto flat = toys::unit_square(2, 5.0);
  toys::Gen gen(3);
  const auto many = toys::uniform_catalog(gen, flat.grid(), 20);
  std::vector<int> hits(20, 0);
  for (int s = 0; s < 4000; ++s) {
    const auto set = thin_approx(many, flat, 5.0, {static_cast<std::uint64_t>(s), 0});
    for (const auto& p : set.points)
      for (std::size_t i = 0; i < 20; ++i)
        if (p.x == many.events[i].lon) ++hits[i];
  }
  for (int h : hits) CHECK(std::abs(h / 4000.0 - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / 4000));

  const auto clamped = thin_approx(cat, f, 3.0, {0, 0});
  CHECK(clamped.notes.size() == 2);
  CHECK(thin_approx(Catalog{}, f, 1.0, {0, 0}).points.empty());
}

TEST_CASE("superposition") {
  const auto flat = toys::unit_square(3, 6.0);
  toys::Gen gen(2);
  const auto cat = toys::uniform_catalog(gen, flat.grid(), 10);
  const auto same = superpose(cat, flat, {0, 0});
  CHECK(same.points.size() == 10);
  CHECK(same.simulated_fraction() == 0.0);

  const auto f = toys::random_field(gen, 4, 4, 0.25, 1.0, 12.0);
  const double m = f.extremes().supremum * f.grid().area() - f.integrate();
  std::vector<double> counts;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto set = superpose(Catalog{}, f, {s, 0});
    CHECK(set.null_rate == f.extremes().supremum);
    counts.push_back(static_cast<double>(set.count(PointLabel::simulated)));
  }
  CHECK(std::abs(toys::mean(counts) - m) < 3.0 * std::sqrt(m / 2000));
}

TEST_CASE("super-thinning count identity and regimes") {
  toys::Gen gen(9);
  const auto f = toys::random_field(gen, 20, 20, 0.05, 0.5, 40.0);
  const double k = default_k_rate(f);
  CHECK(k == doctest::Approx(f.integrate() / f.grid().area()));
  // Pointwise min(lambda, k) + max(0, k - lambda) = k.
  for (auto p : f.grid().active_pixels()) {
    const double v = f.value(p);
    CHECK(std::min(v, k) + std::max(0.0, k - v) == doctest::Approx(k).epsilon(1e-15));
  }
  const auto cat = simulate_catalog(f, {77, 0});
  std::vector<double> totals;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto set = super_thin(simulate_catalog(f, {s, 1}), f, k, {s, 2});
    CHECK(set.count(PointLabel::retained) + set.count(PointLabel::simulated) == set.points.size());
    totals.push_back(static_cast<double>(set.points.size()));
  }
  const double ka = k * f.grid().area();
  CHECK(std::abs(toys::mean(totals) - ka) < 3.0 * std::sqrt(ka / 500));

  // k above the supremum keeps every event.
  const auto all = super_thin(cat, f, 2.0 * f.extremes().supremum, {1, 0});
  CHECK(all.count(PointLabel::retained) == cat.size());
  CHECK(kind_of([&] { super_thin(cat, f, 0.0, {0, 0}); }) == ErrorKind::validation);
}

TEST_CASE("transform outputs are deterministic per seed") {
  toys::Gen gen(10);
  const auto f = toys::random_field(gen, 5, 5);
  const auto cat = toys::uniform_catalog(gen, f.grid(), 40);
  CHECK(report::residual_set_csv(super_thin(cat, f, 5.0, {3, 0})) ==
        report::residual_set_csv(super_thin(cat, f, 5.0, {3, 0})));
  CHECK(report::residual_set_csv(superpose(cat, f, {3, 0})) ==
        report::residual_set_csv(superpose(cat, f, {3, 0})));
  CHECK(report::residual_set_csv(super_thin(cat, f, 5.0, {3, 0})) !=
        report::residual_set_csv(super_thin(cat, f, 5.0, {4, 0})));
}

TEST_CASE("homogeneity assessment") {
  const auto f = toys::unit_square(10, 200.0);
  const auto radii = RadiiGrid::linear(0.01, 0.25);
  // Null: homogeneous input at the null rate stays mostly inside the envelopes.
  AssessmentOptions null_env;
  null_env.bands = BandMode::envelope;
  null_env.n_sims = 99;
  double coverage = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto set = super_thin(simulate_catalog(f, {s, 0}), f, 200.0, {s, 1});
    coverage += band_coverage(assess_homogeneity(set, radii, null_env, {s, 2}));
  }
  CHECK(coverage / 20 > 0.85);

  // Planted cluster: 10 extra points within 0.05 degrees exits the upper band.
  int exits = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto base = toys::unit_square(10, 100.0);
    auto cat = simulate_catalog(base, {s, 3});
    toys::Gen gen(s);
    for (const auto& p : toys::uniform_points(gen, 10, 0.45, 0.5, 0.45, 0.5))
      cat.events.push_back(toys::catalog_of({p}).events[0]);
    const auto set = super_thin(cat, base, 100.0, {s, 4});
    const auto curve = assess_homogeneity(set, radii, {}, {s, 5});
    const auto bands = curve.centered_bands();
    bool out = false;
    for (std::size_t i = 0; i < 5; ++i) out |= curve.centered_l[i] > bands[i].upper;
    exits += out;
  }
  CHECK(exits >= 16);

  const auto r = rescale(simulate_catalog(f, {1, 0}), f, Axis::horizontal);
  CHECK(kind_of([&] { assess_homogeneity(r.set, radii, {}, {0, 0}); }) == ErrorKind::domain);
  AssessmentOptions env;
  env.bands = BandMode::envelope;
  env.n_sims = 50;
  const auto curve = assess_homogeneity(r.set, RadiiGrid::linear(1.0, 10.0), env, {0, 0});
  CHECK(curve.band_source == BandSource::envelope);
  CHECK(curve.bands.size() == 10);
  CHECK(kind_of([&] { assess_homogeneity(ResidualSet{}, radii, {}, {0, 0}); }) == ErrorKind::domain);
}

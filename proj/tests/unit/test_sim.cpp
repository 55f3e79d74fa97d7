#include <doctest.h>

#include <cmath>
#include <map>

#include "seisresid/catalog.hpp"
#include "seisresid/error.hpp"
#include "seisresid/random.hpp"
#include "seisresid/simulate.hpp"
#include "seisresid/transforms.hpp"
#include "toys.hpp"

using namespace seisresid;
using toys::kind_of;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a({42, 7}), b({42, 7}), c({42, 8}), d({43, 7});
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differ_c |= x != c.next_u64();
    differ_d |= x != d.next_u64();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  CounterRng e({1, 2});
  for (std::uint64_t i = 0; i < 20; ++i) {
    const double u = e.uniform();
    CHECK(u == CounterRng({1, 2}).uniform_at(i));
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  CHECK_FALSE(SeededStream{1, 0}.child(1) == SeededStream{1, 0}.child(2));
  CHECK(SeededStream{1, 0}.child(5) == SeededStream{1, 0}.child(5));
}

TEST_CASE("poisson sampler matches mean and variance on both branches") {
  for (double mean : {0.3, 4.0, 9.5, 10.5, 37.0, 400.0}) {
    CounterRng r({99, static_cast<std::uint64_t>(mean * 10)});
    std::vector<double> draws(20000);
    for (auto& d : draws) d = static_cast<double>(r.poisson(mean));
    const double m = toys::mean(draws), v = toys::variance(draws);
    CHECK(std::abs(m - mean) < 4.0 * std::sqrt(mean / 20000.0));
    CHECK(v / mean == doctest::Approx(1.0).epsilon(0.05));
  }
  CounterRng z({1, 1});
  CHECK(z.poisson(0.0) == 0);
}

TEST_CASE("zero field simulates no events") {
  const auto f = toys::unit_square(3, 0.0);
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(simulate_catalog(f, {s, 0}).empty());
}

TEST_CASE("simulated totals follow Poisson mean and dispersion") {
  // Total 10 over a random 3x3 field.
  toys::Gen gen(2);
  auto f = toys::random_field(gen, 3, 3, 0.5);
  f = IntensityField(f.grid(), [&] {
    std::vector<double> v(9);
    for (std::size_t p = 0; p < 9; ++p) v[p] = f.value(p) * 10.0 / f.integrate();
    return v;
  }());
  std::vector<double> totals(10000);
  for (std::size_t s = 0; s < totals.size(); ++s)
    totals[s] = static_cast<double>(simulate_catalog(f, {s, 0}).size());
  CHECK(std::abs(toys::mean(totals) - 10.0) < 3.0 * std::sqrt(10.0 / 10000.0));

  const auto one = toys::unit_square(1, 6.0);
  std::vector<double> counts(10000);
  for (std::size_t s = 0; s < counts.size(); ++s)
    counts[s] = static_cast<double>(simulate_counts(one, {s, 3})[0]);
  const double ratio = toys::variance(counts) / toys::mean(counts);
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 1.1);
}

TEST_CASE("simulated events sit inside their pixels and the window") {
  toys::Gen gen(3);
  const auto f = toys::random_field(gen, 4, 4, 0.25, 50.0, 100.0);
  const auto cat = simulate_catalog(f, {5, 0});
  const auto counts = simulate_counts(f, {5, 0});
  std::vector<std::uint32_t> seen(counts.size(), 0);
  for (const auto& e : cat.events) {
    const auto p = f.grid().locate_active(e.lon, e.lat);
    REQUIRE(p);
    ++seen[*p];
  }
  CHECK(seen == counts);
  for (std::size_t i = 1; i < cat.size(); ++i) CHECK(cat.events[i - 1].time <= cat.events[i].time);
  CHECK(serialize_catalog(cat) == serialize_catalog(simulate_catalog(f, {5, 0})));
}

TEST_CASE("cox complement counts match their closed-form means") {
  const auto flat = toys::unit_square(2, 3.0);
  for (std::uint64_t s = 0; s < 10; ++s)
    CHECK(simulate_cox_complement(flat, 3.0, ComplementMode::superpose, {s, 0}).empty());

  Grid g(0.0, 0.0, 1.0, 1.0, 2, 1, {1, 1});
  IntensityField f(g, {5.0, 1.0});
  // Superthin at level 2: nothing in the first pixel, rate 1 in the second.
  std::vector<double> second;
  for (std::uint64_t s = 0; s < 5000; ++s) {
    const auto pts = simulate_cox_complement(f, 2.0, ComplementMode::superthin, {s, 0});
    for (const auto& p : pts) CHECK(p.x >= 1.0);
    second.push_back(static_cast<double>(pts.size()));
  }
  CHECK(std::abs(toys::mean(second) - 1.0) < 3.0 * std::sqrt(1.0 / 5000));
  CHECK(kind_of([&] { simulate_cox_complement(f, 4.0, ComplementMode::superpose, {0, 0}); }) ==
        ErrorKind::domain);

  toys::Gen gen(12);
  const auto r = toys::random_field(gen, 5, 5, 0.2, 0.5, 8.0);
  const double c = r.extremes().supremum;
  const double expect = c * r.grid().area() - r.integrate();
  std::vector<double> totals;
  for (std::uint64_t s = 0; s < 5000; ++s)
    totals.push_back(
        static_cast<double>(simulate_cox_complement(r, c, ComplementMode::superpose, {s, 1}).size()));
  CHECK(std::abs(toys::mean(totals) - expect) < 3.0 * std::sqrt(expect / 5000));
}

TEST_CASE("complement of a zero field matches direct simulation per pixel") {
  toys::Gen gen(31);
  const auto f = toys::random_field(gen, 3, 2, 0.5, 1.0, 12.0);
  const auto zero = IntensityField::uniform(f.grid(), 0.0);
  std::vector<double> level(f.grid().pixel_count());
  for (std::size_t p = 0; p < level.size(); ++p) level[p] = f.value(p);
  const int n = 4000;
  std::vector<double> direct(level.size(), 0.0), cox(level.size(), 0.0);
  for (int s = 0; s < n; ++s) {
    for (const auto& e : simulate_catalog(f, {static_cast<std::uint64_t>(s), 0}).events)
      direct[*f.grid().locate(e.lon, e.lat)] += 1.0;
    for (const auto& q : simulate_cox_complement(zero, level, ComplementMode::superthin,
                                                 {static_cast<std::uint64_t>(s), 1}))
      cox[*f.grid().locate(q.x, q.y)] += 1.0;
  }
  for (std::size_t p = 0; p < level.size(); ++p) {
    const double mu = f.pixel_integral(p);
    const double se = std::sqrt(2.0 * mu / n);
    CHECK(std::abs(direct[p] / n - cox[p] / n) < 3.0 * se);
  }
}

TEST_CASE("homogeneous simulation respects region and mean") {
  const auto unit = Region::from_rects({{0, 1, 0, 1}});
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(simulate_homogeneous(unit, 0.0, {s, 0}).empty());
  std::vector<double> totals;
  for (std::uint64_t s = 0; s < 10000; ++s)
    totals.push_back(static_cast<double>(simulate_homogeneous(unit, 100.0, {s, 0}).size()));
  CHECK(std::abs(toys::mean(totals) - 100.0) < 3.0 * std::sqrt(100.0 / 10000));

  // Rescaled-style strips: every point satisfies 0 <= x' <= T(y).
  RescaledRegion rr;
  rr.strips = {{0.0, 0.1, 3.0}, {0.1, 0.2, 0.5}, {0.2, 0.3, 1.7}};
  const auto region = rr.to_region();
  for (std::uint64_t s = 0; s < 50; ++s)
    for (const auto& p : simulate_homogeneous(region, 20.0, {s, 0})) {
      const auto& strip = rr.strips[static_cast<std::size_t>(std::min(2.0, std::floor(p.y / 0.1)))];
      CHECK(p.x >= 0.0);
      CHECK(p.x <= strip.extent + 1e-12);
    }
  CHECK(kind_of([&] { simulate_homogeneous(Region{}, 1.0, {0, 0}); }) == ErrorKind::domain);
}

#include <doctest.h>

#include <numbers>
#include <random>

#include "shortck/dimension.hpp"
#include "shortck/julia1d.hpp"

using namespace shortck;
using Cx = std::complex<double>;

namespace {

// Plain native iteration, the long-run reference.
Fate1 reference_fate(const Poly1& p, Cx z, std::size_t steps) {
  for (std::size_t n = 0; n < steps; ++n) {
    z = p(z);
    if (std::abs(z) > 1e8) return Fate1::Escaped;
    if (std::abs(z) < 1e-200) return Fate1::Attracted0;
  }
  return Fate1::Undecided;
}

PointSet circle(double r, std::size_t m) {
  PointSet s;
  for (std::size_t j = 0; j < m; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    s.push({r * std::cos(t), r * std::sin(t)});
  }
  return s;
}

}  // namespace

TEST_CASE("fate1d examples") {
  const Poly1 sq{0.0, 0.0, 1.0};
  const double re = sq.escape_radius(), ra = sq.attracting_radius();
  CHECK(ra > 0.0);
  CHECK(fate1d(sq, 0.5, 100, re, ra).fate == Fate1::Attracted0);
  CHECK(fate1d(sq, 2.0, 100, re, ra).fate == Fate1::Escaped);

  const Poly1 q = Poly1::quartic(0.01, 0.01);
  for (double x : {0.95, 0.97, -0.99, 1.02})
    CHECK(fate1d(q, x, 2000, q.escape_radius(), q.attracting_radius()).fate == reference_fate(q, x, 1000000));
}

TEST_CASE("Poly1 basics") {
  CHECK_THROWS_AS(Poly1({1.0, 2.0}), std::invalid_argument);
  const Poly1 p{0.0, 0.0, 1.0, 0.5};
  CHECK(p.degree() == 3);
  CHECK(p(Cx(2.0, 0.0)) == Cx(8.0, 0.0));
  CHECK(p.derivative(Cx(2.0, 0.0)) == Cx(10.0, 0.0));
  const auto crit = p.critical_points();
  REQUIRE(crit.size() == 2);
  for (const Cx c : crit) CHECK(std::abs(p.derivative(c)) < 1e-10);
  const double R = p.escape_radius();
  for (double t = 0; t < 6.3; t += 0.1) CHECK(std::abs(p(std::polar(R, t))) >= 2.0 * R + 1.0 - 1e-9);
}

TEST_CASE("Julia set of z^2 is the unit circle") {
  const Poly1 sq{0.0, 0.0, 1.0};
  const Rect rect = default_julia_rect(sq);
  const GridSet j = julia_grid(sq, rect, 256, 256, 400);
  REQUIRE_FALSE(j.empty());
  const double diag = std::hypot(j.dx(), j.dy());
  CHECK(hausdorff_distance(PointSet::from_grid(j), circle(1.0, 4096)) <= 2.0 * diag);

  const GridSet empty = julia_grid(sq, Rect{Cx(10.0, 10.0), 1.0, 1.0}, 32, 32, 200);
  CHECK(empty.empty());
}

TEST_CASE("Julia set of z^2 - 0.1 is one loop") {
  const Poly1 p{-0.1, 0.0, 1.0};
  const GridSet j = julia_grid(p, default_julia_rect(p), 256, 256, 400);
  const Components c = label_components(j);
  CHECK(c.count == 1);
  // the loop separates the origin from infinity
  const Components inside = label_components(j.complement());
  CHECK(inside.count == 2);
}

TEST_CASE("dilation") {
  const GridSet base(Rect{0.0, 2.0, 2.0}, 64, 64);
  GridSet one = base;
  one.set(32, 32);
  CHECK(dilate(one, 0.0).set == one);
  const Dilation d = dilate(one, 3.0 * one.dx());
  // lattice points of the closed disc of radius 3
  CHECK(d.set.count() == 29);
  CHECK(dilate(one, 0.2 * one.dx()).subpixel);

  const Poly1 sq{0.0, 0.0, 1.0};
  const GridSet j = julia_grid(sq, Rect{0.0, 3.0, 3.0}, 300, 300, 400);
  const GridSet a = dilate(j, 0.1).set;
  const double tol = 2.0 * std::hypot(j.dx(), j.dy());
  for (std::size_t y = 0; y < a.ny(); ++y)
    for (std::size_t x = 0; x < a.nx(); ++x) {
      const double r = std::abs(a.center_of(x, y));
      if (a.get(x, y)) REQUIRE(std::fabs(r - 1.0) <= 0.1 + tol);
      else REQUIRE(std::fabs(r - 1.0) >= 0.1 - tol);
    }
}

TEST_CASE("hyperbolicity probe") {
  CHECK(hyperbolicity_probe(Poly1{0.0, 0.0, 1.0}, 500, 2.0).verdict == ProbeVerdict::Pass);
  const Poly1 basilica{-1.0, 0.0, 1.0};
  const auto b = hyperbolicity_probe(basilica, 500, basilica.escape_radius());
  CHECK(b.verdict == ProbeVerdict::PassWithNote);
  CHECK_FALSE(b.note.empty());
  const Poly1 outside{0.26, 0.0, 1.0};
  const auto o = hyperbolicity_probe(outside, 500, outside.escape_radius());
  CHECK((o.verdict == ProbeVerdict::Fail || o.verdict == ProbeVerdict::Inconclusive));
  const Poly1 q = Poly1::quartic(0.01, 0.01);
  CHECK(hyperbolicity_probe(q, 500, q.escape_radius()).verdict != ProbeVerdict::Fail);
}

TEST_CASE("nested sequence for z^2") {
  const Poly1 sq{0.0, 0.0, 1.0};
  const Rect rect = default_julia_rect(sq);
  const NestedSequence ns = nested_sequence(sq, 0.2, 40, rect, 256, 256, 400);
  REQUIRE(ns.steps.size() >= 3);
  for (std::size_t n = 1; n < ns.steps.size(); ++n) {
    const auto& prev = ns.steps[n - 1];
    const auto& st = ns.steps[n];
    CHECK(st.delta > 0.0);
    CHECK(st.eta > 0.0);
    CHECK(st.cprime == std::min(st.delta, st.eta));
    CHECK(st.diam <= prev.diam);
    CHECK(dilate(image(sq, prev.C), 2.0 * st.delta).set.subset_of(prev.C));
    CHECK(dilate(image(sq, prev.D), 2.0 * st.eta).set.subset_of(prev.D));
  }
  CHECK(ns.steps.back().diam < ns.steps.front().diam);
  // C_0 holds the disc of radius 0.5 around 0
  const GridSet& c0 = ns.steps.front().C;
  for (double t = 0; t < 6.3; t += 0.2) CHECK(c0.contains(std::polar(0.5, t)));
  CHECK(ns.cprime(ns.steps.size() + 3) == 0.0);

  CHECK_THROWS_AS(nested_sequence(sq, 0.0, 5, rect, 64, 64, 100), std::invalid_argument);
  CHECK_THROWS_AS(nested_sequence(sq, 0.2, 5, Rect{0.0, 2.0, 2.0}, 64, 64, 100), std::invalid_argument);
}

TEST_CASE("perturbed streams follow the dichotomy") {
  const Poly1 sq{0.0, 0.0, 1.0};
  const NestedSequence ns = nested_sequence(sq, 0.2, 40, default_julia_rect(sq), 256, 256, 400);
  const auto inner = ns.steps.front().C.points();
  const auto outer = ns.steps.front().D.points();
  std::mt19937_64 rng(4);
  for (int s = 0; s < 100; ++s) {
    const Cx a = inner[rng() % inner.size()];
    REQUIRE(perturbed_stream(sq, ns, a, 0.999, 200, rng()) == StreamOutcome::ToZero);
    const Cx b = outer[rng() % outer.size()];
    REQUIRE(perturbed_stream(sq, ns, b, 0.999, 200, rng()) == StreamOutcome::Escaped);
  }
}

TEST_CASE("quartic streams follow the dichotomy") {
  const Poly1 q = Poly1::quartic(0.01, 0.01);
  const Rect rect = default_julia_rect(q);
  const GridSet j = julia_grid(q, rect, 1024, 1024, 400);
  const NestedSequence ns = nested_sequence(q, default_delta0(j), 40, rect, 1024, 1024, 400);
  REQUIRE(ns.steps.size() >= 3);
  // Free critical points escape, so the unbounded side sits above a positive Green level.
  CHECK(ns.green_level > 0.0);
  const auto inner = ns.steps.front().C.points();
  const auto outer = ns.steps.front().D.points();
  std::mt19937_64 rng(9);
  for (int s = 0; s < 100; ++s) {
    REQUIRE(perturbed_stream(q, ns, inner[rng() % inner.size()], 0.999, 200, rng()) == StreamOutcome::ToZero);
    REQUIRE(perturbed_stream(q, ns, outer[rng() % outer.size()], 0.999, 200, rng()) == StreamOutcome::Escaped);
  }
}

TEST_CASE("conservative image covers sampled images") {
  const Poly1 p{-0.1, 0.0, 1.0};
  const Rect rect = default_julia_rect(p);
  GridSet s(rect, 128, 128);
  for (std::size_t j = 50; j < 70; ++j)
    for (std::size_t i = 40; i < 60; ++i) s.set(i, j);
  const GridSet img = image(p, s);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int k = 0; k < 4000; ++k) {
    const std::size_t i = 40 + rng() % 20, j = 50 + rng() % 20;
    const Cx z = s.center_of(i, j) + Cx(u(rng) * s.dx(), u(rng) * s.dy());
    if (s.contains(z)) REQUIRE(img.contains(p(z)));
  }
}

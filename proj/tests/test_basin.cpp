#include <doctest.h>

#include <random>

#include "shortck/basin.hpp"
#include "shortck/sampling.hpp"

using namespace shortck;
using Cx = std::complex<double>;

namespace {

MapSequence theorem_seq() { return MapSequence::shift_like(CoeffSequence::generator(1, 3), PolySpec{1.0}); }

}  // namespace

TEST_CASE("default parameters for P = 1") {
  const auto seq = theorem_seq();
  const BasinParams p = default_basin_params(seq);
  CHECK(p.c == doctest::Approx(0.5));
  CHECK(p.M == doctest::Approx(1.0));
  CHECK(p.c_next == doctest::Approx(0.75));
  CHECK(p.M * p.c < 1.0);
  CHECK(p.escape == EscapeRule::FirstCoordinate);
  CHECK(p.r_escape >= 10.0);
  // the nesting inequality at n0
  CHECK(seq.coefficients()->a(p.n0).to_native() < p.c_next - p.M * p.c);
  if (p.n0 > 0) CHECK_FALSE(seq.coefficients()->a(p.n0 - 1).to_native() < p.c_next - p.M * p.c);

  const PolySpec Q{1.0, 1.0};
  const double c = default_polydisc_radius(Q);
  CHECK(2.0 * c * Q.abs_bound(c) <= 1.0 + 1e-12);
  CHECK(2.0 * (c + 1e-6) * Q.abs_bound(c + 1e-6) > 1.0);
}

TEST_CASE("classify_point examples") {
  const auto seq = theorem_seq();
  BasinParams p = default_basin_params(seq);
  CHECK(classify_point(seq, CPoint(2), p) == OrbitFate::attracted(0));
  CHECK(classify_point(seq, CPoint{p.c / 2, p.c / 2}, p) == OrbitFate::attracted(0));

  p.r_escape = 10.0;
  const OrbitFate f = classify_point(seq, CPoint{2.0, 0.0}, p);
  CHECK(f.tag == FateTag::Escaped);
  CHECK(f.n <= 4);  // 2 -> 4 -> 16

  p.n_max = 3;
  const OrbitFate u = classify_point(seq, CPoint{0.99, 0.0}, p);
  CHECK(u == OrbitFate::undecided(3));
}

TEST_CASE("region_of") {
  const double R = 10.0;
  CHECK(region_of(CPoint{R / 2, R / 2}, R).in_vr);
  CHECK(region_of(CPoint{2 * R, R / 2}, R).plus());
  const Region m = region_of(CPoint{R / 2, 2 * R, R}, R);
  CHECK_FALSE(m.in_vr);
  CHECK(m.minus());
  REQUIRE_FALSE(m.indices.empty());
  CHECK(m.indices.front() == 2);
  CHECK_THROWS_AS(region_of(CPoint{1.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("render_slice examples") {
  const auto seq = theorem_seq();
  const BasinParams p = default_basin_params(seq);

  const FateGrid tiny = render_slice(seq, z1_plane(2, 0.0, 0.01, 0.01, 16, 16), p);
  CHECK(tiny.count(FateTag::Attracted) == 256);

  const FateGrid far = render_slice(seq, z1_plane(2, Cx(1000.0, 0.0), 10.0, 10.0, 16, 16), p);
  CHECK(far.count(FateTag::Escaped) == 256);

  const SliceWindow w = z1_plane(2, 0.0, 3.0, 3.0, 96, 96);
  const FateGrid a = render_slice(seq, w, p);
  const FateGrid b = render_slice(seq, w, p);
  CHECK(a.fates == b.fates);
  CHECK(a.count(FateTag::Attracted) > 0);
  CHECK(a.count(FateTag::Escaped) > 0);
  CHECK_FALSE(boundary_pixels(a).empty());
}

TEST_CASE("boundary_pixels on synthetic grids") {
  FateGrid g;
  g.window = z1_plane(2, 0.0, 1.0, 1.0, 20, 10);
  g.fates.assign(200, OrbitFate::attracted(0));
  CHECK(boundary_pixels(g).empty());

  for (std::size_t j = 0; j < 10; ++j)
    for (std::size_t i = 10; i < 20; ++i) g.fates[j * 20 + i] = OrbitFate::escaped(1);
  const GridSet b = boundary_pixels(g);
  CHECK(b.count() == 10);
  for (std::size_t j = 0; j < 10; ++j) CHECK(b.get(9, j));
}

TEST_CASE("boundary_witness") {
  const auto seq = theorem_seq();
  const BasinParams p = default_basin_params(seq);
  const BoundaryWitness inside = boundary_witness(seq, CPoint{0.01, 0.01}, 0.01, 256, p);
  CHECK_FALSE(inside.found);
  CHECK(inside.attracted.has_value());
  CHECK_FALSE(inside.escaped.has_value());

  const BoundaryWitness outside = boundary_witness(seq, CPoint{1e4, 0.0}, 1.0, 256, p);
  CHECK_FALSE(outside.found);
  CHECK_FALSE(outside.attracted.has_value());

  const SliceWindow w = z1_plane(2, 0.0, 3.0, 3.0, 128, 128);
  const FateGrid g = render_slice(seq, w, p);
  const GridSet b = boundary_pixels(g);
  std::size_t tried = 0, found = 0;
  for (std::size_t j = 0; j < w.ny; ++j)
    for (std::size_t i = 0; i < w.nx; ++i) {
      if (!b.get(i, j) || (i + 3 * j) % 7 != 0) continue;
      ++tried;
      found += boundary_witness(seq, w.point_at(i, j), 4.0 * w.width / w.nx, 2048, p, i * 1000 + j).found;
    }
  REQUIRE(tried > 10);
  CHECK(found == tried);
}

TEST_CASE("orbit properties on sampled points") {
  const auto seq = theorem_seq();
  const BasinParams p = default_basin_params(seq);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::size_t attracted = 0, reexits = 0, trichotomy = 0, plus_not_escaped = 0;
  for (int s = 0; s < 2000; ++s) {
    const CPoint z{Cx(u(rng), u(rng)), Cx(u(rng), u(rng))};
    const OrbitTrace t = trace_orbit(seq, z, p);
    CHECK(t.fate == classify_point(seq, z, p));
    if (t.fate.tag == FateTag::Attracted) {
      ++attracted;
      reexits += t.reexits;
    }
    trichotomy += t.trichotomy_violations;
    if (t.first_plus && t.fate.tag != FateTag::Escaped) ++plus_not_escaped;
  }
  CHECK(attracted > 100);
  CHECK(reexits == 0);
  CHECK(trichotomy == 0);
  CHECK(plus_not_escaped == 0);
}

TEST_CASE("other families") {
  const auto rr = MapSequence::constant(step::RosayRudin{});
  const BasinParams p = default_basin_params(rr);
  CHECK(classify_point(rr, CPoint{1e-4, 1e-4}, p).tag == FateTag::Attracted);

  const auto half = MapSequence::constant(step::DiagLinear{0.5, 3});
  const BasinParams q = default_basin_params(half);
  CHECK(q.c == doctest::Approx(0.5));
  CHECK(classify_point(half, CPoint{1e6, -1e6, 3.0}, q).tag == FateTag::Attracted);
}

TEST_CASE("slice window validation") {
  SliceWindow w = z1_plane(2, 0.0, 1.0, 1.0, 8, 8);
  CHECK_NOTHROW(w.validate());
  w.v = w.u;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);
  w = z1_plane(2, 0.0, 1.0, 1.0, 0, 8);
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

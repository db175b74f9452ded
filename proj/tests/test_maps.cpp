#include <doctest.h>

#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "shortck/maps.hpp"
#include "shortck/sampling.hpp"

using namespace shortck;
namespace mp = boost::multiprecision;
using Cx = std::complex<double>;

namespace {

CPoint pt(Cx a, Cx b) { return CPoint{a, b}; }

step::ShiftLike shift(double a, PolySpec P, std::size_t k = 2) {
  return {ExtReal::from_native(a), P, k, 2};
}

std::vector<CPoint> polydisc_points(std::size_t k, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::vector<CPoint> out;
  for (std::size_t n = 0; n < count; ++n) {
    CPoint z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = ExtComplex::from_native(Cx(u(rng), u(rng)));
    out.push_back(z);
  }
  return out;
}

double rel_err(const CPoint& a, const CPoint& b) {
  return distance(a, b) / std::max(1.0, b.norm().to_native());
}

mp::cpp_rational exact(const ExtReal& x) {
  if (x.is_zero()) return 0;
  // mantissa has 53 significant bits
  const mp::cpp_int m = static_cast<long long>(std::ldexp(x.signed_mantissa(), 52));
  const std::int64_t e = x.exp2() - 52;
  return e >= 0 ? mp::cpp_rational(m << e) : mp::cpp_rational(m, mp::cpp_int(1) << -e);
}

}  // namespace

TEST_CASE("worked examples of apply and apply_inverse") {
  const AutoStep s = shift(0.1, PolySpec{1.0});
  CHECK(shortck::apply(s, pt(0.0, 0.0)).is_zero());
  const CPoint w = shortck::apply(s, pt(1.0, 1.0));
  CHECK(w[0].to_native() == Cx(1.1, 0.0));
  CHECK(std::abs(w[1].to_native() - Cx(0.1, 0.0)) < 1e-17);
  CHECK(distance(apply_inverse(s, pt(1.1, 0.1)), pt(1.0, 1.0)) < 1e-15);

  CHECK(shortck::apply(step::RosayRudin{}, pt(0.0, 0.0)).is_zero());
  CHECK(apply_inverse(step::DiagLinear{0.5, 2}, pt(1.0, 0.0)) == pt(2.0, 0.0));
  CHECK_THROWS_AS(shortck::apply(s, CPoint(3)), std::invalid_argument);
}

TEST_CASE("inverse round trip and origin for every family") {
  const std::vector<AutoStep> steps = {
      shift(0.3, PolySpec{1.0, 0.5}),
      shift(1e-3, PolySpec{2.0}, 4),
      step::HenonLike{ExtReal::from_native(0.2), PolySpec{0.0, 0.0, 1.0, 0.3}},
      step::RosayRudin{},
      step::RosayRudin{3},
      step::DiagLinear{0.5, 3},
  };
  for (const auto& s : steps) {
    const std::size_t k = dimension(s);
    CHECK(shortck::apply(s, CPoint(k)).is_zero());
    for (const auto& z : polydisc_points(k, 1000, 17)) {
      REQUIRE(rel_err(apply_inverse(s, shortck::apply(s, z)), z) < 1e-10);
    }
  }
}

TEST_CASE("shift-like permutation structure is exact") {
  const double a = 0.37;
  const AutoStep s = shift(a, PolySpec{1.0, 2.0}, 5);
  const ExtComplex ea = ExtComplex::from_native(a);
  for (const auto& z : polydisc_points(5, 200, 5)) {
    const CPoint w = shortck::apply(s, z);
    for (std::size_t i = 1; i < 5; ++i) REQUIRE(w[i] == ea * z[i - 1]);
  }
}

TEST_CASE("tangent agrees with central differences") {
  const std::vector<AutoStep> steps = {
      shift(0.3, PolySpec{1.0, 0.5}),
      shift(0.05, PolySpec{1.0}, 3),
      step::HenonLike{ExtReal::from_native(0.2), PolySpec{0.0, 0.0, 1.0, 0.3}},
      step::RosayRudin{},
      step::DiagLinear{0.5, 2},
  };
  const double h = 1e-6;
  for (const auto& s : steps) {
    const std::size_t k = dimension(s);
    const auto pts = polydisc_points(k, 40, 9);
    for (std::size_t n = 0; n + 1 < pts.size(); n += 2) {
      const CPoint& z = pts[n];
      const CPoint& v = pts[n + 1];
      const auto t = tangent(s, z, v);
      REQUIRE(t.has_value());
      const ExtComplex step_h = ExtComplex::from_native(h);
      const CPoint fd = ExtComplex::from_native(0.5 / h) *
                        (shortck::apply(s, z + step_h * v) - shortck::apply(s, z - step_h * v));
      REQUIRE(distance(*t, fd) < 1e-7 * std::max(1.0, t->norm().to_native()));
    }
  }
  step::Custom c{std::make_shared<step::CustomMaps>(step::CustomMaps{2, [](const CPoint& z) { return z; }, {}})};
  CHECK_FALSE(tangent(c, CPoint(2), CPoint(2)).has_value());
  CHECK_THROWS_AS(apply_inverse(c, CPoint(2)), std::logic_error);
}

TEST_CASE("forward orbit and composition indexing") {
  const auto seq = MapSequence::shift_like(CoeffSequence::generator(1, 3), PolySpec{1.0});
  const CPoint z = pt(0.1, 0.1);
  const auto orbit = forward_orbit(seq, z, 0);
  REQUIRE(orbit.size() == 2);
  CHECK(orbit[0] == z);
  CHECK(orbit[1] == shortck::apply(seq.step_at(0), z));
  CHECK(compose(seq, z, 3) == forward_orbit(seq, z, 3).back());
  // each inverse step divides by a_n, so the round trip loses about 1/a_n
  CHECK(rel_err(compose_inverse(seq, compose(seq, z, 1), 1), z) < 1e-10);
  CHECK(rel_err(compose_inverse(seq, compose(seq, z, 3), 3), z) < 1e-15 * std::exp(1.0 + 3.0 + 9.0 + 27.0));
  const auto half = MapSequence::constant(step::DiagLinear{0.5, 2});
  CHECK(compose_inverse(half, compose(half, z, 60), 60) == z);

  for (const auto& p : forward_orbit(seq, CPoint(2), 20)) CHECK(p.is_zero());

  const auto long_orbit = forward_orbit(seq, z, 10);
  for (std::size_t n = 1; n + 1 < long_orbit.size(); ++n)
    CHECK(long_orbit[n + 1].norm().log_abs().value < long_orbit[n].norm().log_abs().value);
}

TEST_CASE("orbit matches exact rational iteration") {
  const auto coeffs = CoeffSequence::generator(1, 3);
  const auto seq = MapSequence::shift_like(coeffs, PolySpec{1.0});
  const CPoint z = pt(0.1, 0.1);
  mp::cpp_rational x = exact(ExtReal::from_native(0.1)), y = x;
  for (std::size_t n = 0; n <= 4; ++n) {
    const mp::cpp_rational a = exact(coeffs.a(n));
    const mp::cpp_rational nx = x * x + a * y;
    y = a * x;
    x = nx;
    const CPoint w = compose(seq, z, n);
    using Big = mp::cpp_bin_float_100;
    const Big bx(x), by(y);
    const Big ex = mp::ldexp(Big(w[0].re.signed_mantissa()), static_cast<int>(w[0].re.exp2()));
    const Big ey = mp::ldexp(Big(w[1].re.signed_mantissa()), static_cast<int>(w[1].re.exp2()));
    CHECK(static_cast<double>(mp::abs(ex - bx) / bx) < 1e-13);
    CHECK(static_cast<double>(mp::abs(ey - by) / by) < 1e-13);
  }
}

TEST_CASE("deep orbits stay representable") {
  const auto seq = MapSequence::shift_like(CoeffSequence::generator(1, 3), PolySpec{1.0});
  const CPoint w = compose(seq, pt(0.1, 0.1), 40);
  CHECK_FALSE(w.is_zero());
  CHECK_FALSE(w.has_overflow());
  CHECK(w.norm().log_abs().value < -1e12);
}

TEST_CASE("validate_sequence") {
  const auto g3 = validate_sequence(CoeffSequence::generator(1, 3), 40);
  CHECK(g3.passed());
  CHECK(g3.rows.size() == 41);

  const auto g2 = validate_sequence(CoeffSequence::generator(1, 2), 40);
  CHECK_FALSE(g2.root_decay_ok);
  for (const auto& r : g2.rows) CHECK(r.root_log == doctest::Approx(-1.0));

  const std::vector<double> list = {0.1, 0.009};
  const auto e = validate_sequence(CoeffSequence::explicit_values(list), 10);
  CHECK(e.decay_ok);
  CHECK(e.passed());
  const std::vector<double> bad = {0.1, 0.011};
  CHECK_FALSE(validate_sequence(CoeffSequence::explicit_values(bad), 10).decay_ok);
}

TEST_CASE("explicit coefficients continue by cubing") {
  const auto c = CoeffSequence::explicit_logs({-1.0, -3.0});
  CHECK(c.log_a(2).value == doctest::Approx(-9.0));
  CHECK(c.log_a(3).value == doctest::Approx(-27.0));
}

TEST_CASE("polynomial helpers") {
  const PolySpec P{1.0, 2.0, 3.0};
  CHECK(P.degree() == 2);
  CHECK(P.eval(Cx(2.0, 0.0)) == Cx(17.0, 0.0));
  CHECK(P.abs_bound(0.5) == doctest::Approx(2.75));
  CHECK_NOTHROW(P.require_positive());
  CHECK_THROWS_AS(PolySpec({0.0, 1.0}).require_positive(), std::invalid_argument);
  CHECK_THROWS_AS(PolySpec({1.0, -1.0}).require_positive(), std::invalid_argument);
}

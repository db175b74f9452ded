#include <doctest.h>

#include "shortck/basin.hpp"
#include "shortck/conjugacy.hpp"

using namespace shortck;

namespace {

MapSequence half() { return MapSequence::constant(step::DiagLinear{0.5, 2}); }

struct Fixture {
  MapSequence S = half();
  UUBWitness w = *verify_uub(S, 0.95, 0.55).witness;
  ToleranceSchedule sched = tolerance_schedule(w, S, 30);
  std::vector<CPoint> cloud = ball_cloud(2, w.r, 3, 8, 64, 3);
  std::vector<CPoint> K = ball_cloud(2, w.r0, 2, 8, 32, 9);
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("verify_uub examples") {
  const auto a = verify_uub(MapSequence::constant(step::DiagLinear{0.4, 2}), 1.0, 0.5);
  REQUIRE(a.ok());
  CHECK(a.witness->worst_ratio == doctest::Approx(0.4));
  const auto b = verify_uub(MapSequence::constant(step::DiagLinear{0.6, 2}), 1.0, 0.5);
  CHECK_FALSE(b.ok());
  REQUIRE(b.violation.has_value());
  CHECK(b.violation->ratio == doctest::Approx(0.6));

  const auto s = MapSequence::shift_like(CoeffSequence::generator(1, 3), PolySpec{1.0});
  const auto c = verify_uub(s, 0.2, 0.5);
  CHECK(c.ok());
  CHECK_THROWS_AS(verify_uub(s, 0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(verify_uub(s, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("witness constants") {
  const UUBWitness w = make_witness(0.95, 0.55);
  CHECK(w.r0 == doctest::Approx(0.5225));
  CHECK(w.eps == doctest::Approx(0.38475));
  CHECK(w.delta == doctest::Approx(0.192375));
  CHECK(w.Ctilde == doctest::Approx(0.742375));
  CHECK(w.eps < w.r - w.r0);
  CHECK(w.delta < std::min(w.eps, 1.0 - w.C));
  CHECK_THROWS_AS(make_witness(0.95, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(make_witness(0.95, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("schedule for repeated halving") {
  const auto& f = fixture();
  REQUIRE(f.sched.rows.size() == 31);
  for (const auto& r : f.sched.rows) {
    CHECK(std::fabs(r.M_measured / std::ldexp(1.0, static_cast<int>(r.n)) - 1.0) < 0.1);
    CHECK(r.M == 2.0 * r.M_measured);
    CHECK(r.delta_n > 0.0);
    CHECK(r.delta_n <= f.w.delta * std::pow(f.w.Ctilde, static_cast<double>(r.n)) * f.w.r0);
    CHECK(r.eps_n == doctest::Approx(std::pow(f.w.eps, static_cast<double>(r.n + 1)) / (2.0 * r.M)));
  }
  for (std::size_t n = 1; n < f.sched.rows.size(); ++n) CHECK(f.sched.delta(n) < f.sched.delta(n - 1));
  CHECK(f.sched.delta(100) == 0.0);
}

TEST_CASE("check_perturbation") {
  const auto& f = fixture();
  const auto same = check_perturbation(f.S, f.S, f.sched, f.cloud);
  CHECK(same.passed());
  for (const auto& r : same.rows) CHECK(r.sup_diff == 0.0);

  for (Bump b : {Bump::LinearZ1E1, Bump::SquareZ2E1, Bump::SquareZ1E2})
    CHECK(check_perturbation(f.S, perturbed(f.S, f.sched, b, 0.5), f.sched, f.cloud).passed());

  // The square bumps land in a coordinate where S vanishes on the axis
  // samples, so the doubled bump is visible at every n.
  for (Bump b : {Bump::SquareZ2E1, Bump::SquareZ1E2}) {
    const auto bad = check_perturbation(f.S, perturbed(f.S, f.sched, b, 2.0), f.sched, f.cloud);
    CHECK_FALSE(bad.passed());
    for (const auto& r : bad.rows) CHECK_FALSE(r.pass);
  }
  CHECK_FALSE(check_perturbation(f.S, perturbed(f.S, f.sched, Bump::LinearZ1E1, 2.0), f.sched, f.cloud).passed());
}

TEST_CASE("conjugacy profile") {
  const auto& f = fixture();
  const auto id = conjugacy_profile(f.S, f.S, f.sched, f.K, 30);
  CHECK(id.certificate);
  for (double d : id.step_diff) CHECK(d == 0.0);
  CHECK(id.worst_certificate_ratio == 0.0);

  for (Bump b : {Bump::LinearZ1E1, Bump::SquareZ2E1, Bump::SquareZ1E2}) {
    const auto F = perturbed(f.S, f.sched, b, 0.5);
    const auto p = conjugacy_profile(f.S, F, f.sched, f.K, 30);
    CHECK(p.certificate);
    CHECK(p.worst_certificate_ratio <= 1.0);
    REQUIRE(p.step_diff.size() == p.step_bound.size());
    for (std::size_t n = 0; n < p.step_diff.size(); ++n) CHECK(p.step_diff[n] <= p.step_bound[n]);
    CHECK(p.min_separation_out > 0.0);
    CHECK(p.used + p.excluded == f.K.size());
  }
}

TEST_CASE("containment under admissible perturbation") {
  const auto& f = fixture();
  for (Bump b : {Bump::LinearZ1E1, Bump::SquareZ2E1, Bump::SquareZ1E2}) {
    const auto F = perturbed(f.S, f.sched, b, 0.5);
    const auto c = containment_check(F, f.w, 30, 64, 4);
    CHECK(c.passed());
    CHECK(c.worst_ratio <= 1.0 + 1e-9);
    BasinParams bp = default_basin_params(F);
    for (const auto& z : ball_cloud(2, f.w.r0, 1, 16, 0, 5))
      CHECK(classify_point(F, z, bp).tag == FateTag::Attracted);
  }
}

TEST_CASE("reschedule") {
  const auto& f = fixture();
  const auto same = reschedule(f.w, f.S, f.w.r, 30);
  REQUIRE(same.rows.size() == f.sched.rows.size());
  for (std::size_t n = 0; n < same.rows.size(); ++n) CHECK(same.rows[n].delta_n == f.sched.rows[n].delta_n);
  const auto small = reschedule(f.w, f.S, 0.5 * f.w.r, 30);
  for (std::size_t n = 0; n < small.rows.size(); ++n) CHECK(small.rows[n].delta_n <= f.sched.rows[n].delta_n);
  CHECK_THROWS_AS(reschedule(f.w, f.S, 0.0, 30), std::invalid_argument);
  CHECK_THROWS_AS(reschedule(f.w, f.S, 2.0 * f.w.r, 30), std::invalid_argument);
}

TEST_CASE("schedule CSV") {
  const auto& f = fixture();
  const std::string s = schedule_csv(f.sched);
  CHECK(std::count(s.begin(), s.end(), '\n') >= 32);
  CHECK(std::string(bump_name(Bump::SquareZ2E1)) == "square_z2_e1");
}

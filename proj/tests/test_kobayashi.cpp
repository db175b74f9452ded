#include <doctest.h>

#include "shortck/kobayashi.hpp"

using namespace shortck;
using Cx = std::complex<double>;

namespace {

MapSequence theorem_seq() { return MapSequence::shift_like(CoeffSequence::generator(1, 3), PolySpec{1.0}); }

DiscParams params_for(const MapSequence& seq) {
  DiscParams dp;
  dp.basin = default_basin_params(seq);
  return dp;
}

const CPoint kDiag{Cx(std::sqrt(0.5), 0.0), Cx(0.0, std::sqrt(0.5))};

}  // namespace

TEST_CASE("linear contraction gives the closed-form disc") {
  const auto S = MapSequence::constant(step::DiagLinear{0.5, 2});
  const DiscParams dp = params_for(S);
  const double r = dp.basin.c;
  for (double R : {10.0, 100.0, 1000.0}) {
    const DiscWitness dw = disc_witness(S, CPoint(2), CPoint{1.0, 0.0}, R, dp);
    REQUIRE(dw.admissible);
    // F(n) halves n + 1 times
    CHECK(dw.n + 1 == static_cast<std::size_t>(std::ceil(std::log2(R / r))));
    CHECK(dw.derivative_error < 1e-3);
    CHECK(distance(dw.fd_derivative, CPoint{R, 0.0}) < 1e-9 * R);
    CHECK(dw.center_value.is_zero());
    CHECK(dw.containment_violations == 0);
    CHECK(dw.samples == dp.m);
  }
}

TEST_CASE("shift-like disc at a basin point") {
  const auto T = theorem_seq();
  const DiscParams dp = params_for(T);
  const CPoint p{0.05, 0.05};
  const DiscWitness dw = disc_witness(T, p, kDiag, 100.0, dp);
  REQUIRE(dw.admissible);
  CHECK(dw.containment_violations == 0);
  CHECK(dw.derivative_error < 1e-2);
  CHECK(dw.roundtrip_error < 1e-12);
  CHECK(distance(dw.center_value, p) < 1e-12);
}

TEST_CASE("derivative scales linearly in R") {
  const auto T = theorem_seq();
  const DiscParams dp = params_for(T);
  const CPoint p{Cx(0.1, 0.05), -0.05};
  const DiscWitness a = disc_witness(T, p, kDiag, 50.0, dp);
  const DiscWitness b = disc_witness(T, p, kDiag, 100.0, dp);
  REQUIRE((a.admissible && b.admissible));
  CHECK(b.fd_derivative.norm().to_native() == doctest::Approx(2.0 * a.fd_derivative.norm().to_native()).epsilon(1e-2));
}

TEST_CASE("tiny R leaves the disc at p") {
  const auto T = theorem_seq();
  const CPoint p{0.05, 0.05};
  const DiscWitness dw = disc_witness(T, p, kDiag, 1e-8, params_for(T));
  REQUIRE(dw.admissible);
  CHECK(dw.fd_derivative.norm().to_native() < 1e-7);
  CHECK(distance(dw.center_value, p) < 1e-12);
}

TEST_CASE("inadmissible and invalid requests") {
  const auto T = theorem_seq();
  DiscParams dp = params_for(T);
  dp.n_max = 1;
  const DiscWitness dw = disc_witness(T, CPoint{0.05, 0.05}, kDiag, 1e6, dp);
  CHECK_FALSE(dw.admissible);
  CHECK_FALSE(dw.diagnostic.empty());
  CHECK(dw.log_xi_norm.size() == dw.log_required.size());

  dp = params_for(T);
  CHECK_THROWS_AS(disc_witness(T, CPoint{0.05, 0.05}, kDiag, 0.0, dp), std::invalid_argument);
  CHECK_THROWS_AS(disc_witness(T, CPoint{0.05, 0.05}, CPoint{2.0, 0.0}, 10.0, dp), std::invalid_argument);
  CHECK_THROWS_AS(disc_witness(T, CPoint{0.05, 0.05, 0.0}, CPoint{1.0, 0.0, 0.0}, 10.0, dp), std::invalid_argument);
}

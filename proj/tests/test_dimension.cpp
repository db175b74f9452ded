#include <doctest.h>

#include <numbers>
#include <random>

#include "shortck/dimension.hpp"

using namespace shortck;
using Cx = std::complex<double>;

namespace {

GridSet ring(const Rect& rect, std::size_t n, double r) {
  GridSet g(rect, n, n);
  const double half = 0.5 * std::hypot(g.dx(), g.dy());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (std::fabs(std::abs(g.center_of(i, j)) - r) <= half) g.set(i, j);
  return g;
}

PointSet segment(std::size_t m) {
  PointSet s;
  for (std::size_t i = 0; i <= m; ++i) s.push({static_cast<double>(i) / static_cast<double>(m), 0.0});
  return s;
}

PointSet random_set(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointSet s;
  for (std::size_t i = 0; i < count; ++i) s.push({u(rng), u(rng)});
  return s;
}

}  // namespace

TEST_CASE("box_count examples") {
  PointSet pt;
  pt.push({0.3, 0.7});
  for (double eps : {1.0, 0.1, 1e-3, 1e-6}) CHECK(box_count(pt, eps).count == 1);

  const std::size_t n = box_count(segment(10000), 0.1).count;
  CHECK((n == 10 || n == 11));

  const GridSet c = ring(Rect{0.0, 2.5, 2.5}, 1024, 1.0);
  const std::size_t cells = box_count(c, 0.01).count;
  CHECK(cells > 2.0 * std::numbers::pi / 0.01);
  CHECK(cells < 3.0 * 2.0 * std::numbers::pi / 0.01);
  CHECK_THROWS_AS(box_count(c, 0.5 * c.dx()), std::invalid_argument);
  CHECK(box_count(PointSet{}, 0.1).empty);
}

TEST_CASE("gamma content") {
  PointSet pt;
  pt.push({0.0, 0.0});
  for (double eps : {0.1, 0.01, 0.001}) CHECK(gamma_content(pt, 1.0, eps).gamma == doctest::Approx(eps));

  const PointSet seg = segment(100000);
  for (double eps : {0.1, 0.01, 0.001}) CHECK(gamma_content(seg, 1.0, eps).gamma == doctest::Approx(1.0).epsilon(0.12));
  CHECK(gamma_content(seg, 0.5, 0.001).gamma > 5.0 * gamma_content(seg, 0.5, 0.1).gamma);
}

TEST_CASE("dimension oracles") {
  PointSet pt;
  pt.push({0.0, 0.0});
  const DimEstimate d0 = boxdim_estimate(pt, geometric_eps(1.0, 1e-3, 12));
  CHECK(d0.slope == doctest::Approx(0.0));

  const GridSet c = ring(Rect{0.0, 2.5, 2.5}, 1024, 1.0);
  const DimEstimate d1 = boxdim_estimate(c, default_eps_schedule(c));
  CHECK(d1.slope == doctest::Approx(1.0).epsilon(0.1));
  CHECK(d1.r2 > 0.99);

  GridSet sq(Rect{Cx(0.5, 0.5), 1.0, 1.0}, 512, 512);
  for (std::size_t i = 0; i < sq.size(); ++i) sq.set_at(i);
  const DimEstimate d2 = boxdim_estimate(sq, default_eps_schedule(sq));
  CHECK(d2.slope == doctest::Approx(2.0).epsilon(0.05));

  CHECK_THROWS_AS(boxdim_estimate(pt, {0.1, 0.05, 0.02}), std::invalid_argument);
  CHECK_THROWS_AS(boxdim_estimate(pt, {0.1, 0.09, 0.08, 0.07}), std::invalid_argument);
}

TEST_CASE("regression on exact power laws") {
  const auto e = geometric_eps(1.0, 1.0 / 1024.0, 11);
  REQUIRE(e.size() == 11);
  CHECK(e.back() == doctest::Approx(1.0 / 1024.0));
  std::vector<std::size_t> exact;
  for (double x : e) exact.push_back(static_cast<std::size_t>(std::llround(std::pow(x, -1.5))));
  const DimEstimate d = boxdim_from_counts(e, exact);
  CHECK(d.slope == doctest::Approx(1.5).epsilon(0.01));
  CHECK(d.r2 > 0.999);
}

TEST_CASE("Hausdorff distance") {
  const Rect rect{0.0, 5.0, 5.0};
  const GridSet a = ring(rect, 500, 1.0), b = ring(rect, 500, 2.0);
  const double pix = std::hypot(a.dx(), a.dy());
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0).epsilon(pix));
  CHECK(std::fabs(hausdorff_distance(a, b) - 1.0) <= pix);
  CHECK(hausdorff_distance(PointSet::from_grid(a), PointSet::from_grid(b)) == doctest::Approx(hausdorff_distance(a, b)));

  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const PointSet A = random_set(rng, 1 + rng() % 40), B = random_set(rng, 1 + rng() % 40),
                   C = random_set(rng, 1 + rng() % 40);
    REQUIRE(hausdorff_distance(A, A) == 0.0);
    REQUIRE(hausdorff_distance(A, B) == hausdorff_distance(B, A));
    REQUIRE(hausdorff_distance(A, C) <= hausdorff_distance(A, B) + hausdorff_distance(B, C) + 1e-12);
  }
  CHECK_THROWS_AS(hausdorff_distance(PointSet{}, random_set(rng, 3)), std::invalid_argument);
}

TEST_CASE("grid directed distance matches brute force") {
  std::mt19937_64 rng(3);
  const Rect rect{0.0, 1.0, 1.0};
  for (int t = 0; t < 20; ++t) {
    GridSet a(rect, 40, 40), b(rect, 40, 40);
    for (int k = 0; k < 30; ++k) {
      a.set(rng() % 40, rng() % 40);
      b.set(rng() % 40, rng() % 40);
    }
    const double brute = directed_distance(PointSet::from_grid(a), PointSet::from_grid(b));
    CHECK(directed_distance(a, b) == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("box counts are monotone and scale") {
  std::mt19937_64 rng(5);
  const PointSet B = random_set(rng, 500);
  PointSet A;
  for (std::size_t i = 0; i < B.size(); i += 3) A.push({B[i][0], B[i][1]});
  PointSet B2;
  for (std::size_t i = 0; i < B.size(); ++i) B2.push({2.0 * B[i][0], 2.0 * B[i][1]});
  for (double eps : {0.5, 0.1, 0.03, 0.01}) {
    CHECK(box_count(A, eps).count <= box_count(B, eps).count);
    CHECK(box_count(B2, eps).count == box_count(B, eps / 2.0).count);
  }
}

TEST_CASE("product with an interval adds one to the dimension") {
  const GridSet c = ring(Rect{0.0, 2.5, 2.5}, 1024, 1.0);
  const PointSet J = PointSet::from_grid(c);
  const PointSet JI = J.times_interval(0.0, 1.0, 300);
  CHECK(JI.dim == 3);
  CHECK(JI.size() == 300 * J.size());
  const auto eps = geometric_eps(0.5, 0.01, 12);
  const double dj = boxdim_estimate(J, eps).slope;
  const double dji = boxdim_estimate(JI, eps).slope;
  CHECK(std::fabs(dji - (dj + 1.0)) < 0.15);
}

TEST_CASE("CSV layout") {
  const GridSet c = ring(Rect{0.0, 2.5, 2.5}, 256, 1.0);
  const std::string csv = boxdim_csv(boxdim_estimate(c, default_eps_schedule(c)));
  CHECK(csv.rfind("eps,N,log_inv_eps,log_N\n", 0) == 0);
}

#pragma once

// Box counting, box-content, upper-box-dimension regression and Hausdorff
// distance for rasters and finite point sets.

#include <cstddef>
#include <string>
#include <vector>

#include "shortck/gridset.hpp"

namespace shortck {

/// Finite point set in R^dim, stored flat.
struct PointSet {
  std::size_t dim = 2;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  const double* operator[](std::size_t i) const { return coords.data() + i * dim; }
  void push(std::initializer_list<double> p) { coords.insert(coords.end(), p.begin(), p.end()); }

  /// Pixel centres of a raster as points of R^2.
  static PointSet from_grid(const GridSet& g);
  /// S x {t_0, ..., t_{m-1}}, t_j equispaced in [lo, hi].
  PointSet times_interval(double lo, double hi, std::size_t m) const;
};

struct BoxCount {
  std::size_t count = 0;
  bool empty = false;
};

/// Occupied cells of the eps-grid anchored at the rectangle's corner; member
/// pixels are represented by their centres. Throws std::invalid_argument
/// when eps is below the pixel size.
BoxCount box_count(const GridSet& s, double eps);
/// Occupied cells of the eps-grid anchored at the origin.
BoxCount box_count(const PointSet& s, double eps);

struct CoverStats {
  double eps = 0.0;
  std::size_t count = 0;
  double h = 0.0;
  double gamma = 0.0;  // eps^h * count
  bool empty = false;
};

CoverStats gamma_content(const GridSet& s, double h, double eps);
CoverStats gamma_content(const PointSet& s, double h, double eps);

struct DimEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double eps_hi = 0.0;  // window used
  double eps_lo = 0.0;
  std::size_t window = 0;  // number of scales in the window
  bool degenerate = false;  // every count in the chosen window equal
  std::vector<double> eps;
  std::vector<std::size_t> counts;
};

/// Least squares of log N(eps) on log(1/eps) over the contiguous window of at
/// least 4 scales spanning at least one decade with the best r^2 (the widest
/// among near-ties). Throws std::invalid_argument unless eps_list has at
/// least 4 distinct positive values spanning 1.5 decades.
DimEstimate boxdim_estimate(const GridSet& s, std::vector<double> eps_list);
DimEstimate boxdim_estimate(const PointSet& s, std::vector<double> eps_list);

/// Regression core on precomputed counts (eps strictly decreasing).
DimEstimate boxdim_from_counts(const std::vector<double>& eps, const std::vector<std::size_t>& counts);

/// hi, hi*q, ..., count values down to lo (geometric).
std::vector<double> geometric_eps(double hi, double lo, std::size_t count);

/// Default schedule for a raster: from a quarter of the shorter side down to
/// two pixels, 12 scales.
std::vector<double> default_eps_schedule(const GridSet& s);

/// sup_{a in A} inf_{b in B} |a - b|. Throws std::invalid_argument on empty input.
double directed_distance(const PointSet& A, const PointSet& B);
/// Grid version over pixel centres (same geometry required), via the
/// distance transform of B.
double directed_distance(const GridSet& A, const GridSet& B);

double hausdorff_distance(const PointSet& A, const PointSet& B);
double hausdorff_distance(const GridSet& A, const GridSet& B);

/// CSV rows eps,N,log_inv_eps,log_N plus a trailing estimate row.
std::string boxdim_csv(const DimEstimate& d);

}  // namespace shortck

#include "shortck/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "shortck/parallel.hpp"

namespace shortck {

PointSet PointSet::from_grid(const GridSet& g) {
  PointSet p;
  p.dim = 2;
  for (const auto z : g.points()) p.push({z.real(), z.imag()});
  return p;
}

PointSet PointSet::times_interval(double lo, double hi, std::size_t m) const {
  PointSet out;
  out.dim = dim + 1;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double t = m == 1 ? lo : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(m - 1);
      out.coords.insert(out.coords.end(), (*this)[i], (*this)[i] + dim);
      out.coords.push_back(t);
    }
  }
  return out;
}

BoxCount box_count(const GridSet& s, double eps) {
  if (!(eps >= std::max(s.dx(), s.dy()) * (1.0 - 1e-12)))
    throw std::invalid_argument("box_count: eps below pixel scale");
  const double x0 = s.rect().center.real() - 0.5 * s.rect().width;
  const double y0 = s.rect().center.imag() - 0.5 * s.rect().height;
  const std::size_t cx = static_cast<std::size_t>(std::ceil(s.rect().width / eps)) + 1;
  const std::size_t cy = static_cast<std::size_t>(std::ceil(s.rect().height / eps)) + 1;
  std::vector<std::uint8_t> occ(cx * cy, 0);
  std::size_t members = 0;
  for (std::size_t j = 0; j < s.ny(); ++j) {
    for (std::size_t i = 0; i < s.nx(); ++i) {
      if (!s.get(i, j)) continue;
      ++members;
      const auto z = s.center_of(i, j);
      const auto u = static_cast<std::size_t>(std::floor((z.real() - x0) / eps));
      const auto v = static_cast<std::size_t>(std::floor((z.imag() - y0) / eps));
      occ[std::min(v, cy - 1) * cx + std::min(u, cx - 1)] = 1;
    }
  }
  BoxCount b;
  b.empty = members == 0;
  for (auto o : occ) b.count += o;
  return b;
}

BoxCount box_count(const PointSet& s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("box_count: eps must be positive");
  std::vector<std::vector<long long>> cells;
  cells.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<long long> key(s.dim);
    for (std::size_t d = 0; d < s.dim; ++d) key[d] = static_cast<long long>(std::floor(s[i][d] / eps));
    cells.push_back(std::move(key));
  }
  std::sort(cells.begin(), cells.end());
  BoxCount b;
  b.empty = cells.empty();
  b.count = static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
  return b;
}

namespace {

template <class S>
CoverStats gamma_impl(const S& s, double h, double eps) {
  const BoxCount b = box_count(s, eps);
  return {eps, b.count, h, std::pow(eps, h) * static_cast<double>(b.count), b.empty};
}

void check_schedule(std::vector<double>& eps) {
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  if (eps.size() < 4 || !(eps.back() > 0.0)) throw std::invalid_argument("boxdim_estimate: need at least 4 positive scales");
  if (std::log10(eps.front() / eps.back()) < 1.5 - 1e-9)
    throw std::invalid_argument("boxdim_estimate: scales must span at least 1.5 decades");
}

template <class S>
DimEstimate estimate_impl(const S& s, std::vector<double> eps) {
  check_schedule(eps);
  std::vector<std::size_t> counts(eps.size());
  parallel_for(0, eps.size(), [&](std::size_t i) { counts[i] = box_count(s, eps[i]).count; });
  return boxdim_from_counts(eps, counts);
}

}  // namespace

CoverStats gamma_content(const GridSet& s, double h, double eps) { return gamma_impl(s, h, eps); }
CoverStats gamma_content(const PointSet& s, double h, double eps) { return gamma_impl(s, h, eps); }

DimEstimate boxdim_estimate(const GridSet& s, std::vector<double> eps_list) { return estimate_impl(s, std::move(eps_list)); }
DimEstimate boxdim_estimate(const PointSet& s, std::vector<double> eps_list) {
  return estimate_impl(s, std::move(eps_list));
}

DimEstimate boxdim_from_counts(const std::vector<double>& eps, const std::vector<std::size_t>& counts) {
  if (eps.size() != counts.size() || eps.size() < 4) throw std::invalid_argument("boxdim_from_counts: need 4+ matched scales");
  DimEstimate best;
  best.eps = eps;
  best.counts = counts;
  bool have = false;
  const std::size_t n = eps.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 3; b < n; ++b) {
      if (std::log10(eps[a] / eps[b]) < 1.0 - 1e-9) continue;
      double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
      bool zero = false;
      const double m = static_cast<double>(b - a + 1);
      for (std::size_t i = a; i <= b; ++i) {
        if (counts[i] == 0) zero = true;
        const double x = -std::log(eps[i]);
        const double y = std::log(static_cast<double>(std::max<std::size_t>(counts[i], 1)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
      }
      if (zero) continue;
      const double vx = sxx - sx * sx / m, vy = syy - sy * sy / m, cxy = sxy - sx * sy / m;
      DimEstimate e;
      e.degenerate = vy <= 1e-15 * std::max(1.0, syy);
      e.slope = e.degenerate ? 0.0 : cxy / vx;
      e.intercept = (sy - e.slope * sx) / m;
      e.r2 = e.degenerate ? 0.0 : std::clamp(cxy * cxy / (vx * vy), 0.0, 1.0);
      e.eps_hi = eps[a];
      e.eps_lo = eps[b];
      e.window = b - a + 1;
      const bool better = !have || e.r2 > best.r2 + 1e-3 ||
                          (std::fabs(e.r2 - best.r2) <= 1e-3 && e.window > best.window);
      if (better) {
        e.eps = eps;
        e.counts = counts;
        best = std::move(e);
        have = true;
      }
    }
  }
  if (!have) {
    best.degenerate = true;
    best.window = 0;
  }
  return best;
}

std::vector<double> geometric_eps(double hi, double lo, std::size_t count) {
  if (!(hi > lo && lo > 0.0) || count < 2) throw std::invalid_argument("geometric_eps: need hi > lo > 0 and count >= 2");
  std::vector<double> out(count);
  const double q = std::pow(lo / hi, 1.0 / static_cast<double>(count - 1));
  for (std::size_t i = 0; i < count; ++i) out[i] = hi * std::pow(q, static_cast<double>(i));
  out.back() = lo;
  return out;
}

std::vector<double> default_eps_schedule(const GridSet& s) {
  const double side = std::min(s.rect().width, s.rect().height);
  return geometric_eps(0.25 * side, 2.0 * s.pixel(), 12);
}

double directed_distance(const PointSet& A, const PointSet& B) {
  if (A.size() == 0 || B.size() == 0) throw std::invalid_argument("directed_distance: empty set");
  if (A.dim != B.dim) throw std::invalid_argument("directed_distance: dimension mismatch");
  std::vector<double> nearest(A.size());
  parallel_for(0, A.size(), [&](std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < B.size(); ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < A.dim; ++d) {
        const double t = A[i][d] - B[j][d];
        s += t * t;
      }
      best = std::min(best, s);
    }
    nearest[i] = best;
  });
  return std::sqrt(*std::max_element(nearest.begin(), nearest.end()));
}

double directed_distance(const GridSet& A, const GridSet& B) {
  A.require_same_geometry(B);
  if (A.empty() || B.empty()) throw std::invalid_argument("directed_distance: empty set");
  const auto d = distance_to_set(B);
  double m = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (A.at(i)) m = std::max(m, d[i]);
  return m;
}

double hausdorff_distance(const PointSet& A, const PointSet& B) {
  return std::max(directed_distance(A, B), directed_distance(B, A));
}

double hausdorff_distance(const GridSet& A, const GridSet& B) {
  return std::max(directed_distance(A, B), directed_distance(B, A));
}

std::string boxdim_csv(const DimEstimate& d) {
  std::ostringstream os;
  os << "eps,N,log_inv_eps,log_N\n";
  char buf[200];
  for (std::size_t i = 0; i < d.eps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", d.eps[i], d.counts[i], -std::log(d.eps[i]),
                  d.counts[i] ? std::log(static_cast<double>(d.counts[i])) : -std::numeric_limits<double>::infinity());
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "# slope=%.17g intercept=%.17g r2=%.17g eps_hi=%.17g eps_lo=%.17g degenerate=%d\n",
                d.slope, d.intercept, d.r2, d.eps_hi, d.eps_lo, d.degenerate ? 1 : 0);
  os << buf;
  return os.str();
}

}  // namespace shortck

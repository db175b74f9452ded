#include "shortck/gridset.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "shortck/parallel.hpp"

namespace shortck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower envelope of parabolas (Felzenszwalb-Huttenlocher), sample spacing h.
// f holds squared distances (inf for "no site"); d receives the transform.
void edt_1d(const double* f, double* d, std::size_t n, double h, std::vector<std::size_t>& v,
            std::vector<double>& z) {
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  std::size_t k = 0;
  bool any = false;
  for (std::size_t q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (!any) {
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      any = true;
      continue;
    }
    const double xq = static_cast<double>(q) * h;
    double s = 0.0;
    while (true) {
      const double xv = static_cast<double>(v[k]) * h;
      s = ((f[q] + xq * xq) - (f[v[k]] + xv * xv)) / (2.0 * (xq - xv));
      if (s <= z[k] && k > 0) {
        --k;
        continue;
      }
      break;
    }
    if (s <= z[k]) {
      // k == 0 and the new parabola dominates everywhere.
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (!any) {
    for (std::size_t q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  k = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const double x = static_cast<double>(q) * h;
    while (z[k + 1] < x) ++k;
    const double dx = x - static_cast<double>(v[k]) * h;
    d[q] = dx * dx + f[v[k]];
  }
}

}  // namespace

GridSet::GridSet(Rect rect, std::size_t nx, std::size_t ny) : rect_(rect), nx_(nx), ny_(ny), bits_(nx * ny, 0) {
  if (nx == 0 || ny == 0) throw std::invalid_argument("GridSet: resolution must be positive");
  if (!(rect.width > 0.0) || !(rect.height > 0.0)) throw std::invalid_argument("GridSet: rectangle must be non-degenerate");
}

std::complex<double> GridSet::center_of(std::size_t i, std::size_t j) const {
  const double x = rect_.center.real() - 0.5 * rect_.width + (static_cast<double>(i) + 0.5) * dx();
  const double y = rect_.center.imag() - 0.5 * rect_.height + (static_cast<double>(j) + 0.5) * dy();
  return {x, y};
}

std::optional<PixelIndex> GridSet::pixel_of(std::complex<double> z) const {
  const double u = (z.real() - (rect_.center.real() - 0.5 * rect_.width)) / dx();
  const double v = (z.imag() - (rect_.center.imag() - 0.5 * rect_.height)) / dy();
  if (!(u >= 0.0) || !(v >= 0.0)) return std::nullopt;
  if (u >= static_cast<double>(nx_) || v >= static_cast<double>(ny_)) return std::nullopt;
  return PixelIndex{static_cast<std::size_t>(u), static_cast<std::size_t>(v)};
}

bool GridSet::contains(std::complex<double> z) const {
  const auto p = pixel_of(z);
  return p && get(p->i, p->j);
}

std::size_t GridSet::count() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

void GridSet::require_same_geometry(const GridSet& o) const {
  if (!same_geometry(o)) throw std::invalid_argument("GridSet: operands have different geometry");
}

GridSet GridSet::complement() const {
  GridSet r = *this;
  for (auto& b : r.bits_) b = b ? 0 : 1;
  return r;
}

GridSet operator|(const GridSet& a, const GridSet& b) {
  a.require_same_geometry(b);
  GridSet r = a;
  for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] |= b.bits_[i];
  return r;
}

GridSet operator&(const GridSet& a, const GridSet& b) {
  a.require_same_geometry(b);
  GridSet r = a;
  for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] &= b.bits_[i];
  return r;
}

GridSet operator-(const GridSet& a, const GridSet& b) {
  a.require_same_geometry(b);
  GridSet r = a;
  for (std::size_t i = 0; i < r.bits_.size(); ++i) r.bits_[i] = (a.bits_[i] && !b.bits_[i]) ? 1 : 0;
  return r;
}

bool GridSet::subset_of(const GridSet& o) const {
  require_same_geometry(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_[i]) return false;
  return true;
}

std::vector<std::complex<double>> GridSet::points() const {
  std::vector<std::complex<double>> out;
  for (std::size_t j = 0; j < ny_; ++j)
    for (std::size_t i = 0; i < nx_; ++i)
      if (get(i, j)) out.push_back(center_of(i, j));
  return out;
}

std::vector<std::complex<double>> GridSet::edge_points() const {
  std::vector<std::complex<double>> out;
  for (std::size_t j = 0; j < ny_; ++j) {
    for (std::size_t i = 0; i < nx_; ++i) {
      if (!get(i, j)) continue;
      const bool edge = i == 0 || j == 0 || i + 1 == nx_ || j + 1 == ny_ || !get(i - 1, j) || !get(i + 1, j) ||
                        !get(i, j - 1) || !get(i, j + 1);
      if (edge) out.push_back(center_of(i, j));
    }
  }
  return out;
}

std::vector<double> distance_to_set(const GridSet& g) {
  const std::size_t nx = g.nx(), ny = g.ny();
  std::vector<double> f(nx * ny);
  for (std::size_t idx = 0; idx < f.size(); ++idx) f[idx] = g.at(idx) ? 0.0 : kInf;

  // Columns first (spacing dy), then rows (spacing dx).
  parallel_for(0, nx, [&](std::size_t i) {
    std::vector<double> col(ny), out(ny), z;
    std::vector<std::size_t> v;
    for (std::size_t j = 0; j < ny; ++j) col[j] = f[j * nx + i];
    edt_1d(col.data(), out.data(), ny, g.dy(), v, z);
    for (std::size_t j = 0; j < ny; ++j) f[j * nx + i] = out[j];
  });
  parallel_for(0, ny, [&](std::size_t j) {
    std::vector<double> out(nx), z;
    std::vector<std::size_t> v;
    edt_1d(&f[j * nx], out.data(), nx, g.dx(), v, z);
    for (std::size_t i = 0; i < nx; ++i) f[j * nx + i] = std::sqrt(out[i]);
  });
  return f;
}

Dilation dilate(const GridSet& g, double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("dilate: delta must be non-negative");
  if (delta < 0.5 * std::min(g.dx(), g.dy())) return {g, delta > 0.0};
  const auto d = distance_to_set(g);
  GridSet out(g.rect(), g.nx(), g.ny());
  // A hair of slack so that lattice points exactly at distance delta count.
  const double lim = delta * (1.0 + 1e-12);
  for (std::size_t idx = 0; idx < d.size(); ++idx) out.set_at(idx, d[idx] <= lim);
  return {std::move(out), false};
}

Components label_components(const GridSet& g) {
  Components c;
  const std::size_t nx = g.nx(), ny = g.ny();
  c.label.assign(nx * ny, -1);
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < c.label.size(); ++start) {
    if (!g.at(start) || c.label[start] >= 0) continue;
    const int id = c.count++;
    bool border = false;
    stack.push_back(start);
    c.label[start] = id;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::size_t i = idx % nx, j = idx / nx;
      if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny) border = true;
      const auto visit = [&](std::size_t n) {
        if (g.at(n) && c.label[n] < 0) {
          c.label[n] = id;
          stack.push_back(n);
        }
      };
      if (i > 0) visit(idx - 1);
      if (i + 1 < nx) visit(idx + 1);
      if (j > 0) visit(idx - nx);
      if (j + 1 < ny) visit(idx + nx);
    }
    c.touches_border.push_back(border);
  }
  return c;
}

GridSet component_mask(const GridSet& g, const Components& c, int label) {
  GridSet out(g.rect(), g.nx(), g.ny());
  for (std::size_t idx = 0; idx < c.label.size(); ++idx) out.set_at(idx, c.label[idx] == label);
  return out;
}

double diameter(const GridSet& g) {
  // The diameter is attained on the boundary, so only edge pixels are paired.
  const auto pts = g.edge_points();
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::max(best, std::abs(pts[a] - pts[b]));
  return best;
}

}  // namespace shortck

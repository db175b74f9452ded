#include "shortck/basin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shortck/parallel.hpp"
#include "shortck/sampling.hpp"

namespace shortck {

double default_polydisc_radius(const PolySpec& P) {
  const auto ok = [&](double c) { return 2.0 * c * P.abs_bound(c) <= 1.0; };
  if (ok(0.5)) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

double default_escape_radius(const PolySpec& P) {
  const auto c = P.coeffs();
  if (c.empty()) return 10.0;
  const auto lower = [&](double r) {
    double s = std::fabs(c.back()) * std::pow(r, static_cast<double>(c.size() - 1));
    for (std::size_t i = 0; i + 1 < c.size(); ++i) s -= std::fabs(c[i]) * std::pow(r, static_cast<double>(i));
    return r * s;
  };
  double R = 10.0;
  while (lower(R) < 4.0) {
    R *= 2.0;
    if (R > 1e150) throw std::invalid_argument("default_escape_radius: no escape radius found");
  }
  return R;
}

std::size_t first_nesting_index(const CoeffSequence& a, double M, double c, double c_next, std::size_t limit) {
  const double margin = c_next - M * c;
  if (!(margin > 0.0)) return limit;
  const double lm = std::log(margin);
  for (std::size_t n = 0; n < limit; ++n)
    if (a.log_a(n).value < lm) return n;
  return limit;
}

BasinParams default_basin_params(const MapSequence& seq) {
  BasinParams p;
  p.k = seq.dimension();
  const auto& quad = seq.quadratic_factor();
  if (quad && seq.coefficients()) {
    p.c = default_polydisc_radius(*quad);
    p.M = std::max(quad->abs_bound(p.c), 1e-300);
    p.c_next = 0.5 * (1.0 + p.M * p.c);
    p.r_escape = default_escape_radius(*quad);
    p.n0 = first_nesting_index(*seq.coefficients(), p.M, p.c, p.c_next, 64);
    p.escape = EscapeRule::FirstCoordinate;
    return p;
  }
  p.escape = EscapeRule::SupNorm;
  p.n0 = 0;
  p.c = seq.family() == Family::DiagLinear ? 0.5 : 1e-3;
  p.c_next = p.c;
  if (seq.family() == Family::DiagLinear) {
    // A contraction has no escaping orbits.
    const AutoStep s0 = seq.step_at(0);
    const auto* d = std::get_if<step::DiagLinear>(&s0);
    if (d && std::fabs(d->alpha) < 1.0) p.r_escape = std::numeric_limits<double>::max();
  }
  return p;
}

std::string to_string(const OrbitFate& f) {
  switch (f.tag) {
    case FateTag::Attracted: return "attracted@" + std::to_string(f.n);
    case FateTag::Escaped: return "escaped@" + std::to_string(f.n);
    case FateTag::Undecided: return "undecided@" + std::to_string(f.n);
  }
  return "?";
}

namespace {

bool in_polydisc(const CPoint& w, const ExtReal& c) { return !w.has_overflow() && w.sup_norm() <= c; }

bool has_escaped(const CPoint& w, const BasinParams& p, const ExtReal& R) {
  if (w.has_overflow()) return true;
  if (p.escape == EscapeRule::SupNorm) return w.sup_norm() > R;
  const ExtReal m1 = w[0].modulus();
  if (!(m1 > R)) return false;
  for (std::size_t j = 1; j < w.size(); ++j)
    if (w[j].modulus() > m1) return false;
  return true;
}

struct Walk {
  OrbitFate fate;
  std::size_t last = 0;
};

// Shared driver. `visit(n, w, accepted)` sees every iterate; when `follow`
// is set, attracted orbits continue to n_max.
template <class Visit>
Walk walk(const MapSequence& seq, const CPoint& z, const BasinParams& p, bool follow, Visit&& visit) {
  if (z.size() != seq.dimension()) throw std::invalid_argument("classify_point: dimension mismatch");
  const ExtReal c = ExtReal::from_native(p.c);
  const ExtReal R = ExtReal::from_native(p.r_escape);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t entry = kNone;
  bool accepted = false;
  std::size_t accepted_at = 0;
  CPoint w = z;
  for (std::size_t n = 0; n <= p.n_max; ++n) {
    w = shortck::apply(seq.step_at(n), w);
    visit(n, w, accepted);
    if (accepted) continue;
    if (has_escaped(w, p, R)) return {OrbitFate::escaped(n), n};
    if (in_polydisc(w, c)) {
      if (entry == kNone) entry = n;
      if (n >= p.n0) {
        accepted = true;
        accepted_at = entry;
        if (!follow) return {OrbitFate::attracted(entry), n};
      }
    } else {
      entry = kNone;
    }
  }
  if (accepted) return {OrbitFate::attracted(accepted_at), p.n_max};
  return {OrbitFate::undecided(p.n_max), p.n_max};
}

}  // namespace

OrbitFate classify_point(const MapSequence& seq, const CPoint& z, const BasinParams& p) {
  return walk(seq, z, p, false, [](std::size_t, const CPoint&, bool) {}).fate;
}

OrbitTrace trace_orbit(const MapSequence& seq, const CPoint& z, const BasinParams& p) {
  OrbitTrace t;
  const ExtReal c = ExtReal::from_native(p.c);
  const auto w = walk(seq, z, p, true, [&](std::size_t n, const CPoint& x, bool accepted) {
    if (x.has_overflow()) {
      t.log_sup.push_back(std::numeric_limits<double>::infinity());
      return;
    }
    t.log_sup.push_back(x.sup_norm().log_abs().value);
    if (accepted && !(x.sup_norm() <= c)) ++t.reexits;
    const Region r = region_of(x, p.r_escape);
    if (!r.in_vr) {
      if (r.plus()) {
        ++t.plus_entries;
        if (!t.first_plus) t.first_plus = n;
      } else {
        ++t.trichotomy_violations;
      }
    }
  });
  t.fate = w.fate;
  return t;
}

bool Region::minus() const {
  if (in_vr) return false;
  return std::any_of(indices.begin(), indices.end(), [](std::size_t i) { return i >= 2; });
}

Region region_of(const CPoint& z, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("region_of: R must be positive");
  const ExtReal r = ExtReal::from_native(R);
  Region out;
  std::vector<ExtReal> m(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) m[i] = z[i].modulus();
  out.in_vr = std::all_of(m.begin(), m.end(), [&](const ExtReal& x) { return x <= r; });
  if (out.in_vr) return out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const ExtReal bound = std::max(m[i], r, [](const ExtReal& a, const ExtReal& b) { return a < b; });
    if (std::all_of(m.begin(), m.end(), [&](const ExtReal& x) { return x <= bound; })) out.indices.push_back(i + 1);
  }
  return out;
}

CPoint SliceWindow::point_at(std::size_t i, std::size_t j) const {
  const double s = -0.5 * width + (static_cast<double>(i) + 0.5) * width / static_cast<double>(nx);
  const double t = -0.5 * height + (static_cast<double>(j) + 0.5) * height / static_cast<double>(ny);
  return base + ExtComplex::from_native(s) * u + ExtComplex::from_native(t) * v;
}

void SliceWindow::validate() const {
  if (nx == 0 || ny == 0) throw std::invalid_argument("SliceWindow: resolution must be positive");
  if (!(width > 0.0) || !(height > 0.0)) throw std::invalid_argument("SliceWindow: extents must be positive");
  if (u.size() != base.size() || v.size() != base.size())
    throw std::invalid_argument("SliceWindow: direction dimensions differ from base");
  // Real-linear independence of u, v in R^{2k}.
  const auto un = u.to_native(), vn = v.to_native();
  double uu = 0, vv = 0, uv = 0;
  for (std::size_t i = 0; i < un.size(); ++i) {
    uu += std::norm(un[i]);
    vv += std::norm(vn[i]);
    uv += (std::conj(un[i]) * vn[i]).real();
  }
  if (!(uu * vv - uv * uv > 1e-24 * uu * vv) || uu == 0.0)
    throw std::invalid_argument("SliceWindow: directions are linearly dependent");
}

SliceWindow z1_plane(std::size_t k, std::complex<double> center, double width, double height, std::size_t nx,
                     std::size_t ny, std::complex<double> z2) {
  SliceWindow w;
  w.base = CPoint(k);
  w.base[0] = ExtComplex::from_native(center);
  if (k >= 2) w.base[1] = ExtComplex::from_native(z2);
  w.u = CPoint(k);
  w.u[0] = ExtComplex::from_native(1.0, 0.0);
  w.v = CPoint(k);
  w.v[0] = ExtComplex::from_native(0.0, 1.0);
  w.width = width;
  w.height = height;
  w.nx = nx;
  w.ny = ny;
  return w;
}

std::size_t FateGrid::count(FateTag t) const {
  return static_cast<std::size_t>(std::count_if(fates.begin(), fates.end(), [t](const OrbitFate& f) { return f.tag == t; }));
}

FateGrid render_slice(const MapSequence& seq, const SliceWindow& window, const BasinParams& p) {
  window.validate();
  FateGrid g{window, std::vector<OrbitFate>(window.nx * window.ny)};
  parallel_for(0, window.ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < window.nx; ++i) g.fates[j * window.nx + i] = classify_point(seq, window.point_at(i, j), p);
  });
  return g;
}

GridSet boundary_pixels(const FateGrid& g) {
  const std::size_t nx = g.window.nx, ny = g.window.ny;
  GridSet out(g.window.param_rect(), nx, ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (g.at(i, j).tag == FateTag::Escaped) continue;
      bool att = false, esc = false;
      for (std::size_t v = j == 0 ? 0 : j - 1; v <= std::min(ny - 1, j + 1); ++v) {
        for (std::size_t u = i == 0 ? 0 : i - 1; u <= std::min(nx - 1, i + 1); ++u) {
          const FateTag t = g.at(u, v).tag;
          att = att || t == FateTag::Attracted;
          esc = esc || t == FateTag::Escaped;
        }
      }
      if (att && esc) out.set(i, j);
    }
  }
  return out;
}

BoundaryWitness boundary_witness(const MapSequence& seq, const CPoint& z, double eps, std::size_t budget,
                                 const BasinParams& p, std::uint64_t seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("boundary_witness: eps must be positive");
  BoundaryWitness out;
  std::vector<CPoint> cands;
  cands.push_back(z);
  for (const double f : {0.25, 0.5, 0.75, 0.999}) {
    for (const auto& d : sphere_samples(z.size(), f * eps, 0, seed)) cands.push_back(z + d);
  }
  if (cands.size() < budget) {
    for (auto& q : ball_samples(z, eps, budget - cands.size(), mix_seed(seed, 0x5eedULL))) cands.push_back(q);
  }
  if (cands.size() > budget) cands.resize(budget);

  for (const CPoint& q : cands) {
    ++out.tried;
    const OrbitFate f = classify_point(seq, q, p);
    if (f.tag == FateTag::Attracted && !out.attracted) out.attracted = q;
    if (f.tag == FateTag::Escaped && !out.escaped) out.escaped = q;
    if (out.attracted && out.escaped) break;
  }
  if (out.attracted && out.escaped) {
    // Re-verify both fates from scratch.
    const bool a = classify_point(seq, *out.attracted, p).tag == FateTag::Attracted;
    const bool e = classify_point(seq, *out.escaped, p).tag == FateTag::Escaped;
    out.found = a && e;
    if (!out.found) out.diagnostic = "re-verification disagreed";
  } else {
    out.diagnostic = !out.escaped ? "no escaping point within budget" : "no attracted point within budget";
  }
  return out;
}

}  // namespace shortck

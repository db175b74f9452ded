#include "shortck/julia1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "shortck/parallel.hpp"

namespace shortck {

namespace {

using cd = std::complex<double>;

std::vector<cd> trimmed(std::vector<cd> c) {
  while (!c.empty() && c.back() == cd{}) c.pop_back();
  return c;
}

cd horner(const std::vector<cd>& c, cd z) {
  cd r{};
  for (std::size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

std::vector<cd> derivative_coeffs(const std::vector<cd>& c) {
  std::vector<cd> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

// Coefficients of p(z + e) in powers of e (repeated synthetic division).
std::vector<cd> taylor_shift(std::vector<cd> c, cd z) {
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) c[i - 1] += z * c[i];
  return c;
}

std::vector<cd> durand_kerner(const std::vector<cd>& coeffs) {
  const std::vector<cd> c = trimmed(coeffs);
  const std::size_t deg = c.size() - 1;
  if (deg == 0) return {};
  std::vector<cd> monic(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) monic[i] = c[i] / c.back();
  if (deg == 1) return {-monic[0]};
  double bound = 0.0;
  for (std::size_t i = 0; i < deg; ++i) bound = std::max(bound, std::abs(monic[i]));
  const double rad = 1.0 + bound;
  std::vector<cd> z(deg);
  for (std::size_t i = 0; i < deg; ++i) z[i] = std::polar(rad * 0.9, 0.4 + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(deg));
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      cd den{1.0, 0.0};
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (den == cd{}) den = cd{1e-300, 0.0};
      const cd step = horner(monic, z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Snap roots that are zero to rounding.
  for (auto& r : z)
    if (std::abs(r) < 1e-12) r = cd{};
  return z;
}

bool origin_attracting(const Poly1& p) {
  const auto& c = p.coeffs();
  return std::abs(c[0]) == 0.0 && (c.size() < 2 || std::abs(c[1]) < 1.0);
}

// Attracting cycle detection at the end of a bounded orbit.
std::optional<AttractingCycle> detect_cycle(const Poly1& p, cd w) {
  for (std::size_t q = 1; q <= 64; ++q) {
    cd x = w;
    for (std::size_t i = 0; i < q; ++i) x = p(x);
    if (std::abs(x - w) >= 1e-9 * std::max(1.0, std::abs(w))) continue;
    AttractingCycle cyc;
    cd y = w;
    double mult = 1.0;
    for (std::size_t i = 0; i < q; ++i) {
      cyc.points.push_back(y);
      mult *= std::abs(p.derivative(y));
      y = p(y);
    }
    cyc.multiplier = mult;
    if (!(mult < 1.0)) return std::nullopt;
    cyc.through_origin = std::any_of(cyc.points.begin(), cyc.points.end(), [](cd v) { return std::abs(v) < 1e-9; });
    // Snap a numerically-zero point to the exact origin.
    for (auto& v : cyc.points)
      if (std::abs(v) < 1e-9) v = cd{};
    const auto fq = [&](cd z) {
      for (std::size_t i = 0; i < q; ++i) z = p(z);
      return z;
    };
    for (double rho = 0.5; rho > 1e-10; rho *= 0.5) {
      bool ok = true;
      for (const cd pt : cyc.points) {
        for (int s = 0; s < 32 && ok; ++s) {
          for (const double f : {1.0, 0.5}) {
            const cd z = pt + std::polar(f * rho, 2.0 * std::numbers::pi * s / 32.0);
            if (std::abs(fq(z) - pt) > 0.5 * f * rho) ok = false;
          }
        }
      }
      if (ok) {
        cyc.capture_radius = rho;
        break;
      }
    }
    if (cyc.capture_radius == 0.0) return std::nullopt;
    return cyc;
  }
  return std::nullopt;
}

struct Capture {
  cd point;
  double radius;
};

std::vector<Capture> capture_discs(const Poly1& p, const HyperbolicityReport& rep) {
  std::vector<Capture> out;
  if (const double r = p.attracting_radius(); r > 0.0) out.push_back({cd{}, r});
  for (const auto& cyc : rep.cycles)
    for (const cd pt : cyc.points) out.push_back({pt, cyc.capture_radius});
  return out;
}

enum class PixelFate : std::uint8_t { Captured, Escaped, Undecided };

PixelFate pixel_fate(const Poly1& p, cd z, std::size_t N, double r_esc, const std::vector<Capture>& caps) {
  for (std::size_t n = 0; n <= N; ++n) {
    if (std::abs(z) > r_esc || !std::isfinite(z.real()) || !std::isfinite(z.imag())) return PixelFate::Escaped;
    for (const auto& c : caps)
      if (std::abs(z - c.point) < c.radius) return PixelFate::Captured;
    z = p(z);
  }
  return PixelFate::Undecided;
}

}  // namespace

Poly1::Poly1(std::vector<std::complex<double>> coeffs) : c_(trimmed(std::move(coeffs))) {
  if (c_.size() < 3) throw std::invalid_argument("Poly1: degree must be at least 2");
  for (const auto& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("Poly1: non-finite coefficient");
}

Poly1::Poly1(std::initializer_list<double> coeffs)
    : Poly1(std::vector<std::complex<double>>(coeffs.begin(), coeffs.end())) {}

std::complex<double> Poly1::operator()(std::complex<double> z) const { return horner(c_, z); }

std::complex<double> Poly1::derivative(std::complex<double> z) const {
  cd r{};
  for (std::size_t i = c_.size(); i-- > 1;) r = r * z + static_cast<double>(i) * c_[i];
  return r;
}

double Poly1::abs_bound(double r) const {
  double s = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) s = s * r + std::abs(c_[i]);
  return s;
}

std::vector<std::complex<double>> Poly1::critical_points() const { return durand_kerner(derivative_coeffs(c_)); }

double Poly1::escape_radius() const {
  const auto lower = [&](double r) {
    double s = std::abs(c_.back()) * std::pow(r, static_cast<double>(degree()));
    for (std::size_t i = 0; i + 1 < c_.size(); ++i) s -= std::abs(c_[i]) * std::pow(r, static_cast<double>(i));
    return s - 2.0 * r - 1.0;
  };
  double hi = 1.0;
  while (lower(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e150) throw std::invalid_argument("Poly1::escape_radius: no radius found");
  }
  if (hi == 1.0) return 1.0;
  double lo = 0.5 * hi;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (lower(mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double Poly1::attracting_radius() const {
  if (!origin_attracting(*this)) return 0.0;
  const auto ok = [&](double r) { return abs_bound(r) <= 0.5 * r; };
  if (ok(1.0)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::string Poly1::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ' ';
    os << c_[i].real();
    if (c_[i].imag() != 0.0) os << (c_[i].imag() < 0 ? "" : "+") << c_[i].imag() << 'i';
  }
  return os.str();
}

Fate1Result fate1d(const Poly1& p, std::complex<double> z, std::size_t N, double r_esc, double r_att) {
  for (std::size_t n = 0; n <= N; ++n) {
    if (std::abs(z) > r_esc || !std::isfinite(std::abs(z))) return {Fate1::Escaped, n};
    if (std::abs(z) < r_att) return {Fate1::Attracted0, n};
    z = p(z);
  }
  return {Fate1::Undecided, N};
}

const char* verdict_name(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Pass: return "PASS";
    case ProbeVerdict::PassWithNote: return "PASS-with-note";
    case ProbeVerdict::Fail: return "FAIL";
    case ProbeVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

HyperbolicityReport hyperbolicity_probe(const Poly1& p, std::size_t N, double r_esc) {
  HyperbolicityReport rep;
  const double r_att = p.attracting_radius();
  bool undecided = false, foreign = false, via_cycle = false;
  for (const cd c : p.critical_points()) {
    CriticalOrbit co;
    co.point = c;
    const Fate1Result f = fate1d(p, c, N, r_esc, r_att);
    co.steps = f.n;
    if (f.fate == Fate1::Attracted0) {
      co.fate = "origin";
    } else if (f.fate == Fate1::Escaped) {
      co.fate = "escaped";
    } else {
      cd w = c;
      for (std::size_t i = 0; i < N; ++i) w = p(w);
      const auto cyc = detect_cycle(p, w);
      if (!cyc) {
        co.fate = "undecided";
        undecided = true;
      } else {
        // Reuse an already-recorded cycle when the points coincide.
        int idx = -1;
        for (std::size_t k = 0; k < rep.cycles.size(); ++k) {
          for (const cd pt : rep.cycles[k].points)
            if (std::abs(pt - cyc->points.front()) < 1e-7) idx = static_cast<int>(k);
        }
        if (idx < 0) {
          rep.cycles.push_back(*cyc);
          idx = static_cast<int>(rep.cycles.size() - 1);
        }
        co.cycle = idx;
        co.fate = "cycle(" + std::to_string(cyc->points.size()) + ")";
        if (cyc->through_origin) {
          via_cycle = true;
        } else {
          foreign = true;
        }
      }
    }
    rep.critical.push_back(co);
  }
  const bool origin_fixed = r_att > 0.0;
  if (foreign) {
    rep.verdict = ProbeVerdict::Fail;
    rep.note = "critical orbit attracted to a cycle away from the origin";
  } else if (via_cycle) {
    rep.verdict = ProbeVerdict::PassWithNote;
    rep.note = "attracted to cycle through 0, not fixed point";
  } else if (undecided) {
    rep.verdict = ProbeVerdict::Inconclusive;
    rep.note = "critical orbit undecided";
  } else if (!origin_fixed) {
    rep.verdict = ProbeVerdict::Fail;
    rep.note = "origin is not an attracting fixed point";
  } else {
    rep.verdict = ProbeVerdict::Pass;
  }
  return rep;
}

GridSet julia_grid(const Poly1& p, const Rect& rect, std::size_t nx, std::size_t ny, std::size_t N) {
  const double r_esc = p.escape_radius();
  const HyperbolicityReport rep = hyperbolicity_probe(p, std::max<std::size_t>(N, 2000), r_esc);
  const auto caps = capture_discs(p, rep);
  GridSet out(rect, nx, ny);
  std::vector<PixelFate> fate(nx * ny);
  parallel_for(0, ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < nx; ++i) fate[j * nx + i] = pixel_fate(p, out.center_of(i, j), N, r_esc, caps);
  });
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const PixelFate f = fate[j * nx + i];
      bool mark = f == PixelFate::Undecided;
      if (!mark) {
        for (std::size_t v = j == 0 ? 0 : j - 1; v <= std::min(ny - 1, j + 1) && !mark; ++v)
          for (std::size_t u = i == 0 ? 0 : i - 1; u <= std::min(nx - 1, i + 1); ++u)
            if (fate[v * nx + u] != f) mark = true;
      }
      out.set(i, j, mark);
    }
  }
  return out;
}

namespace {

// sup |p(z + e) - p(z)| over |e| <= h, bounded by the Taylor series.
// Green function of the basin of infinity, 0 when the orbit stays bounded
// for N iterates.
double green(const Poly1& p, cd z, std::size_t N) {
  const double d = static_cast<double>(p.degree());
  const double lead = std::log(std::abs(p.coeffs().back())) / (d - 1.0);
  double scale = 1.0;
  for (std::size_t k = 0; k <= N; ++k) {
    const double m = std::abs(z);
    if (m > 1e12) return std::max(0.0, scale * (std::log(m) + lead));
    z = p(z);
    scale /= d;
  }
  return 0.0;
}

double local_spread(const Poly1& p, cd z, double h) {
  const auto t = taylor_shift(p.coeffs(), z);
  double s = 0.0, hk = h;
  for (std::size_t k = 1; k < t.size(); ++k, hk *= h) s += std::abs(t[k]) * hk;
  return s;
}

}  // namespace

GridSet image(const Poly1& p, const GridSet& s) {
  const double half_diag = 0.5 * std::hypot(s.dx(), s.dy());
  const double pix = std::min(s.dx(), s.dy());
  return rasterize_image(
      s, [&](cd z) { return p(z); },
      [&](cd z) { return std::ceil(local_spread(p, z, half_diag) / pix); });
}

Rect default_julia_rect(const Poly1& p) {
  const double h = 1.05 * p.escape_radius();
  return {{0.0, 0.0}, 2.0 * h, 2.0 * h};
}

double default_delta0(const GridSet& julia) {
  double near = std::numeric_limits<double>::infinity();
  for (const auto& z : julia.points()) near = std::min(near, std::abs(z));
  return std::min(0.05 * diameter(julia), 0.25 * near);
}

NestedSequence nested_sequence(const Poly1& p, double delta0, std::size_t n_max, const Rect& rect, std::size_t nx,
                               std::size_t ny, std::size_t N) {
  if (!(delta0 > 0.0)) throw std::invalid_argument("nested_sequence: delta0 must be positive");
  NestedSequence ns;
  ns.delta0 = delta0;
  ns.r_esc = p.escape_radius();
  const double x0 = rect.center.real() - 0.5 * rect.width, x1 = rect.center.real() + 0.5 * rect.width;
  const double y0 = rect.center.imag() - 0.5 * rect.height, y1 = rect.center.imag() + 0.5 * rect.height;
  if (x0 > -ns.r_esc || x1 < ns.r_esc || y0 > -ns.r_esc || y1 < ns.r_esc)
    throw std::invalid_argument("nested_sequence: rectangle must contain D(0; escape radius)");

  ns.julia = julia_grid(p, rect, nx, ny, N);
  ns.julia_nbhd = dilate(ns.julia, delta0).set;

  // p^{-1}(S): a pixel belongs when some point of it can land in S, judged by
  // the distance of p(centre) to S.
  const auto preimage = [&](const GridSet& target) {
    GridSet out(rect, nx, ny);
    const auto dist = distance_to_set(target);
    const double half_diag = 0.5 * std::hypot(out.dx(), out.dy());
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const cd z = out.center_of(i, j);
        const auto t = out.pixel_of(p(z));
        if (!t) continue;
        const double d = dist[t->j * nx + t->i] - 2.0 * half_diag;
        if (d <= local_spread(p, z, half_diag)) out.set(i, j);
      }
    }
    return out;
  };
  const GridSet pre = preimage(ns.julia_nbhd);
  const GridSet free = pre.complement();
  ns.pre = pre;
  const Components comps = label_components(free);
  const auto o = free.pixel_of({0.0, 0.0});
  if (!o || comps.label[o->j * nx + o->i] < 0)
    throw std::invalid_argument("nested_sequence: the origin lies in p^{-1}(J_p(delta0))");
  const int c0 = comps.label[o->j * nx + o->i];
  if (comps.touches_border[static_cast<std::size_t>(c0)])
    throw std::invalid_argument("nested_sequence: component of the origin is not compact at this resolution");

  NestedStep s0;
  s0.C = component_mask(free, comps, c0);
  // The unbounded side is a Green level set {G > g0}. When a critical point
  // escapes, J is disconnected and the non-compact component of
  // C \ p^{-1}(J_p(delta0)) holds preimages of the bounded basin whose orbits
  // fall to 0; g0 above every critical level keeps {G <= g0} one disc, and
  // G(p(z)) = d G(z) makes {G > g0} forward invariant with a margin.
  {
    std::vector<double> G(nx * ny);
    parallel_for(0, ny, [&](std::size_t j) {
      for (std::size_t i = 0; i < nx; ++i) G[j * nx + i] = green(p, pre.center_of(i, j), N);
    });
    GridSet bounded(rect, nx, ny);
    for (std::size_t idx = 0; idx < G.size(); ++idx)
      if (G[idx] == 0.0 || ns.julia.at(idx)) bounded.set_at(idx);
    const GridSet pre_filled = preimage(dilate(bounded, delta0).set);
    double g0 = 0.0;
    for (std::size_t idx = 0; idx < G.size(); ++idx)
      if (pre_filled.at(idx)) g0 = std::max(g0, G[idx]);
    for (const cd c : p.critical_points()) g0 = std::max(g0, 1.25 * green(p, c, N));
    ns.green_level = g0;
    GridSet out(rect, nx, ny);
    for (std::size_t idx = 0; idx < G.size(); ++idx)
      if (G[idx] > g0 && !pre_filled.at(idx)) out.set_at(idx);
    const Components dc = label_components(out);
    s0.D = GridSet(rect, nx, ny);
    for (std::size_t idx = 0; idx < dc.label.size(); ++idx) {
      const int l = dc.label[idx];
      if (l >= 0 && dc.touches_border[static_cast<std::size_t>(l)]) s0.D.set_at(idx);
    }
  }
  s0.diam = diameter(s0.C);
  ns.steps.push_back(std::move(s0));

  const double pix = std::max(ns.steps[0].C.dx(), ns.steps[0].C.dy());
  constexpr double kShave = 1.0 - 1e-9;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const NestedStep& prev = ns.steps.back();
    const auto margin = [&](const GridSet& img, const GridSet& host) {
      const auto d = distance_to_set(host.complement());
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t idx = 0; idx < d.size(); ++idx)
        if (img.at(idx)) m = std::min(m, d[idx]);
      return m;
    };
    const GridSet imgC = image(p, prev.C);
    const GridSet imgD = image(p, prev.D);
    const double mC = margin(imgC, prev.C);
    const double mD = margin(imgD, prev.D);
    NestedStep st;
    st.n = n;
    st.delta = 0.5 * mC * kShave;
    st.eta = std::min(1.0, 0.5 * mD * kShave);
    if (!(st.delta >= pix) || !(st.eta >= pix)) {
      ns.truncated = true;
      std::ostringstream os;
      os << "margin below pixel scale at n=" << n << " (delta=" << st.delta << ", eta=" << st.eta
         << ", pixel=" << pix << ")";
      ns.diagnostic = os.str();
      break;
    }
    st.C = dilate(imgC, st.delta).set;
    st.D = dilate(imgD, st.eta).set;
    st.cprime = std::min(st.delta, st.eta);
    st.diam = diameter(st.C);
    ns.steps.push_back(std::move(st));
  }
  return ns;
}

StreamOutcome perturbed_stream(const Poly1& p, const NestedSequence& ns, std::complex<double> z0, double frac,
                               std::size_t tail, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r_att = p.attracting_radius();
  cd z = z0;
  const std::size_t L = ns.steps.size();
  for (std::size_t n = 1; n < L + tail; ++n) {
    cd w{};
    if (n < L) {
      const double rad = frac * ns.steps[n].cprime * std::sqrt(uni(rng));
      w = std::polar(rad, 2.0 * std::numbers::pi * uni(rng));
    }
    z = p(z) + w;
    if (!std::isfinite(std::abs(z)) || std::abs(z) > ns.r_esc) {
      // Past the escape radius |p(z) + w| >= 2|z| + 1 - |w| > |z| + 1 whenever |w| < 1.
      return StreamOutcome::Escaped;
    }
    if (n >= L && r_att > 0.0 && std::abs(z) < r_att) return StreamOutcome::ToZero;
  }
  if (r_att > 0.0 && std::abs(z) < r_att) return StreamOutcome::ToZero;
  return StreamOutcome::Mixed;
}

}  // namespace shortck

#include "shortck/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <limits>
#include <stdexcept>

#include "shortck/sampling.hpp"

namespace shortck {

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

std::string point_text(const CPoint& z) {
  std::string s;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto c = z[i].to_native();
    if (i) s += ';';
    s += format_double(c.real()) + ',' + format_double(c.imag());
  }
  return s;
}

const char* rule_name(EscapeRule r) { return r == EscapeRule::SupNorm ? "sup_norm" : "first_coordinate"; }

}  // namespace

CoeffSequence SequenceSpec::coeffs() const {
  if (!log_a.empty()) return CoeffSequence::explicit_logs(log_a);
  return CoeffSequence::generator(K, g);
}

MapSequence SequenceSpec::build() const {
  switch (family) {
    case Family::ShiftLike:
      if (k < 2 || k > kMaxDim) throw std::invalid_argument("sequence: k must lie in [2, 8]");
      return MapSequence::shift_like(coeffs(), PolySpec(P), k);
    case Family::HenonLike:
      if (k != 2) throw std::invalid_argument("sequence: henon_like requires k = 2");
      return MapSequence::henon_like(coeffs(), PolySpec(P));
    case Family::RosayRudin:
      if (k != 2) throw std::invalid_argument("sequence: rosay_rudin requires k = 2");
      return MapSequence::constant(step::RosayRudin{center_index});
    case Family::DiagLinear:
      if (k < 1 || k > kMaxDim) throw std::invalid_argument("sequence: k must lie in [1, 8]");
      return MapSequence::constant(step::DiagLinear{alpha, k});
    case Family::Custom:
      break;
  }
  throw std::invalid_argument("sequence: custom families cannot be built from a spec");
}

void SequenceSpec::describe(Manifest& m, const std::string& section) const {
  m.set(section, "family", family_name(family));
  m.set(section, "k", k);
  switch (family) {
    case Family::ShiftLike:
    case Family::HenonLike:
      m.set(section, "P", join(P));
      if (log_a.empty()) {
        m.set(section, "K", K);
        m.set(section, "g", g);
      } else {
        m.set(section, "log_a", join(log_a));
      }
      break;
    case Family::DiagLinear: m.set(section, "alpha", alpha); break;
    case Family::RosayRudin: m.set(section, "center_index", std::to_string(center_index)); break;
    case Family::Custom: break;
  }
}

void describe(Manifest& m, const std::string& section, const BasinParams& p) {
  m.set(section, "c", p.c);
  m.set(section, "c_next", p.c_next);
  m.set(section, "M", p.M);
  m.set(section, "r_escape", p.r_escape);
  m.set(section, "n_max", p.n_max);
  m.set(section, "n0", p.n0);
  m.set(section, "escape", rule_name(p.escape));
}

void describe(Manifest& m, const std::string& section, const SliceWindow& w) {
  m.set(section, "base", point_text(w.base));
  m.set(section, "u", point_text(w.u));
  m.set(section, "v", point_text(w.v));
  m.set(section, "width", w.width);
  m.set(section, "height", w.height);
  m.set(section, "nx", w.nx);
  m.set(section, "ny", w.ny);
}

Manifest Scenario::manifest() const {
  Manifest m;
  m.set("scenario", "name", name);
  spec.describe(m, "sequence");
  describe(m, "basin", params);
  for (const auto& [label, w] : slices) describe(m, "slice." + label, w);
  m.set("measure", "eps", join(eps));
  m.set("measure", "witness_budget", witness_budget);
  return m;
}

Scenario build_theorem11_scenario(const PolySpec& P, double K, double g, double c, std::size_t res) {
  P.require_positive();
  const auto coeffs = CoeffSequence::generator(K, g);
  const SequenceReport rep = validate_sequence(coeffs, 40);
  if (!rep.passed()) throw std::invalid_argument("theorem scenario: " + rep.summary());

  SequenceSpec spec;
  spec.family = Family::ShiftLike;
  spec.P.assign(P.coeffs().begin(), P.coeffs().end());
  spec.K = K;
  spec.g = g;
  MapSequence seq = spec.build();
  BasinParams bp = default_basin_params(seq);
  if (c > 0.0) {
    if (!(c < 1.0)) throw std::invalid_argument("theorem scenario: c must lie in (0,1)");
    bp.c = c;
    bp.M = P.abs_bound(c);
    if (!(bp.M * c < 1.0)) throw std::invalid_argument("theorem scenario: need M c < 1");
    bp.c_next = 0.5 * (1.0 + bp.M * c);
    bp.n0 = first_nesting_index(coeffs, bp.M, bp.c, bp.c_next, 64);
  }

  const double w = 3.0;
  SliceWindow rr;
  rr.base = CPoint(2);
  rr.u = CPoint{{1.0, 0.0}, {0.0, 0.0}};
  rr.v = CPoint{{0.0, 0.0}, {1.0, 0.0}};
  rr.width = rr.height = w;
  rr.nx = rr.ny = res;
  Scenario s{"theorem11", spec, std::move(seq), bp, {}, {}, 4096};
  s.slices.push_back({"real_real", rr});
  s.slices.push_back({"z1_plane", z1_plane(2, 0.0, w, w, res, res)});
  s.eps = default_eps_schedule(GridSet(rr.param_rect(), res, res));
  return s;
}

void TubeSpec::validate() const {
  if (!(C > 0.0)) throw std::invalid_argument("tube: C must be positive");
  if (!(delta >= 0.0) || !(R >= 0.0)) throw std::invalid_argument("tube: delta and R must be non-negative");
}

PolySpec quadratic_part(const Poly1& p) {
  const auto& c = p.coeffs();
  if (std::abs(c[0]) != 0.0 || std::abs(c[1]) != 0.0)
    throw std::invalid_argument("quadratic_part: p must vanish to second order at 0");
  std::vector<double> q;
  for (std::size_t i = 2; i < c.size(); ++i) {
    if (c[i].imag() != 0.0) throw std::invalid_argument("quadratic_part: coefficients must be real");
    q.push_back(c[i].real());
  }
  return PolySpec(q);
}

CoupledSequence couple_sequence_to_julia(const NestedSequence& ns, const TubeSpec& tube, std::size_t n_max) {
  tube.validate();
  const double R = tube.R > 0.0 ? tube.R : ns.r_esc;
  const double scale = std::log(std::max(R, tube.C));
  CoupledSequence out;
  double prev = 0.0;  // log a_{-1}^2 = 0
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double cp = ns.cprime(n + 1);
    if (!(cp > 0.0)) {
      out.truncated = true;
      out.diagnostic = "margins end at n=" + std::to_string(n + 1) + "; later coefficients continue by cubing";
      if (!ns.diagnostic.empty()) out.diagnostic += " (" + ns.diagnostic + ")";
      break;
    }
    const double la = std::log(0.5) + std::min(prev, std::log(cp) - scale);
    out.log_a.push_back(la);
    prev = 2.0 * la;
  }
  if (out.log_a.empty()) throw std::runtime_error("couple_sequence_to_julia: no margin c'_1 available");
  out.coeffs = CoeffSequence::explicit_logs(out.log_a);
  return out;
}

Manifest CoupledScenario::manifest() const {
  Manifest m;
  m.set("scenario", "name", "julia_coupling");
  m.set("julia", "p", p.to_string());
  m.set("julia", "delta0", ns.delta0);
  m.set("julia", "r_esc", ns.r_esc);
  m.set("julia", "nested_steps", ns.steps.size());
  m.set("julia", "truncated", ns.truncated);
  const Rect& r = ns.julia.rect();
  m.set("julia", "rect", format_double(r.center.real()) + ',' + format_double(r.center.imag()) + ',' +
                             format_double(r.width) + ',' + format_double(r.height));
  m.set("julia", "nx", ns.julia.nx());
  m.set("julia", "ny", ns.julia.ny());
  m.set("tube", "C", tube.C);
  m.set("tube", "delta", tube.delta);
  m.set("tube", "R", tube.R);
  spec.describe(m, "sequence");
  describe(m, "basin", params);
  return m;
}

CoupledScenario build_coupled_scenario(const Poly1& p, TubeSpec tube, const CouplingOptions& opt) {
  tube.validate();
  const Rect rect = default_julia_rect(p);
  const GridSet J = julia_grid(p, rect, opt.res, opt.res, opt.julia_iters);
  if (tube.delta == 0.0) tube.delta = default_delta0(J);
  NestedSequence ns = nested_sequence(p, tube.delta, opt.nested_max, rect, opt.res, opt.res, opt.julia_iters);
  if (tube.R == 0.0) tube.R = ns.r_esc;
  CoupledSequence coupled = couple_sequence_to_julia(ns, tube, opt.n_max);

  SequenceSpec spec;
  spec.family = Family::ShiftLike;
  spec.k = opt.k;
  const PolySpec Q = quadratic_part(p);
  spec.P.assign(Q.coeffs().begin(), Q.coeffs().end());
  spec.log_a = coupled.log_a;
  MapSequence seq = spec.build();
  BasinParams bp = default_basin_params(seq);
  return {p, tube, std::move(ns), std::move(coupled), std::move(spec), std::move(seq), bp};
}

std::vector<CPoint> tube_samples(const CoupledScenario& cs, TubeSide side, std::size_t count, std::uint64_t seed) {
  const GridSet& host = side == TubeSide::Compact ? cs.ns.steps.front().C : cs.ns.steps.front().D;
  const auto pts = host.points();
  if (pts.empty()) throw std::runtime_error("tube_samples: empty component raster");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const std::size_t k = cs.seq.dimension();
  std::vector<CPoint> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    CPoint z(k);
    z[0] = ExtComplex::from_native(pts[pick(rng)]);
    for (std::size_t j = 1; j < k; ++j) {
      const double rad = cs.tube.C * std::sqrt(uni(rng)) * (1.0 - 1e-12);
      z[j] = ExtComplex::from_native(std::polar(rad, 2.0 * 3.14159265358979323846 * uni(rng)));
    }
    out.push_back(z);
  }
  return out;
}

JPlusReport measure_jplus(const CoupledScenario& cs, const JPlusOptions& opt) {
  const GridSet& U = cs.ns.pre;
  const Rect rect = U.rect();
  const std::size_t k = cs.seq.dimension();
  SliceWindow win = z1_plane(k, rect.center, rect.width, rect.height, U.nx(), U.ny(), opt.z2_frac * cs.tube.C);

  JPlusReport rep;
  rep.grid = render_slice(cs.seq, win, cs.params);
  const GridSet b = boundary_pixels(rep.grid);
  rep.boundary = GridSet(rect, U.nx(), U.ny());
  for (std::size_t idx = 0; idx < b.size(); ++idx) rep.boundary.set_at(idx, b.at(idx));
  rep.boundary_count = rep.boundary.count();
  rep.tube_bound = 2.0 * U.pixel();
  rep.too_few = rep.boundary_count < opt.min_boundary;
  if (rep.boundary_count == 0) {
    rep.distance_to_u = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.distance_to_u = directed_distance(rep.boundary, U);
  rep.within_tube = rep.distance_to_u <= rep.tube_bound;
  if (!rep.too_few) rep.dim = boxdim_estimate(rep.boundary, opt.eps.empty() ? default_eps_schedule(U) : opt.eps);

  std::vector<PixelIndex> members;
  for (std::size_t j = 0; j < rep.boundary.ny(); ++j)
    for (std::size_t i = 0; i < rep.boundary.nx(); ++i)
      if (rep.boundary.get(i, j)) members.push_back({i, j});
  const std::size_t m = std::min(opt.subsample, members.size());
  const double eps = opt.witness_px * U.pixel();
  for (std::size_t s = 0; s < m; ++s) {
    const PixelIndex px = members[s * members.size() / m];
    const BoundaryWitness w = boundary_witness(cs.seq, win.point_at(px.i, px.j), eps, opt.witness_budget, cs.params,
                                               mix_seed(opt.seed, s));
    ++rep.witness_tried;
    if (w.found) ++rep.witness_found;
  }
  rep.witness_rate = rep.witness_tried ? static_cast<double>(rep.witness_found) / static_cast<double>(rep.witness_tried) : 0.0;
  return rep;
}

}  // namespace shortck

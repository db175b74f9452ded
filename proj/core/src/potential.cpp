#include "shortck/potential.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace shortck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const CoeffSequence& require_coeffs(const MapSequence& seq) {
  if (!seq.coefficients()) throw std::invalid_argument("potential: sequence has no coefficient data");
  return *seq.coefficients();
}

double log_phi_of(const CPoint& w, const CoeffSequence& a, std::size_t n) {
  if (w.has_overflow()) return kInf;
  const ExtReal s = w.sup_norm();
  const ExtReal an = a.a(n);
  return (s > an ? s : an).log_abs().value;
}

double scale(double v, std::size_t n) {
  if (std::isinf(v)) return v;
  return std::ldexp(v, -static_cast<int>(n));
}

}  // namespace

PotentialParams potential_params(const PolySpec& P, double c) {
  P.require_positive();
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("potential_params: c must lie in (0,1)");
  PotentialParams p;
  p.c = c;
  p.M = P.abs_bound(c);
  p.M_envelope = std::max(p.M, 1.0) + 1.0;
  return p;
}

LogMag phi_n(const MapSequence& seq, const CPoint& z, std::size_t n) {
  const CoeffSequence& a = require_coeffs(seq);
  return {log_phi_of(compose(seq, z, n), a, n)};
}

double psi_n(const MapSequence& seq, const CPoint& z, std::size_t n) { return scale(phi_n(seq, z, n).value, n); }

double envelope_n(const MapSequence& seq, const CPoint& z, std::size_t n, double M) {
  return psi_n(seq, z, n) + scale(std::log(M), n);
}

Ladder potential_ladder(const MapSequence& seq, const CPoint& z, std::size_t n_max, double M_envelope, double tol) {
  const CoeffSequence& a = require_coeffs(seq);
  const double lm = std::log(M_envelope);
  Ladder l;
  CPoint w = z;
  for (std::size_t n = 0; n <= n_max; ++n) {
    w = shortck::apply(seq.step_at(n), w);
    const double lp = log_phi_of(w, a, n);
    const double ps = scale(lp, n);
    l.log_phi.push_back(lp);
    l.psi.push_back(ps);
    l.envelope.push_back(ps + scale(lm, n));
    l.n_stop = n;
    if (n > 0 && std::isfinite(ps) && std::fabs(ps - l.psi[n - 1]) < tol) {
      l.converged = true;
      break;
    }
    if (std::isinf(ps)) break;
  }
  return l;
}

PsiLimit psi_limit(const MapSequence& seq, const CPoint& z, std::size_t n_max, double tol) {
  const Ladder l = potential_ladder(seq, z, n_max, 2.0, tol);
  return {l.limit(), l.n_stop, l.converged};
}

PshReport psh_check(const std::function<double(std::complex<double>)>& f,
                    const std::vector<std::complex<double>>& centers, double r, std::size_t m, double tol) {
  if (!(r > 0.0) || m == 0) throw std::invalid_argument("psh_check: need r > 0 and m > 0");
  PshReport rep;
  rep.worst_margin = kInf;
  for (const auto c : centers) {
    SubMeanSample s;
    s.center = c;
    s.radius = r;
    s.center_value = f(c);
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      const double v = f(c + std::polar(r, th));
      if (!std::isfinite(v)) throw std::domain_error("psh_check: non-finite value on the circle");
      sum += v;
    }
    s.circle_mean = sum / static_cast<double>(m);
    if (s.center_value == -kInf) {
      s.margin = kInf;
      s.passed = true;
    } else {
      s.margin = s.circle_mean - s.center_value;
      s.passed = s.margin >= -tol * r * r;
    }
    if (!s.passed) ++rep.violations;
    rep.worst_margin = std::min(rep.worst_margin, s.margin);
    rep.samples.push_back(s);
  }
  return rep;
}

std::function<double(std::complex<double>)> on_line(std::function<double(const CPoint&)> f, CPoint z0, CPoint dir) {
  return [f = std::move(f), z0, dir](std::complex<double> zeta) {
    return f(z0 + ExtComplex::from_native(zeta) * dir);
  };
}

std::vector<RealSliceRow> positive_real_table(const MapSequence& seq, const PotentialParams& pp, double y,
                                              const std::vector<double>& xs, std::size_t n_max, double tol) {
  const auto& quad = seq.quadratic_factor();
  if (!quad) throw std::invalid_argument("positive_real_table: needs a shift-like sequence");
  const double c0 = quad->c0();
  std::vector<RealSliceRow> out;
  for (const double x : xs) {
    CPoint z(seq.dimension());
    z[0] = ExtComplex::from_native(x);
    z[1] = ExtComplex::from_native(y);
    const Ladder l = potential_ladder(seq, z, n_max, pp.M_envelope, tol);
    RealSliceRow r;
    r.x = x;
    r.y = y;
    r.n = l.n_stop;
    r.psi = l.limit();
    r.envelope = l.envelope.back();
    r.lower_bound = 2.0 * std::log(c0 * x) - scale(std::log(c0), l.n_stop);
    r.converged = l.converged;
    out.push_back(r);
  }
  return out;
}

std::string real_slice_csv(const std::vector<RealSliceRow>& rows) {
  std::ostringstream os;
  os << "x,y,n,psi_n,envelope_n,lower_bound,converged\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%.17g,%.17g,%.17g,%d\n", r.x, r.y, r.n, r.psi, r.envelope,
                  r.lower_bound, r.converged ? 1 : 0);
    os << buf;
  }
  return os.str();
}

}  // namespace shortck

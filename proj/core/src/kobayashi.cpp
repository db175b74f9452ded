#include "shortck/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "shortck/parallel.hpp"

namespace shortck {

namespace {

// D F_j(q) v, in closed form when the step has one and otherwise by central
// differences along v / ||v||, rescaled by ||v||.
CPoint push_forward(const AutoStep& st, const CPoint& q, const CPoint& v, double rel) {
  if (auto t = tangent(st, q, v)) return *t;
  const ExtReal nv = v.norm();
  if (nv.is_zero()) return CPoint(v.size());
  const ExtReal nq = q.norm();
  const ExtReal h = nq.is_zero() ? ExtReal::from_native(rel) : ExtReal::from_native(rel) * nq;
  CPoint u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] / nv;
  const CPoint hu = ExtComplex(h) * u;
  const CPoint d = shortck::apply(st, q + hu) - shortck::apply(st, q - hu);
  const ExtComplex scale(nv / (ExtReal::from_native(2.0) * h));
  return scale * d;
}

}  // namespace

DiscWitness disc_witness(const MapSequence& seq, const CPoint& p, const CPoint& xi, double R,
                         const DiscParams& params) {
  const std::size_t k = seq.dimension();
  if (p.size() != k || xi.size() != k) throw std::invalid_argument("disc_witness: dimension mismatch");
  if (!(R > 0.0)) throw std::invalid_argument("disc_witness: R must be positive");
  if (std::fabs(xi.norm().to_native() - 1.0) > 1e-12) throw std::invalid_argument("disc_witness: xi must be a unit vector");
  const double r = params.r > 0.0 ? params.r : params.basin.c;
  const std::size_t n_lo = params.basin.n0 > 0 ? params.basin.n0 - 1 : 0;

  DiscWitness w;
  w.p = p;
  w.xi = xi;
  w.R = R;

  CPoint pj = p, vj = xi;
  const ExtReal RR = ExtReal::from_native(R);
  const ExtReal rr = ExtReal::from_native(r);
  for (std::size_t j = 0; j <= params.n_max; ++j) {
    const AutoStep st = seq.step_at(j);
    vj = push_forward(st, pj, vj, params.fd_rel);
    pj = shortck::apply(st, pj);
    if (pj.has_overflow()) {
      w.diagnostic = "orbit of p overflowed at n=" + std::to_string(j) + "; p is not in the basin";
      return w;
    }
    const ExtReal np = pj.norm(), nv = vj.norm();
    w.log_xi_norm.push_back(nv.log_abs().value);
    const ExtReal room = rr - np;
    w.log_required.push_back(room.sign() > 0 ? (room / RR).log_abs().value
                                             : -std::numeric_limits<double>::infinity());
    if (j >= n_lo && np + RR * nv < rr) {
      w.admissible = true;
      w.n = j;
      break;
    }
  }
  if (!w.admissible) {
    std::ostringstream os;
    os << "no admissible n <= " << params.n_max << " for R=" << R << "; log||xi_n|| reached "
       << w.log_xi_norm.back() << " against required " << w.log_required.back();
    w.diagnostic = os.str();
    return w;
  }

  const std::size_t n = w.n;
  const CPoint Rxi = ExtComplex(RR) * vj;
  const auto tau = [&](std::complex<double> x) {
    return compose_inverse(seq, pj + ExtComplex::from_native(x) * Rxi, n);
  };
  w.center_value = compose_inverse(seq, pj, n);
  w.roundtrip_error = distance(w.center_value, p);

  const double h = params.fd_x;
  const CPoint Rxi_in = ExtComplex::from_native(R) * xi;
  const CPoint central = ExtComplex::from_native(1.0 / (2.0 * h)) * (tau(h) - tau(-h));
  w.central_error = distance(central, Rxi_in) / R;
  const std::size_t ms = std::max<std::size_t>(params.stencil, 2);
  CPoint acc(k);
  for (std::size_t j = 0; j < ms; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(ms);
    const std::complex<double> om = std::polar(1.0, t);
    acc = acc + ExtComplex::from_native(std::conj(om) / (h * static_cast<double>(ms))) * tau(h * om);
  }
  w.fd_derivative = acc;
  w.derivative_error = distance(w.fd_derivative, Rxi_in) / R;

  BasinParams tail_params = params.basin;
  tail_params.n0 = 0;
  const MapSequence tail(k, seq.family(), [seq, n](std::size_t j) { return seq.step_at(n + 1 + j); });
  w.samples = params.m;
  std::vector<char> bad(params.m, 0), drift(params.m, 0);
  parallel_for(0, params.m, [&](std::size_t i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(params.m);
    const std::complex<double> x = std::polar(1.0, t);
    const CPoint eta = pj + ExtComplex::from_native(x) * Rxi;
    const bool inside = eta.norm() < rr;
    bad[i] = !inside || classify_point(tail, eta, tail_params).tag != FateTag::Attracted;
    const CPoint back = compose(seq, tau(x), n);
    drift[i] = !(distance(back, eta) <= 1e-6 * r);
  });
  for (std::size_t i = 0; i < params.m; ++i) {
    w.containment_violations += static_cast<std::size_t>(bad[i]);
    w.forward_mismatch += static_cast<std::size_t>(drift[i]);
  }
  return w;
}

}  // namespace shortck

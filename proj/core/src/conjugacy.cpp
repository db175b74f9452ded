#include "shortck/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "shortck/parallel.hpp"
#include "shortck/sampling.hpp"

namespace shortck {

namespace {

double nat_norm(const CPoint& z) { return z.has_overflow() ? std::numeric_limits<double>::infinity() : z.norm().to_native(); }

// Real 2k x 2k Jacobian by central differences, column-major in real coordinates.
template <class G>
std::vector<double> fd_jacobian(G&& g, const CPoint& z, double h) {
  const std::size_t k = z.size(), m = 2 * k;
  std::vector<double> J(m * m);
  const ExtReal inv2h = ExtReal::from_native(1.0 / (2.0 * h));
  for (std::size_t j = 0; j < m; ++j) {
    CPoint zp = z, zm = z;
    const ExtComplex step = (j % 2 == 0) ? ExtComplex::from_native(h, 0.0) : ExtComplex::from_native(0.0, h);
    zp[j / 2] = zp[j / 2] + step;
    zm[j / 2] = zm[j / 2] - step;
    const CPoint gp = g(zp), gm = g(zm);
    if (gp.has_overflow() || gm.has_overflow()) throw std::runtime_error("tolerance_schedule: Jacobian sample overflowed");
    for (std::size_t i = 0; i < k; ++i) {
      const ExtComplex d = gp[i] - gm[i];
      const double re = (d.re * inv2h).to_native(), im = (d.im * inv2h).to_native();
      if (!std::isfinite(re) || !std::isfinite(im)) throw std::runtime_error("tolerance_schedule: Jacobian entry not finite");
      J[j * m + 2 * i] = re;
      J[j * m + 2 * i + 1] = im;
    }
  }
  return J;
}

double op_norm(const std::vector<double>& J, std::size_t m, int iters) {
  std::vector<double> v(m), Jv(m), w(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i);
  double sigma2 = 0.0;
  for (int it = 0; it < iters; ++it) {
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (double& x : v) x /= nv;
    std::fill(Jv.begin(), Jv.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) Jv[i] += J[j * m + i] * v[j];
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) w[j] += J[j * m + i] * Jv[i];
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += v[i] * w[i];
    sigma2 = s;
    v = w;
  }
  return std::sqrt(std::max(sigma2, 0.0));
}

}  // namespace

UUBWitness make_witness(double r, double C, double eps_frac, double delta_frac) {
  if (!(r > 0.0)) throw std::invalid_argument("make_witness: r must be positive");
  if (!(C > 0.0 && C < 1.0)) throw std::invalid_argument("make_witness: C must lie in (0,1)");
  if (!(eps_frac > 0.0 && eps_frac < 1.0) || !(delta_frac > 0.0 && delta_frac < 1.0))
    throw std::invalid_argument("make_witness: fractions must lie in (0,1)");
  UUBWitness w;
  w.r = r;
  w.C = C;
  w.r0 = C * r;
  w.eps = eps_frac * (r - C * r);
  w.delta = delta_frac * std::min(w.eps, 1.0 - C);
  w.Ctilde = C + w.delta;
  return w;
}

UUBResult verify_uub(const MapSequence& S, double r, double C, const UUBOptions& opt) {
  UUBWitness w = make_witness(r, C, opt.eps_frac, opt.delta_frac);
  const auto cloud = shell_samples(S.dimension(), r, opt.levels, opt.per_level, opt.seed);
  UUBResult res;
  for (std::size_t n = 0; n <= opt.n_max; ++n) {
    const AutoStep st = S.step_at(n);
    for (const CPoint& z : cloud) {
      const double nz = nat_norm(z);
      const double ratio = nat_norm(shortck::apply(st, z)) / nz;
      w.worst_ratio = std::max(w.worst_ratio, ratio);
      if (!(ratio < C)) {
        res.violation = UUBViolation{n, z, ratio};
        return res;
      }
    }
  }
  w.n_checked = opt.n_max + 1;
  w.samples = cloud.size();
  res.witness = w;
  return res;
}

std::vector<CPoint> ball_cloud(std::size_t k, double r, std::size_t shells, std::size_t per_shell, std::size_t fill,
                               std::uint64_t seed) {
  auto out = shell_samples(k, r, shells, per_shell, seed);
  out.push_back(CPoint(k));
  for (auto& z : ball_samples(CPoint(k), r, fill, mix_seed(seed, 0xba11ULL))) out.push_back(z);
  return out;
}

ToleranceSchedule tolerance_schedule(const UUBWitness& w, const MapSequence& S, std::size_t n_max,
                                     const ScheduleOptions& opt) {
  const std::size_t k = S.dimension();
  ToleranceSchedule sch;
  sch.w = w;
  sch.fd_step = opt.fd_rel * w.r;
  sch.power_iters = opt.power_iters;
  auto pts = shell_samples(k, w.r, opt.levels, opt.per_level, opt.seed);
  pts.push_back(CPoint(k));
  const auto dirs = sphere_samples(k, 1.0, opt.directions, mix_seed(opt.seed, 0xd1ULL));
  sch.jacobian_points = pts.size();
  sch.continuity_points = pts.size();
  sch.continuity_directions = dirs.size();
  const ExtReal rr = ExtReal::from_native(w.r);

  sch.rows.resize(n_max + 1);
  parallel_for(0, n_max + 1, [&](std::size_t n) {
    ScheduleRow row;
    row.n = n;
    if (n == 0) {
      row.M_measured = 1.0;  // S(-1) is the identity
    } else {
      for (const CPoint& z : pts) {
        const auto J = fd_jacobian([&](const CPoint& x) { return compose_inverse(S, x, n - 1); }, z, sch.fd_step);
        row.M_measured = std::max(row.M_measured, op_norm(J, 2 * k, opt.power_iters));
      }
      if (!(row.M_measured > 0.0) || !std::isfinite(row.M_measured))
        throw std::runtime_error("tolerance_schedule: degenerate inverse Jacobian at n=" + std::to_string(n));
    }
    row.M = 2.0 * row.M_measured;
    row.eps_n = std::pow(w.eps, static_cast<double>(n + 1)) / (2.0 * row.M);

    // Largest t on the halving ladder with ||S_n^{-1} z - S_n^{-1}(z + t u)|| < eps_n
    // for every sampled pair inside B(0;r).
    const AutoStep st = S.step_at(n);
    std::vector<CPoint> base(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) base[i] = apply_inverse(st, pts[i]);
    double t = w.r;
    bool found = false;
    for (int it = 0; it < 1100 && t > 0.0; ++it, t *= 0.5) {
      bool ok = true;
      for (std::size_t i = 0; i < pts.size() && ok; ++i) {
        for (const CPoint& u : dirs) {
          const CPoint q = pts[i] + ExtComplex::from_native(t) * u;
          if (q.norm() > rr) continue;
          const double d = nat_norm(apply_inverse(st, q) - base[i]);
          if (!(d < row.eps_n)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) throw std::runtime_error("tolerance_schedule: no continuity scale found at n=" + std::to_string(n));
    row.delta_tilde_measured = t;
    row.delta_tilde = 0.5 * t;
    row.delta_n = std::min(w.delta * std::pow(w.Ctilde, static_cast<double>(n)) * w.r0, row.delta_tilde);
    sch.rows[n] = row;
  });
  return sch;
}

ToleranceSchedule reschedule(const UUBWitness& w, const MapSequence& S, double r_small, std::size_t n_max,
                             const ScheduleOptions& opt, double eps_frac, double delta_frac) {
  if (!(r_small > 0.0) || r_small > w.r) throw std::invalid_argument("reschedule: need 0 < r_small <= r");
  UUBWitness ws = make_witness(r_small, w.C, eps_frac, delta_frac);
  ws.n_checked = w.n_checked;
  ws.samples = w.samples;
  ws.worst_ratio = w.worst_ratio;
  return tolerance_schedule(ws, S, n_max, opt);
}

bool PerturbationReport::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const PerturbationRow& r) { return r.pass; });
}

PerturbationReport check_perturbation(const MapSequence& S, const MapSequence& F, const ToleranceSchedule& sched,
                                      const std::vector<CPoint>& cloud) {
  if (S.dimension() != F.dimension()) throw std::invalid_argument("check_perturbation: dimension mismatch");
  const ExtReal rr = ExtReal::from_native(sched.w.r);
  std::vector<CPoint> pts;
  for (const auto& z : cloud)
    if (z.norm() <= rr) pts.push_back(z);
  PerturbationReport rep;
  rep.samples = pts.size();
  rep.rows.resize(sched.rows.size());
  parallel_for(0, sched.rows.size(), [&](std::size_t n) {
    const AutoStep s = S.step_at(n), f = F.step_at(n);
    double sup = 0.0;
    for (const auto& z : pts) sup = std::max(sup, nat_norm(shortck::apply(f, z) - shortck::apply(s, z)));
    rep.rows[n] = {n, sup, sched.rows[n].delta_n, sup < sched.rows[n].delta_n};
  });
  return rep;
}

ConjugacyProfile conjugacy_profile(const MapSequence& S, const MapSequence& F, const ToleranceSchedule& sched,
                                   const std::vector<CPoint>& K, std::size_t n_max) {
  const double eps = sched.w.eps;
  const std::size_t k = S.dimension();
  // phi[z][n] in native coordinates; empty when excluded.
  std::vector<std::vector<std::vector<std::complex<double>>>> phi(K.size());
  parallel_for(0, K.size(), [&](std::size_t i) {
    CPoint y = K[i];
    std::vector<std::vector<std::complex<double>>> rows;
    for (std::size_t n = 0; n <= n_max; ++n) {
      y = shortck::apply(F.step_at(n), y);
      const CPoint x = compose_inverse(S, y, n);
      if (x.has_overflow() || y.has_overflow()) return;
      rows.push_back(x.to_native());
    }
    phi[i] = std::move(rows);
  });
  ConjugacyProfile prof;
  const auto dist = [k](const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += std::norm(a[j] - b[j]);
    return std::sqrt(s);
  };
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < K.size(); ++i) (phi[i].empty() ? prof.excluded : (used.push_back(i), prof.used))++;

  prof.step_diff.assign(n_max, 0.0);
  prof.step_bound.resize(n_max);
  for (std::size_t n = 0; n < n_max; ++n) prof.step_bound[n] = std::pow(eps, static_cast<double>(n + 1));
  prof.certificate = !used.empty();
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double bound = std::pow(eps, static_cast<double>(n + 1)) / (1.0 - eps);
    for (std::size_t m = n + 1; m <= n_max; ++m) {
      double sup = 0.0;
      for (const std::size_t i : used) sup = std::max(sup, dist(phi[i][n], phi[i][m]));
      if (m == n + 1) prof.step_diff[n] = sup;
      const double ratio = sup / bound;
      prof.worst_certificate_ratio = std::max(prof.worst_certificate_ratio, ratio);
      if (!(sup <= bound)) prof.certificate = false;
    }
  }
  prof.min_separation_in = std::numeric_limits<double>::infinity();
  prof.min_separation_out = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < used.size(); ++a) {
    for (std::size_t b = a + 1; b < used.size(); ++b) {
      prof.min_separation_in = std::min(prof.min_separation_in, distance(K[used[a]], K[used[b]]));
      prof.min_separation_out = std::min(prof.min_separation_out, dist(phi[used[a]][n_max], phi[used[b]][n_max]));
    }
  }
  return prof;
}

ContainmentReport containment_check(const MapSequence& F, const UUBWitness& w, std::size_t n_max,
                                    std::size_t samples, std::uint64_t seed) {
  const std::size_t k = F.dimension();
  ContainmentReport rep;
  const auto sphere = sphere_samples(k, w.r0, samples, seed);
  const auto ball = ball_cloud(k, w.r, 2, samples / 4 + 1, samples, mix_seed(seed, 3));
  rep.samples = sphere.size();
  for (const CPoint& z0 : sphere) {
    CPoint z = z0;
    for (std::size_t n = 0; n <= n_max; ++n) {
      z = shortck::apply(F.step_at(n), z);
      const double lim = std::pow(w.Ctilde, static_cast<double>(n + 1)) * w.r0;
      const double nz = nat_norm(z);
      rep.worst_ratio = std::max(rep.worst_ratio, nz / lim);
      if (!(nz <= lim * (1.0 + 1e-9))) {
        ++rep.violations;
        break;
      }
    }
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    const AutoStep st = F.step_at(n);
    for (const CPoint& z : ball)
      if (!(nat_norm(shortck::apply(st, z)) < w.r)) ++rep.ball_escapes;
  }
  return rep;
}

const char* bump_name(Bump b) {
  switch (b) {
    case Bump::LinearZ1E1: return "linear_z1_e1";
    case Bump::SquareZ2E1: return "square_z2_e1";
    case Bump::SquareZ1E2: return "square_z1_e2";
  }
  return "?";
}

MapSequence perturbed(const MapSequence& S, const ToleranceSchedule& sched, Bump b, double factor) {
  const std::size_t k = S.dimension();
  const double r = sched.w.r;
  auto steps = std::make_shared<std::vector<AutoStep>>();
  for (std::size_t n = 0; n < sched.rows.size(); ++n) {
    const AutoStep base = S.step_at(n);
    const double amp = factor * sched.rows[n].delta_n;
    auto maps = std::make_shared<step::CustomMaps>();
    maps->k = k;
    maps->forward = [base, amp, r, b](const CPoint& z) {
      CPoint w = shortck::apply(base, z);
      switch (b) {
        case Bump::LinearZ1E1:
          w[0] = w[0] + ExtComplex::from_native(amp / r) * z[0];
          break;
        case Bump::SquareZ2E1:
          w[0] = w[0] + ExtComplex::from_native(amp / (r * r)) * (z[1] * z[1]);
          break;
        case Bump::SquareZ1E2:
          w[1] = w[1] + ExtComplex::from_native(amp / (r * r)) * (z[0] * z[0]);
          break;
      }
      return w;
    };
    steps->push_back(step::Custom{std::move(maps)});
  }
  return MapSequence(k, Family::Custom, [S, steps](std::size_t n) -> AutoStep {
    return n < steps->size() ? (*steps)[n] : S.step_at(n);
  });
}

std::string schedule_csv(const ToleranceSchedule& s) {
  std::ostringstream os;
  os << "n,M_measured,M,eps_n,delta_tilde_measured,delta_tilde,delta_n\n";
  char buf[320];
  for (const auto& r : s.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n, r.M_measured, r.M, r.eps_n,
                  r.delta_tilde_measured, r.delta_tilde, r.delta_n);
    os << buf;
  }
  return os.str();
}

std::string profile_csv(const ConjugacyProfile& p) {
  std::ostringstream os;
  os << "n,sup_step_diff,eps_pow_n_plus_1\n";
  char buf[160];
  for (std::size_t n = 0; n < p.step_diff.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, p.step_diff[n], p.step_bound[n]);
    os << buf;
  }
  return os.str();
}

}  // namespace shortck

#pragma once

// Uniform upper-bound witnesses, the perturbation tolerance schedule, and the
// conjugacy maps phi_n = S(n)^{-1} F(n) with their Cauchy certificate.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shortck/maps.hpp"

namespace shortck {

struct UUBWitness {
  double r = 0.0;
  double C = 0.0;
  double r0 = 0.0;      // C r
  double eps = 0.0;     // in (0, r - C r)
  double delta = 0.0;   // in (0, min(eps, 1 - C))
  double Ctilde = 0.0;  // C + delta
  std::size_t n_checked = 0;
  std::size_t samples = 0;
  double worst_ratio = 0.0;  // max ||S_n z|| / ||z|| seen
};

/// eps = eps_frac * r (1 - C), delta = delta_frac * min(eps, 1 - C).
/// Throws std::invalid_argument unless 0 < C < 1, r > 0 and both fractions lie in (0,1).
UUBWitness make_witness(double r, double C, double eps_frac = 0.9, double delta_frac = 0.5);

struct UUBOptions {
  std::size_t n_max = 30;
  std::size_t levels = 6;      // radii r, r/2, r/4, ...
  std::size_t per_level = 24;  // random directions per radius
  std::uint64_t seed = 7;
  double eps_frac = 0.9;
  double delta_frac = 0.5;
};

struct UUBViolation {
  std::size_t n = 0;
  CPoint z;
  double ratio = 0.0;
};

struct UUBResult {
  std::optional<UUBWitness> witness;
  std::optional<UUBViolation> violation;
  bool ok() const { return witness.has_value(); }
};

/// Checks ||S_n(z)|| < C ||z|| on sphere samples of B(0;r) for n <= n_max.
/// Throws std::invalid_argument unless 0 < C < 1 and r > 0.
UUBResult verify_uub(const MapSequence& S, double r, double C, const UUBOptions& opt = {});

struct ScheduleRow {
  std::size_t n = 0;
  double M_measured = 0.0;  // sampled max ||D(S(n-1))^{-1}||_op
  double M = 0.0;           // 2 * M_measured
  double eps_n = 0.0;       // eps^{n+1} / (2 M)
  double delta_tilde_measured = 0.0;
  double delta_tilde = 0.0;  // measured / 2
  double delta_n = 0.0;      // min(delta Ctilde^n r0, delta_tilde)
};

struct ScheduleOptions {
  std::size_t levels = 3;
  std::size_t per_level = 8;
  std::size_t directions = 12;
  std::uint64_t seed = 11;
  double fd_rel = 1e-6;  // central-difference step relative to r
  int power_iters = 50;
};

struct ToleranceSchedule {
  UUBWitness w;
  std::vector<ScheduleRow> rows;
  std::size_t jacobian_points = 0;
  std::size_t continuity_points = 0;
  std::size_t continuity_directions = 0;
  double fd_step = 0.0;
  int power_iters = 0;

  /// delta_n, or 0 past the computed range.
  double delta(std::size_t n) const { return n < rows.size() ? rows[n].delta_n : 0.0; }
};

/// Throws std::runtime_error when a finite-difference Jacobian degenerates.
ToleranceSchedule tolerance_schedule(const UUBWitness& w, const MapSequence& S, std::size_t n_max,
                                     const ScheduleOptions& opt = {});

/// The schedule for the smaller radius r_small with C and the witness
/// fractions unchanged. Throws std::invalid_argument unless 0 < r_small <= w.r.
ToleranceSchedule reschedule(const UUBWitness& w, const MapSequence& S, double r_small, std::size_t n_max,
                             const ScheduleOptions& opt = {}, double eps_frac = 0.9, double delta_frac = 0.5);

/// Sample cloud of the closed ball: shells at r, r/2, ... and uniform fill.
std::vector<CPoint> ball_cloud(std::size_t k, double r, std::size_t shells, std::size_t per_shell,
                               std::size_t fill, std::uint64_t seed);

struct PerturbationRow {
  std::size_t n = 0;
  double sup_diff = 0.0;
  double delta_n = 0.0;
  bool pass = false;
};

struct PerturbationReport {
  std::vector<PerturbationRow> rows;
  std::size_t samples = 0;
  bool passed() const;
};

/// sup over the cloud (restricted to B(0;r)) of ||F_n - S_n|| against delta_n.
PerturbationReport check_perturbation(const MapSequence& S, const MapSequence& F, const ToleranceSchedule& sched,
                                      const std::vector<CPoint>& cloud);

struct ConjugacyProfile {
  std::vector<double> step_diff;      // sup ||phi_{n+1} - phi_n||, n = 0..n_max-1
  std::vector<double> step_bound;     // eps^{n+2}, the per-step bound
  double worst_certificate_ratio = 0.0;  // max over n<m of sup||phi_n - phi_m|| / (eps^{n+1}/(1-eps))
  bool certificate = false;
  std::size_t used = 0;
  std::size_t excluded = 0;  // overflowed inverse orbits
  double min_separation_in = 0.0;
  double min_separation_out = 0.0;  // injectivity probe on phi_{n_max}
};

ConjugacyProfile conjugacy_profile(const MapSequence& S, const MapSequence& F, const ToleranceSchedule& sched,
                                   const std::vector<CPoint>& K, std::size_t n_max);

struct ContainmentReport {
  std::size_t samples = 0;
  std::size_t violations = 0;  // ||F(n)(z)|| > Ctilde^{n+1} r0 (1 + 1e-9)
  std::size_t ball_escapes = 0;  // F_n(z) outside B(0;r) for z in B(0;r)
  double worst_ratio = 0.0;      // max ||F(n) z|| / (Ctilde^{n+1} r0)
  bool passed() const { return violations == 0 && ball_escapes == 0; }
};

/// Checks the shrinking-ball induction on samples of the sphere of radius r0
/// and the ball invariance of each F_n on samples of B(0;r).
ContainmentReport containment_check(const MapSequence& F, const UUBWitness& w, std::size_t n_max,
                                    std::size_t samples, std::uint64_t seed);

enum class Bump {
  LinearZ1E1,  // (z_1 / r) e_1
  SquareZ2E1,  // (z_2 / r)^2 e_1
  SquareZ1E2,  // (z_1 / r)^2 e_2
};

const char* bump_name(Bump b);

/// F_n = S_n + factor * delta_n * bump(z); F_n = S_n past the schedule.
MapSequence perturbed(const MapSequence& S, const ToleranceSchedule& sched, Bump b, double factor);

std::string schedule_csv(const ToleranceSchedule& s);
std::string profile_csv(const ConjugacyProfile& p);

}  // namespace shortck

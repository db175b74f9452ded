#pragma once

// The potential ladder phi_n, psi_n = 2^-n log phi_n and the envelope Phi_n,
// plus a sub-mean-value probe on complex lines.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "shortck/maps.hpp"

namespace shortck {

struct PotentialParams {
  double c = 0.5;
  double M = 1.0;           // P(c) = sup |P| on D(0;c) for positive coefficients
  double M_envelope = 2.0;  // max(M, 1) + 1, the constant of the one-step bound
};

/// Throws std::invalid_argument unless P has positive coefficients and 0 < c < 1.
PotentialParams potential_params(const PolySpec& P, double c);

/// log max(|f_1^n(z)|, ..., |f_k^n(z)|, a_n); +inf on overflow.
/// Throws std::invalid_argument unless the sequence carries coefficients.
LogMag phi_n(const MapSequence& seq, const CPoint& z, std::size_t n);

/// 2^-n log phi_n; -inf propagates.
double psi_n(const MapSequence& seq, const CPoint& z, std::size_t n);

/// psi_n + 2^-n log M, the closed form of the geometric tail.
double envelope_n(const MapSequence& seq, const CPoint& z, std::size_t n, double M);

struct Ladder {
  std::vector<double> log_phi;   // n = 0 .. n_stop
  std::vector<double> psi;
  std::vector<double> envelope;
  std::size_t n_stop = 0;
  bool converged = false;        // |psi_{n+1} - psi_n| < tol reached
  double limit() const { return psi.empty() ? 0.0 : psi.back(); }
};

/// One orbit, all rungs: stops when |psi_{n+1} - psi_n| < tol or at n_max.
Ladder potential_ladder(const MapSequence& seq, const CPoint& z, std::size_t n_max, double M_envelope,
                        double tol = 1e-6);

struct PsiLimit {
  double value = 0.0;
  std::size_t n = 0;
  bool converged = false;
};

PsiLimit psi_limit(const MapSequence& seq, const CPoint& z, std::size_t n_max, double tol = 1e-6);

struct SubMeanSample {
  std::complex<double> center;
  double radius = 0.0;
  double center_value = 0.0;
  double circle_mean = 0.0;
  double margin = 0.0;  // circle_mean - center_value; negative means a violation
  bool passed = true;
};

struct PshReport {
  std::vector<SubMeanSample> samples;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  bool passed() const { return violations == 0; }
};

/// Sub-mean-value test of f at each centre: f(c) <= mean of m equispaced
/// circle values (trapezoid) + tol * r^2. A centre value of -inf passes;
/// non-finite circle values throw std::domain_error.
PshReport psh_check(const std::function<double(std::complex<double>)>& f,
                    const std::vector<std::complex<double>>& centers, double r, std::size_t m = 64,
                    double tol = 1e-3);

/// f restricted to the complex line z0 + zeta * dir.
std::function<double(std::complex<double>)> on_line(std::function<double(const CPoint&)> f, CPoint z0, CPoint dir);

struct RealSliceRow {
  double x = 0.0;
  double y = 0.0;
  std::size_t n = 0;
  double psi = 0.0;
  double envelope = 0.0;
  double lower_bound = 0.0;  // 2 log(c_0 x) - 2^-n log c_0
  bool converged = false;
};

/// Converged psi on the positive-real slice (x, y) for each x.
std::vector<RealSliceRow> positive_real_table(const MapSequence& seq, const PotentialParams& pp, double y,
                                              const std::vector<double>& xs, std::size_t n_max, double tol = 1e-6);

/// CSV with header x,y,n,psi_n,envelope_n,lower_bound,converged
std::string real_slice_csv(const std::vector<RealSliceRow>& rows);

}  // namespace shortck

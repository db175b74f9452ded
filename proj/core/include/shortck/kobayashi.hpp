#pragma once

// Holomorphic discs tau_n = F(n)^{-1}(p_n + x R xi_n) through a basin point
// with derivative R xi at the centre.

#include <cstddef>
#include <string>
#include <vector>

#include "shortck/basin.hpp"
#include "shortck/maps.hpp"

namespace shortck {

struct DiscParams {
  BasinParams basin;
  double r = 0.0;             // admissibility radius; 0 means basin.c
  std::size_t n_max = 200;
  std::size_t m = 64;         // boundary samples of the unit disc
  double fd_x = 1e-3;         // radius of the difference stencil in the disc variable
  std::size_t stencil = 32;   // points of the circular stencil
  double fd_rel = 1e-7;       // forward step relative to ||p_{n-1}||, custom steps only
};

struct DiscWitness {
  CPoint p;
  CPoint xi;
  double R = 0.0;
  bool admissible = false;
  std::size_t n = 0;
  CPoint center_value;   // tau_n(0)
  double roundtrip_error = 0.0;
  CPoint fd_derivative;  // tau_n'(0), target R xi
  double derivative_error = 0.0;  // ||fd_derivative - R xi|| / R
  double central_error = 0.0;     // same for the plain two-point central difference
  std::size_t samples = 0;
  std::size_t containment_violations = 0;  // eta_n(x) outside B(0;r) or its tail orbit not attracted
  std::size_t forward_mismatch = 0;        // F(n)(tau_n(x)) recomputed forward drifts from eta_n(x)
  std::vector<double> log_xi_norm;      // log ||xi_j|| for j = 0..last tried
  std::vector<double> log_required;     // log((r - ||p_j||) / R)
  std::string diagnostic;
};

/// tau_n is a polynomial in x, so its derivative at 0 is taken with the
/// circular stencil (1/m) sum tau(h w^j) w^-j / h, exact below degree m.
/// Containment of a boundary sample is judged on eta_n(x) = F(n)(tau_n(x)):
/// inside B(0;r) and attracted under F_{n+1}, F_{n+2}, ... Re-iterating the
/// computed tau_n(x) forward cancels catastrophically once |tau_n(x)| is
/// large; that drift is reported separately as forward_mismatch.
/// Throws std::invalid_argument unless R > 0, ||xi|| = 1 (to 1e-12) and the
/// dimensions match. An R too large for n_max gives admissible = false with
/// the decay trace of ||xi_j|| against the required bound.
DiscWitness disc_witness(const MapSequence& seq, const CPoint& p, const CPoint& xi, double R,
                         const DiscParams& params);

}  // namespace shortck

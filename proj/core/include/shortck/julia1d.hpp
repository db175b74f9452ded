#pragma once

// One-variable polynomial dynamics: fates, Julia rasters, the hyperbolicity
// probe and the nested compact sets C_n with perturbation margins c'_n.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shortck/gridset.hpp"

namespace shortck {

class Poly1 {
 public:
  Poly1() = default;
  /// c_0 + c_1 z + ... ; trailing zeros trimmed. Throws std::invalid_argument
  /// when the degree is below 2.
  explicit Poly1(std::vector<std::complex<double>> coeffs);
  Poly1(std::initializer_list<double> coeffs);

  /// a z^4 + b z^3 + z^2
  static Poly1 quartic(double a, double b) { return Poly1({0.0, 0.0, 1.0, b, a}); }

  std::size_t degree() const { return c_.size() - 1; }
  const std::vector<std::complex<double>>& coeffs() const { return c_; }

  std::complex<double> operator()(std::complex<double> z) const;
  std::complex<double> derivative(std::complex<double> z) const;
  /// sum |c_i| r^i
  double abs_bound(double r) const;

  /// Roots of p' (Durand-Kerner), with multiplicity.
  std::vector<std::complex<double>> critical_points() const;

  /// Smallest R >= 1 with |p(z)| >= 2|z| + 1 whenever |z| >= R.
  double escape_radius() const;
  /// Largest r <= 1 with p(D(0;r)) inside D(0;r/2) by the coefficient bound,
  /// or 0 when the origin is not an attracting fixed point.
  double attracting_radius() const;

  std::string to_string() const;

 private:
  std::vector<std::complex<double>> c_;
};

enum class Fate1 { Attracted0, Escaped, Undecided };

struct Fate1Result {
  Fate1 fate = Fate1::Undecided;
  std::size_t n = 0;  // iterate at which the fate was decided
};

Fate1Result fate1d(const Poly1& p, std::complex<double> z, std::size_t N, double r_esc, double r_att);

/// Attracting cycle found from a critical orbit, with a sampled capture radius.
struct AttractingCycle {
  std::vector<std::complex<double>> points;
  double multiplier = 0.0;      // |(p^q)'| along the cycle
  double capture_radius = 0.0;  // p^q maps D(w; rho) into D(w; rho/2) on samples
  bool through_origin = false;
};

enum class ProbeVerdict { Pass, PassWithNote, Fail, Inconclusive };

const char* verdict_name(ProbeVerdict v);

struct CriticalOrbit {
  std::complex<double> point;
  std::string fate;  // "origin", "escaped", "cycle(q)", "undecided"
  std::size_t steps = 0;
  int cycle = -1;  // index into HyperbolicityReport::cycles
};

struct HyperbolicityReport {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::vector<CriticalOrbit> critical;
  std::vector<AttractingCycle> cycles;
  std::string note;
};

/// Necessary-condition probe for "hyperbolic with a single attracting cycle,
/// the fixed point 0". Critical orbits attracted to a cycle through 0 that is
/// not the fixed point give PassWithNote; any other attracting cycle, or an
/// origin that is not an attracting fixed point, gives Fail.
HyperbolicityReport hyperbolicity_probe(const Poly1& p, std::size_t N, double r_esc);

/// Pixels that are undecided after N iterates or whose 8-neighbourhood mixes
/// captured (by an attracting cycle) and escaped pixels.
GridSet julia_grid(const Poly1& p, const Rect& rect, std::size_t nx, std::size_t ny, std::size_t N);

/// Conservative raster image p(S): each member pixel maps to a block whose
/// radius covers |p'| times the pixel half-diagonal.
GridSet image(const Poly1& p, const GridSet& s);

/// Rectangle centred at 0 with half-width 1.05 * escape_radius().
Rect default_julia_rect(const Poly1& p);

struct NestedStep {
  std::size_t n = 0;
  GridSet C;          // compact side
  GridSet D;          // unbounded side, truncated to the rectangle
  double delta = 0.0;
  double eta = 0.0;
  double cprime = 0.0;  // min(delta, eta), 0 at n = 0
  double diam = 0.0;
};

struct NestedSequence {
  GridSet julia;
  GridSet julia_nbhd;  // J_p(delta0)
  GridSet pre;         // p^{-1}(J_p(delta0)), the set U of the tube
  double delta0 = 0.0;
  double r_esc = 0.0;
  double green_level = 0.0;  // D_0 = {G > green_level} outside p^{-1}(K_p(delta0))
  std::vector<NestedStep> steps;  // steps[0] holds C_0, D_0
  bool truncated = false;
  std::string diagnostic;

  /// c'_n, or 0 past the computed range.
  double cprime(std::size_t n) const { return n < steps.size() ? steps[n].cprime : 0.0; }
};

/// Builds C_0 (compact component of C \ p^{-1}(J_p(delta0)) containing 0),
/// D_0 (unbounded part of a Green level set {G > g0} lying off
/// p^{-1}(K_p(delta0)), g0 above every critical level), then
/// C_n = image(C_{n-1}) dilated by the largest grid delta_n with
/// image(C_{n-1}) dilated by 2 delta_n inside C_{n-1}; likewise D_n with eta_n (capped at 1 once images leave the
/// rectangle). Throws std::invalid_argument when delta0 <= 0, when the
/// rectangle does not contain D(0; escape_radius) or when C_0 is not
/// resolvable (0 lies in p^{-1}(J_p(delta0)) or its component meets the edge).
NestedSequence nested_sequence(const Poly1& p, double delta0, std::size_t n_max, const Rect& rect, std::size_t nx,
                               std::size_t ny, std::size_t N);

/// min(0.05 diam(J), dist(0, J) / 4) on the raster; the second term keeps
/// the origin off p^{-1}(J_p(delta0)) when J has far-away pieces.
double default_delta0(const GridSet& julia);

enum class StreamOutcome { ToZero, Escaped, Mixed };

/// z_n = p(z_{n-1}) + w_n with |w_n| < frac * c'_n uniform in the disc,
/// w_n = 0 past the computed range; then `tail` unperturbed steps.
StreamOutcome perturbed_stream(const Poly1& p, const NestedSequence& ns, std::complex<double> z0, double frac,
                               std::size_t tail, std::uint64_t seed);

}  // namespace shortck

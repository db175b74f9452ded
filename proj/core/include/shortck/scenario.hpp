#pragma once

// Named constructions: the positive-coefficient shift-like basins, and the
// coupling of a shift-like sequence to a one-variable Julia set with the
// tube measurements of J^+.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shortck/basin.hpp"
#include "shortck/dimension.hpp"
#include "shortck/io.hpp"
#include "shortck/julia1d.hpp"
#include "shortck/maps.hpp"

namespace shortck {

struct SequenceSpec {
  Family family = Family::ShiftLike;
  std::size_t k = 2;
  std::vector<double> P{1.0};  // shift-like factor, or the Henon-like p
  double K = 1.0;
  double g = 3.0;
  std::vector<double> log_a;  // explicit coefficients (logs); overrides K, g when non-empty
  double alpha = 0.5;         // DiagLinear
  long center_index = 0;      // RosayRudin

  CoeffSequence coeffs() const;
  /// Throws std::invalid_argument for Custom or inconsistent fields.
  MapSequence build() const;
  void describe(Manifest& m, const std::string& section) const;
};

struct Scenario {
  std::string name;
  SequenceSpec spec;
  MapSequence seq;
  BasinParams params;
  std::vector<std::pair<std::string, SliceWindow>> slices;
  std::vector<double> eps;
  std::size_t witness_budget = 4096;

  Manifest manifest() const;
  std::uint64_t hash() const { return manifest().hash(); }
};

void describe(Manifest& m, const std::string& section, const BasinParams& p);
void describe(Manifest& m, const std::string& section, const SliceWindow& w);

/// Shift-like sequence (z_1^2 P(z_1) + a_n z_2, a_n z_1) with log a_n = -K g^n,
/// default basin parameters (c overridden when c > 0) and two slices through
/// the origin: real-real and the z_1-plane. Throws std::invalid_argument when
/// P is not positive, the coefficients fail validation or M c >= 1.
Scenario build_theorem11_scenario(const PolySpec& P, double K, double g, double c = 0.0, std::size_t res = 256);

struct TubeSpec {
  double C = 1.0;      // half-width of N_C
  double delta = 0.0;  // Julia neighbourhood; 0 picks the default
  double R = 0.0;      // J_p(delta) inside D(0;R); 0 picks the escape radius

  /// Throws std::invalid_argument unless C > 0 and delta, R >= 0.
  void validate() const;
};

/// Q with p = z^2 Q. Throws std::invalid_argument unless p(0) = p'(0) = 0 and
/// all coefficients are real.
PolySpec quadratic_part(const Poly1& p);

struct CoupledSequence {
  CoeffSequence coeffs;
  std::vector<double> log_a;  // computed prefix
  bool truncated = false;
  std::string diagnostic;
};

/// a_n = 1/2 min(a_{n-1}^2, c'_{n+1} / max(R, C)) with a_{-1} = 1, in logs.
/// Stops at the end of the margin list with a diagnostic; later terms then
/// continue by cubing. Throws std::runtime_error when no margin is available.
CoupledSequence couple_sequence_to_julia(const NestedSequence& ns, const TubeSpec& tube, std::size_t n_max);

struct CoupledScenario {
  Poly1 p;
  TubeSpec tube;  // resolved
  NestedSequence ns;
  CoupledSequence coupled;
  SequenceSpec spec;
  MapSequence seq;
  BasinParams params;

  Manifest manifest() const;
};

struct CouplingOptions {
  std::size_t k = 2;
  std::size_t res = 384;
  std::size_t julia_iters = 400;
  std::size_t nested_max = 40;
  std::size_t n_max = 40;
};

CoupledScenario build_coupled_scenario(const Poly1& p, TubeSpec tube, const CouplingOptions& opt = {});

enum class TubeSide { Compact, Unbounded };

/// Points (z_1, z') with z_1 a pixel centre of C_0 (compact side) or D_0
/// (unbounded side) and z' uniform in the polydisc of radius C.
std::vector<CPoint> tube_samples(const CoupledScenario& cs, TubeSide side, std::size_t count, std::uint64_t seed);

struct JPlusOptions {
  double z2_frac = 0.25;  // slice at z_2 = z2_frac * C
  std::vector<double> eps;  // empty: default schedule
  std::size_t subsample = 100;
  std::size_t witness_budget = 4096;
  double witness_px = 4.0;
  std::size_t min_boundary = 32;
  std::uint64_t seed = 5;
};

struct JPlusReport {
  FateGrid grid;
  GridSet boundary;  // on the Julia rectangle
  std::size_t boundary_count = 0;
  bool too_few = false;
  DimEstimate dim;
  std::size_t witness_tried = 0;
  std::size_t witness_found = 0;
  double witness_rate = 0.0;
  double distance_to_u = 0.0;  // directed, boundary to p^{-1}(J_p(delta))
  double tube_bound = 0.0;     // two pixels
  bool within_tube = false;
};

JPlusReport measure_jplus(const CoupledScenario& cs, const JPlusOptions& opt = {});

}  // namespace shortck

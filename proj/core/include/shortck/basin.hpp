#pragma once

// Orbit classification against the attraction polydisc and the escape
// region, slice rendering, and boundary probes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shortck/gridset.hpp"
#include "shortck/maps.hpp"

namespace shortck {

enum class EscapeRule {
  SupNorm,          // ||z||_inf > R or overflow
  FirstCoordinate,  // z in V_R^+ (|z_1| > R and |z_1| >= |z_j|) or overflow
};

struct BasinParams {
  double c = 0.5;         // attraction polydisc radius
  double c_next = 0.75;   // polydiscs after entry shrink by this ratio
  double M = 1.0;         // sup |P| on D(0;c) for the shift-like families
  double r_escape = 10.0;
  std::size_t n_max = 200;
  std::size_t n0 = 0;  // entries before n0 must persist until n0
  std::size_t k = 2;
  EscapeRule escape = EscapeRule::SupNorm;
};

/// Largest c <= 0.5 with 2 c P(c) <= 1, so that M c <= 1/2 for M = P(c).
double default_polydisc_radius(const PolySpec& P);

/// Smallest R >= 10 (by doubling) with R * (|c_top| R^deg - sum_{i<deg} |c_i| R^i) >= 4,
/// so that V_R^+ is forward invariant with |z_1| at least tripling.
double default_escape_radius(const PolySpec& P);

/// First n with a_n < c' - M c (a_n is decreasing, so the per-step nesting
/// inequality then holds for every later step). Returns `limit` if none.
std::size_t first_nesting_index(const CoeffSequence& a, double M, double c, double c_next, std::size_t limit);

/// Defaults per family: the shift-like and Henon-like (with p = z^2 Q)
/// sequences use the polydisc/escape/nesting rules above; other families use
/// a sup-norm escape test, n0 = 0 and c = 0.5 (DiagLinear) or 1e-3.
BasinParams default_basin_params(const MapSequence& seq);

enum class FateTag { Attracted, Escaped, Undecided };

struct OrbitFate {
  FateTag tag = FateTag::Undecided;
  std::size_t n = 0;  // first_n for Attracted/Escaped, n_max for Undecided

  static OrbitFate attracted(std::size_t n) { return {FateTag::Attracted, n}; }
  static OrbitFate escaped(std::size_t n) { return {FateTag::Escaped, n}; }
  static OrbitFate undecided(std::size_t n) { return {FateTag::Undecided, n}; }

  friend bool operator==(const OrbitFate&, const OrbitFate&) = default;
};

std::string to_string(const OrbitFate& f);

/// Iterates F(0), F(1), ... until the orbit settles in the polydisc (an entry
/// at n counts once the orbit is still inside at max(n, n0)), escapes, or
/// n_max is reached.
OrbitFate classify_point(const MapSequence& seq, const CPoint& z, const BasinParams& p);

struct OrbitTrace {
  OrbitFate fate;
  std::size_t reexits = 0;                // exits from the polydisc after acceptance
  std::size_t trichotomy_violations = 0;  // F(n)(z) outside V_R u V_R^+
  std::size_t plus_entries = 0;           // steps spent in V_R^+ \ V_R
  std::optional<std::size_t> first_plus;  // first n with F(n)(z) in V_R^+ \ V_R
  std::vector<double> log_sup;            // log ||F(n)(z)||_inf for n = 0..last
};

/// Like classify_point, but keeps iterating attracted orbits to n_max to
/// count re-exits, and records region membership along the way.
OrbitTrace trace_orbit(const MapSequence& seq, const CPoint& z, const BasinParams& p);

struct Region {
  bool in_vr = false;
  std::vector<std::size_t> indices;  // 1-based i with z in V_R^i, when not in V_R

  bool plus() const { return !in_vr && !indices.empty() && indices.front() == 1; }
  bool minus() const;
};

/// Throws std::invalid_argument for R <= 0.
Region region_of(const CPoint& z, double R);

struct SliceWindow {
  CPoint base;
  CPoint u;
  CPoint v;
  double width = 1.0;
  double height = 1.0;
  std::size_t nx = 64;
  std::size_t ny = 64;

  /// base + s u + t v at pixel (i, j); s, t run over the centred extents.
  CPoint point_at(std::size_t i, std::size_t j) const;
  /// The (s, t) parameter rectangle, for GridSet outputs.
  Rect param_rect() const { return {{0.0, 0.0}, width, height}; }
  /// Throws std::invalid_argument when u, v are dependent or sizes are zero.
  void validate() const;
};

/// Slice through `base` spanned by (1,0,..) and (i,0,..), i.e. the z_1-plane.
SliceWindow z1_plane(std::size_t k, std::complex<double> center, double width, double height, std::size_t nx,
                     std::size_t ny, std::complex<double> z2 = 0.0);

struct FateGrid {
  SliceWindow window;
  std::vector<OrbitFate> fates;  // row-major, nx * ny

  const OrbitFate& at(std::size_t i, std::size_t j) const { return fates[j * window.nx + i]; }
  std::size_t count(FateTag t) const;
};

FateGrid render_slice(const MapSequence& seq, const SliceWindow& window, const BasinParams& p);

/// Non-escaped pixels whose 3x3 neighbourhood holds both an attracted and an
/// escaped pixel: a one-pixel interface on the non-escaping side.
GridSet boundary_pixels(const FateGrid& g);

struct BoundaryWitness {
  bool found = false;
  std::optional<CPoint> attracted;
  std::optional<CPoint> escaped;
  std::size_t tried = 0;
  std::string diagnostic;
};

/// Searches B(z; eps) with axis rings at radii eps * {1/4, 1/2, 3/4, 0.999}
/// then seeded uniform fill, up to `budget` candidates.
BoundaryWitness boundary_witness(const MapSequence& seq, const CPoint& z, double eps, std::size_t budget,
                                 const BasinParams& p, std::uint64_t seed = 1);

}  // namespace shortck

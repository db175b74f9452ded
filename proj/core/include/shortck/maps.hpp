#pragma once

// Automorphism steps with exact inverses, coefficient sequences, and the
// composed iteration F(n) = F_n o ... o F_0 (zero-based throughout).

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shortck/num.hpp"

namespace shortck {

inline constexpr std::size_t kMaxDim = 8;

/// Point of C^k, k <= kMaxDim, held by value.
class CPoint {
 public:
  CPoint() = default;
  explicit CPoint(std::size_t dim);
  CPoint(std::initializer_list<std::complex<double>> coords);

  static CPoint from_native(std::span<const std::complex<double>> coords);
  std::vector<std::complex<double>> to_native() const;

  std::size_t size() const { return dim_; }
  ExtComplex& operator[](std::size_t i) { return c_[i]; }
  const ExtComplex& operator[](std::size_t i) const { return c_[i]; }

  bool has_overflow() const;
  bool is_zero() const;

  /// Euclidean norm on C^k.
  ExtReal norm() const;
  /// max_i |z_i|
  ExtReal sup_norm() const;

  friend CPoint operator+(const CPoint& a, const CPoint& b);
  friend CPoint operator-(const CPoint& a, const CPoint& b);
  friend CPoint operator*(const ExtComplex& s, const CPoint& b);
  friend bool operator==(const CPoint& a, const CPoint& b);

 private:
  std::array<ExtComplex, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

/// Native Euclidean distance ||a-b|| (as a double; inf on overflow).
double distance(const CPoint& a, const CPoint& b);

/// Real polynomial c_0 + c_1 z + ... + c_d z^d, stored inline.
class PolySpec {
 public:
  static constexpr std::size_t kMaxCoeffs = 17;

  PolySpec() = default;
  explicit PolySpec(std::span<const double> coeffs);
  PolySpec(std::initializer_list<double> coeffs);

  std::size_t degree() const { return n_ == 0 ? 0 : n_ - 1; }
  std::span<const double> coeffs() const { return {c_.data(), n_}; }
  double c0() const { return n_ == 0 ? 0.0 : c_[0]; }

  ExtComplex eval(const ExtComplex& z) const;
  std::complex<double> eval(std::complex<double> z) const;
  /// sum |c_i| r^i, an upper bound of |P| on the closed disc of radius r.
  double abs_bound(double r) const;

  /// Throws std::invalid_argument unless c_0 > 0 and every c_i >= 0.
  void require_positive() const;

  friend bool operator==(const PolySpec& a, const PolySpec& b);

 private:
  std::array<double, kMaxCoeffs> c_{};
  std::size_t n_ = 0;
};

/// a_n stored as natural logarithms.
struct ExplicitCoeffs {
  std::vector<double> log_values;
};

/// log a_n = -K * g^n.
struct GeneratorCoeffs {
  double K = 1.0;
  double g = 3.0;
};

class CoeffSequence {
 public:
  CoeffSequence() = default;
  CoeffSequence(ExplicitCoeffs e) : rep_(std::move(e)) {}
  CoeffSequence(GeneratorCoeffs g) : rep_(g) {}

  static CoeffSequence generator(double K, double g) { return GeneratorCoeffs{K, g}; }
  static CoeffSequence explicit_logs(std::vector<double> logs) { return ExplicitCoeffs{std::move(logs)}; }
  static CoeffSequence explicit_values(std::span<const double> values);

  /// log a_n. Past the end of an explicit list the sequence continues by
  /// cubing (log a_{n+1} = 3 log a_n), which keeps a_{n+1} < a_n^2.
  LogMag log_a(std::size_t n) const;
  ExtReal a(std::size_t n) const { return ExtReal::from_log(log_a(n)); }

  bool is_generator() const { return std::holds_alternative<GeneratorCoeffs>(rep_); }
  const GeneratorCoeffs* as_generator() const { return std::get_if<GeneratorCoeffs>(&rep_); }
  const ExplicitCoeffs* as_explicit() const { return std::get_if<ExplicitCoeffs>(&rep_); }

 private:
  std::variant<GeneratorCoeffs, ExplicitCoeffs> rep_{GeneratorCoeffs{}};
};

namespace step {

/// (z_1^d P(z_1) + a z_k, a z_1, ..., a z_{k-1}); k = 2 is the planar family.
struct ShiftLike {
  ExtReal a;
  PolySpec P;
  std::size_t k = 2;
  int d = 2;
};

/// (a z_2 + p(z_1), a z_1)
struct HenonLike {
  ExtReal a;
  PolySpec p;
};

/// (z_1 + z_2, (1 - z_2 - e^{z_1+z_2}) / 2), conjugated by the translation to
/// its attracting fixed point (2 pi i m, 0). The map commutes with that
/// translation, so the conjugate has the same formula.
struct RosayRudin {
  long center_index = 0;
};

/// z -> alpha z
struct DiagLinear {
  double alpha = 0.5;
  std::size_t k = 2;
};

struct CustomMaps {
  std::size_t k = 2;
  std::function<CPoint(const CPoint&)> forward;
  std::function<CPoint(const CPoint&)> inverse;  // may be empty
};

struct Custom {
  std::shared_ptr<const CustomMaps> maps;
};

}  // namespace step

using AutoStep =
    std::variant<step::ShiftLike, step::HenonLike, step::RosayRudin, step::DiagLinear, step::Custom>;

std::size_t dimension(const AutoStep& s);

/// Throws std::invalid_argument on dimension mismatch.
CPoint apply(const AutoStep& s, const CPoint& z);
/// Throws std::invalid_argument on dimension mismatch and
/// std::logic_error for a Custom step without an inverse.
CPoint apply_inverse(const AutoStep& s, const CPoint& w);

/// D(step)(z) v for the families with a closed-form derivative; nullopt for
/// Custom steps.
std::optional<CPoint> tangent(const AutoStep& s, const CPoint& z, const CPoint& v);

enum class Family { ShiftLike, HenonLike, RosayRudin, DiagLinear, Custom };

const char* family_name(Family f);

/// Lazily indexed, immutable sequence of steps.
class MapSequence {
 public:
  using Generator = std::function<AutoStep(std::size_t)>;

  MapSequence(std::size_t k, Family family, Generator gen);

  static MapSequence shift_like(CoeffSequence coeffs, PolySpec P, std::size_t k = 2);
  static MapSequence henon_like(CoeffSequence coeffs, PolySpec p);
  static MapSequence constant(AutoStep s);

  AutoStep step_at(std::size_t n) const { return gen_(n); }
  std::size_t dimension() const { return k_; }
  Family family() const { return family_; }

  /// Set for ShiftLike and HenonLike sequences.
  const std::optional<CoeffSequence>& coefficients() const { return coeffs_; }
  /// The P of the shift-like family (z_1^2 P(z_1)); for HenonLike this is
  /// p / z^2 when p(0) = p'(0) = 0.
  const std::optional<PolySpec>& quadratic_factor() const { return quad_; }

 private:
  std::size_t k_;
  Family family_;
  Generator gen_;
  std::optional<CoeffSequence> coeffs_;
  std::optional<PolySpec> quad_;
};

/// [z, F(0)(z), ..., F(n)(z)]
std::vector<CPoint> forward_orbit(const MapSequence& seq, const CPoint& z, std::size_t n);

/// F(n)(z) = F_n o ... o F_0 (z)
CPoint compose(const MapSequence& seq, const CPoint& z, std::size_t n);
/// F(n)^{-1}(w), inverting F_n first.
CPoint compose_inverse(const MapSequence& seq, const CPoint& w, std::size_t n);

struct SequenceCheck {
  std::size_t n = 0;
  double log_a = 0.0;
  bool below_one = false;          // a_n < 1
  bool below_square = false;       // a_{n+1} < a_n^2
  double root_log = 0.0;           // 2^-n log a_n
};

struct SequenceReport {
  std::vector<SequenceCheck> rows;
  bool decay_ok = false;       // 0 < a_{n+1} < a_n^2 < 1 on every checked n
  bool root_decay_ok = false;  // 2^-n log a_n -> -inf
  bool passed() const { return decay_ok && root_decay_ok; }
  std::string summary() const;
};

/// Checks both coefficient constraints of the planar family in the log domain.
/// Generators pass root decay iff g > 2; explicit lists are checked for a
/// strictly decreasing 2^-n log a_n on the stored prefix.
SequenceReport validate_sequence(const CoeffSequence& c, std::size_t n_max);

}  // namespace shortck

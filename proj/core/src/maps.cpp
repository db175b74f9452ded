#include "shortck/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace shortck {

// ---------------------------------------------------------------- CPoint

CPoint::CPoint(std::size_t dim) : dim_(dim) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("CPoint: dimension out of range");
}

CPoint::CPoint(std::initializer_list<std::complex<double>> coords) : CPoint(coords.size()) {
  std::size_t i = 0;
  for (auto z : coords) c_[i++] = ExtComplex::from_native(z);
}

CPoint CPoint::from_native(std::span<const std::complex<double>> coords) {
  CPoint p(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) p.c_[i] = ExtComplex::from_native(coords[i]);
  return p;
}

std::vector<std::complex<double>> CPoint::to_native() const {
  std::vector<std::complex<double>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = c_[i].to_native();
  return out;
}

bool CPoint::has_overflow() const {
  return std::any_of(c_.begin(), c_.begin() + dim_, [](const ExtComplex& z) { return z.is_overflow(); });
}

bool CPoint::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](const ExtComplex& z) { return z.is_zero(); });
}

ExtReal CPoint::norm() const {
  if (has_overflow()) return ExtReal::overflowed();
  // Scale by the largest modulus so the sum of squares stays in range.
  const ExtReal top = sup_norm();
  if (top.is_zero()) return {};
  double acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double r = (c_[i].modulus() / top).to_native();
    acc += r * r;
  }
  return ExtReal::from_native(std::sqrt(acc)) * top;
}

ExtReal CPoint::sup_norm() const {
  ExtReal best;
  for (std::size_t i = 0; i < dim_; ++i) {
    const ExtReal m = c_[i].modulus();
    if (m > best) best = m;
  }
  return best;
}

CPoint operator+(const CPoint& a, const CPoint& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("CPoint: dimension mismatch");
  CPoint r(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

CPoint operator-(const CPoint& a, const CPoint& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("CPoint: dimension mismatch");
  CPoint r(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

CPoint operator*(const ExtComplex& s, const CPoint& b) {
  CPoint r(b.dim_);
  for (std::size_t i = 0; i < b.dim_; ++i) r.c_[i] = s * b.c_[i];
  return r;
}

bool operator==(const CPoint& a, const CPoint& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

double distance(const CPoint& a, const CPoint& b) { return (a - b).norm().to_native(); }

// -------------------------------------------------------------- PolySpec

PolySpec::PolySpec(std::span<const double> coeffs) {
  if (coeffs.size() > kMaxCoeffs) throw std::invalid_argument("PolySpec: degree too large");
  std::size_t n = coeffs.size();
  while (n > 1 && coeffs[n - 1] == 0.0) --n;
  std::copy_n(coeffs.begin(), n, c_.begin());
  n_ = n;
}

PolySpec::PolySpec(std::initializer_list<double> coeffs)
    : PolySpec(std::span<const double>(coeffs.begin(), coeffs.size())) {}

ExtComplex PolySpec::eval(const ExtComplex& z) const {
  if (n_ == 0) return {};
  ExtComplex acc = ExtComplex::from_native(c_[n_ - 1]);
  for (std::size_t i = n_ - 1; i-- > 0;) acc = acc * z + ExtComplex::from_native(c_[i]);
  return acc;
}

std::complex<double> PolySpec::eval(std::complex<double> z) const {
  if (n_ == 0) return {};
  std::complex<double> acc = c_[n_ - 1];
  for (std::size_t i = n_ - 1; i-- > 0;) acc = acc * z + c_[i];
  return acc;
}

double PolySpec::abs_bound(double r) const {
  double acc = 0.0;
  for (std::size_t i = n_; i-- > 0;) acc = acc * r + std::fabs(c_[i]);
  return acc;
}

void PolySpec::require_positive() const {
  if (n_ == 0 || !(c_[0] > 0.0))
    throw std::invalid_argument("PolySpec: constant coefficient c0 must be > 0");
  for (std::size_t i = 0; i < n_; ++i)
    if (c_[i] < 0.0) throw std::invalid_argument("PolySpec: coefficients must be non-negative");
}

bool operator==(const PolySpec& a, const PolySpec& b) {
  return a.n_ == b.n_ && std::equal(a.c_.begin(), a.c_.begin() + a.n_, b.c_.begin());
}

// --------------------------------------------------------- CoeffSequence

CoeffSequence CoeffSequence::explicit_values(std::span<const double> values) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("CoeffSequence: values must be positive");
    logs.push_back(std::log(v));
  }
  return explicit_logs(std::move(logs));
}

LogMag CoeffSequence::log_a(std::size_t n) const {
  if (const auto* g = std::get_if<GeneratorCoeffs>(&rep_)) {
    return {-g->K * std::pow(g->g, static_cast<double>(n))};
  }
  const auto& list = std::get<ExplicitCoeffs>(rep_).log_values;
  if (list.empty()) throw std::logic_error("CoeffSequence: empty explicit list");
  if (n < list.size()) return {list[n]};
  double v = list.back();
  for (std::size_t i = list.size() - 1; i < n && std::isfinite(v); ++i) v *= 3.0;
  return {v};
}

// ---------------------------------------------------------------- steps

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_dim(const CPoint& z, std::size_t k) {
  if (z.size() != k) throw std::invalid_argument("step: point dimension does not match the step");
}

ExtComplex pow_int(const ExtComplex& z, int d) {
  ExtComplex r = ExtComplex::from_native(1.0);
  for (int i = 0; i < d; ++i) r = r * z;
  return r;
}

std::complex<double> rr_exp(const ExtComplex& s) {
  const std::complex<double> v = s.to_native();
  return std::exp(v);
}

}  // namespace

std::size_t dimension(const AutoStep& s) {
  return std::visit(Overloaded{
                        [](const step::ShiftLike& m) { return m.k; },
                        [](const step::HenonLike&) { return std::size_t{2}; },
                        [](const step::RosayRudin&) { return std::size_t{2}; },
                        [](const step::DiagLinear& m) { return m.k; },
                        [](const step::Custom& m) { return m.maps->k; },
                    },
                    s);
}

CPoint apply(const AutoStep& s, const CPoint& z) {
  return std::visit(
      Overloaded{
          [&](const step::ShiftLike& m) {
            require_dim(z, m.k);
            CPoint w(m.k);
            w[0] = pow_int(z[0], m.d) * m.P.eval(z[0]) + m.a * z[m.k - 1];
            for (std::size_t i = 1; i < m.k; ++i) w[i] = m.a * z[i - 1];
            return w;
          },
          [&](const step::HenonLike& m) {
            require_dim(z, 2);
            CPoint w(2);
            w[0] = m.a * z[1] + m.p.eval(z[0]);
            w[1] = m.a * z[0];
            return w;
          },
          [&](const step::RosayRudin&) {
            require_dim(z, 2);
            // e^z is 2 pi i periodic, so the translated map needs no shift
            const ExtComplex s = z[0] + z[1];
            const std::complex<double> e = rr_exp(s);
            CPoint w(2);
            w[0] = s;
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
              w[1] = ExtComplex(ExtReal::overflowed(), ExtReal{});
            } else {
              const ExtReal half = ExtReal::from_native(0.5);
              w[1] = half * (ExtComplex::from_native(1.0) - z[1] - ExtComplex::from_native(e));
            }
            return w;
          },
          [&](const step::DiagLinear& m) {
            require_dim(z, m.k);
            return ExtComplex::from_native(m.alpha) * z;
          },
          [&](const step::Custom& m) {
            require_dim(z, m.maps->k);
            return m.maps->forward(z);
          },
      },
      s);
}

CPoint apply_inverse(const AutoStep& s, const CPoint& w) {
  return std::visit(
      Overloaded{
          [&](const step::ShiftLike& m) {
            require_dim(w, m.k);
            CPoint z(m.k);
            for (std::size_t i = 0; i + 1 < m.k; ++i) z[i] = w[i + 1] / m.a;
            z[m.k - 1] = (w[0] - pow_int(z[0], m.d) * m.P.eval(z[0])) / m.a;
            return z;
          },
          [&](const step::HenonLike& m) {
            require_dim(w, 2);
            CPoint z(2);
            z[0] = w[1] / m.a;
            z[1] = (w[0] - m.p.eval(z[0])) / m.a;
            return z;
          },
          [&](const step::RosayRudin&) {
            require_dim(w, 2);
            const std::complex<double> e = rr_exp(w[0]);
            CPoint z(2);
            // z_1 + z_2 = w_1 and 2 w_2 = 1 - z_2 - e^{w_1}
            const ExtReal two = ExtReal::from_native(2.0);
            z[1] = ExtComplex::from_native(1.0) - ExtComplex::from_native(e) - two * w[1];
            z[0] = w[0] - z[1];
            return z;
          },
          [&](const step::DiagLinear& m) {
            require_dim(w, m.k);
            return ExtComplex::from_native(1.0 / m.alpha) * w;
          },
          [&](const step::Custom& m) {
            require_dim(w, m.maps->k);
            if (!m.maps->inverse) throw std::logic_error("apply_inverse: custom step has no inverse");
            return m.maps->inverse(w);
          },
      },
      s);
}

namespace {

// P'(z) by Horner on the derived coefficients.
ExtComplex poly_derivative(const PolySpec& P, const ExtComplex& z) {
  const auto c = P.coeffs();
  ExtComplex r;
  for (std::size_t i = c.size(); i-- > 1;)
    r = r * z + ExtComplex::from_native(static_cast<double>(i) * c[i]);
  return r;
}

}  // namespace

std::optional<CPoint> tangent(const AutoStep& s, const CPoint& z, const CPoint& v) {
  if (v.size() != z.size()) throw std::invalid_argument("tangent: vector dimension does not match the point");
  return std::visit(
      Overloaded{
          [&](const step::ShiftLike& m) -> std::optional<CPoint> {
            require_dim(z, m.k);
            const ExtComplex zd1 = pow_int(z[0], m.d - 1);
            const ExtComplex dfirst = ExtComplex::from_native(static_cast<double>(m.d)) * zd1 * m.P.eval(z[0]) +
                                      zd1 * z[0] * poly_derivative(m.P, z[0]);
            CPoint w(m.k);
            w[0] = dfirst * v[0] + m.a * v[m.k - 1];
            for (std::size_t i = 1; i < m.k; ++i) w[i] = m.a * v[i - 1];
            return w;
          },
          [&](const step::HenonLike& m) -> std::optional<CPoint> {
            require_dim(z, 2);
            CPoint w(2);
            w[0] = m.a * v[1] + poly_derivative(m.p, z[0]) * v[0];
            w[1] = m.a * v[0];
            return w;
          },
          [&](const step::RosayRudin&) -> std::optional<CPoint> {
            require_dim(z, 2);
            const ExtComplex e = ExtComplex::from_native(rr_exp(z[0] + z[1]));
            const ExtComplex sv = v[0] + v[1];
            CPoint w(2);
            w[0] = sv;
            w[1] = ExtReal::from_native(-0.5) * (v[1] + e * sv);
            return w;
          },
          [&](const step::DiagLinear& m) -> std::optional<CPoint> {
            require_dim(z, m.k);
            return ExtComplex::from_native(m.alpha) * v;
          },
          [&](const step::Custom&) -> std::optional<CPoint> { return std::nullopt; },
      },
      s);
}

const char* family_name(Family f) {
  switch (f) {
    case Family::ShiftLike: return "shiftlike";
    case Family::HenonLike: return "henon";
    case Family::RosayRudin: return "rosayrudin";
    case Family::DiagLinear: return "diaglinear";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

// ----------------------------------------------------------- MapSequence

MapSequence::MapSequence(std::size_t k, Family family, Generator gen)
    : k_(k), family_(family), gen_(std::move(gen)) {
  if (k < 2 || k > kMaxDim) throw std::invalid_argument("MapSequence: dimension must be in [2, kMaxDim]");
}

MapSequence MapSequence::shift_like(CoeffSequence coeffs, PolySpec P, std::size_t k) {
  MapSequence seq(k, Family::ShiftLike, [coeffs, P, k](std::size_t n) -> AutoStep {
    return step::ShiftLike{coeffs.a(n), P, k, 2};
  });
  seq.coeffs_ = coeffs;
  seq.quad_ = P;
  return seq;
}

MapSequence MapSequence::henon_like(CoeffSequence coeffs, PolySpec p) {
  MapSequence seq(2, Family::HenonLike,
                  [coeffs, p](std::size_t n) -> AutoStep { return step::HenonLike{coeffs.a(n), p}; });
  seq.coeffs_ = coeffs;
  const auto c = p.coeffs();
  if (c.size() >= 3 && c[0] == 0.0 && c[1] == 0.0) seq.quad_ = PolySpec(c.subspan(2));
  return seq;
}

MapSequence MapSequence::constant(AutoStep s) {
  const std::size_t k = shortck::dimension(s);
  const Family f = std::visit(Overloaded{
                                  [](const step::ShiftLike&) { return Family::ShiftLike; },
                                  [](const step::HenonLike&) { return Family::HenonLike; },
                                  [](const step::RosayRudin&) { return Family::RosayRudin; },
                                  [](const step::DiagLinear&) { return Family::DiagLinear; },
                                  [](const step::Custom&) { return Family::Custom; },
                              },
                              s);
  return MapSequence(k, f, [s](std::size_t) { return s; });
}

std::vector<CPoint> forward_orbit(const MapSequence& seq, const CPoint& z, std::size_t n) {
  std::vector<CPoint> out;
  out.reserve(n + 2);
  out.push_back(z);
  CPoint cur = z;
  for (std::size_t i = 0; i <= n; ++i) {
    cur = shortck::apply(seq.step_at(i), cur);
    out.push_back(cur);
  }
  return out;
}

CPoint compose(const MapSequence& seq, const CPoint& z, std::size_t n) {
  CPoint cur = z;
  for (std::size_t i = 0; i <= n; ++i) cur = shortck::apply(seq.step_at(i), cur);
  return cur;
}

CPoint compose_inverse(const MapSequence& seq, const CPoint& w, std::size_t n) {
  CPoint cur = w;
  for (std::size_t i = n + 1; i-- > 0;) cur = apply_inverse(seq.step_at(i), cur);
  return cur;
}

// ------------------------------------------------------------ validation

std::string SequenceReport::summary() const {
  std::ostringstream os;
  os << "decay " << (decay_ok ? "ok" : "VIOLATED") << ", root-decay " << (root_decay_ok ? "ok" : "VIOLATED")
     << " over " << rows.size() << " terms";
  return os.str();
}

SequenceReport validate_sequence(const CoeffSequence& c, std::size_t n_max) {
  SequenceReport rep;
  rep.decay_ok = true;
  double prev_root = std::numeric_limits<double>::infinity();
  bool root_strict = true;
  std::size_t checked = n_max;
  if (const auto* e = c.as_explicit()) checked = std::min(n_max, e->log_values.size() - 1);
  for (std::size_t n = 0; n <= checked; ++n) {
    SequenceCheck row;
    row.n = n;
    row.log_a = c.log_a(n).value;
    const double next = c.log_a(n + 1).value;
    row.below_one = row.log_a < 0.0;
    row.below_square = next < 2.0 * row.log_a;
    row.root_log = std::ldexp(row.log_a, -static_cast<int>(n));
    // The last explicit entry has no stored successor; only a_n < 1 applies.
    const bool has_successor = !c.as_explicit() || n + 1 < c.as_explicit()->log_values.size();
    if (!row.below_one || (has_successor && !row.below_square)) rep.decay_ok = false;
    if (!(row.root_log < prev_root)) root_strict = false;
    prev_root = row.root_log;
    rep.rows.push_back(row);
  }
  if (const auto* g = c.as_generator()) {
    rep.root_decay_ok = g->K > 0.0 && g->g > 2.0;
  } else {
    rep.root_decay_ok = root_strict;
  }
  return rep;
}

}  // namespace shortck

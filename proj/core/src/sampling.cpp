#include "shortck/sampling.hpp"

#include <cmath>
#include <random>

namespace shortck {

namespace {

std::vector<std::complex<double>> random_direction(std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::complex<double>> v(k);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& z : v) {
      z = {g(rng), g(rng)};
      n2 += std::norm(z);
    }
  } while (n2 < 1e-20);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<CPoint> sphere_samples(std::size_t k, double radius, std::size_t random_count, std::uint64_t seed) {
  std::vector<CPoint> out;
  out.reserve(4 * k + 1 + random_count);
  const std::complex<double> units[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (std::size_t j = 0; j < k; ++j) {
    for (auto u : units) {
      std::vector<std::complex<double>> v(k);
      v[j] = radius * u;
      out.push_back(CPoint::from_native(v));
    }
  }
  {
    std::vector<std::complex<double>> v(k, radius / std::sqrt(static_cast<double>(k)));
    out.push_back(CPoint::from_native(v));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) {
    auto v = random_direction(k, rng);
    for (auto& z : v) z *= radius;
    out.push_back(CPoint::from_native(v));
  }
  return out;
}

std::vector<CPoint> shell_samples(std::size_t k, double radius, std::size_t levels, std::size_t per_level,
                                  std::uint64_t seed) {
  std::vector<CPoint> out;
  double r = radius;
  for (std::size_t l = 0; l < levels; ++l, r *= 0.5) {
    auto s = sphere_samples(k, r, per_level, mix_seed(seed, l));
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::vector<CPoint> ball_samples(const CPoint& center, double radius, std::size_t count, std::uint64_t seed) {
  const std::size_t k = center.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto c = center.to_native();
  std::vector<CPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto v = random_direction(k, rng);
    const double s = radius * std::pow(u(rng), 1.0 / static_cast<double>(2 * k));
    for (std::size_t j = 0; j < k; ++j) v[j] = c[j] + s * v[j];
    out.push_back(CPoint::from_native(v));
  }
  return out;
}

}  // namespace shortck

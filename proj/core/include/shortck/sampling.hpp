#pragma once

// Deterministic sample clouds in C^k.

#include <cstdint>
#include <vector>

#include "shortck/maps.hpp"

namespace shortck {

/// Points on the sphere of the given radius in C^k: the 4k axis points
/// (+-e_j, +-i e_j), the normalized diagonal, then `random_count` seeded
/// uniform directions.
std::vector<CPoint> sphere_samples(std::size_t k, double radius, std::size_t random_count, std::uint64_t seed);

/// Sphere samples at radius * {1, 1/2, 1/4, ...} (`levels` radii).
std::vector<CPoint> shell_samples(std::size_t k, double radius, std::size_t levels, std::size_t per_level,
                                  std::uint64_t seed);

/// Uniform samples from the open ball B(center; radius).
std::vector<CPoint> ball_samples(const CPoint& center, double radius, std::size_t count, std::uint64_t seed);

/// SplitMix64 finalizer; mixes seeds for per-item streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace shortck

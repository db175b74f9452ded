#pragma once

// Manifests, content hashes and binary PGM/PBM writers.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shortck/basin.hpp"
#include "shortck/gridset.hpp"

namespace shortck {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t h);

/// "%.17g", so that doubles survive a text round trip.
std::string format_double(double x);

/// Ordered key=value text in [sections]; keys keep insertion order.
class Manifest {
 public:
  void set(const std::string& section, const std::string& key, const std::string& value);
  void set(const std::string& section, const std::string& key, double value) { set(section, key, format_double(value)); }
  void set(const std::string& section, const std::string& key, std::size_t value) {
    set(section, key, std::to_string(value));
  }
  void set(const std::string& section, const std::string& key, bool value) { set(section, key, value ? "true" : "false"); }
  void set(const std::string& section, const std::string& key, const char* value) {
    set(section, key, std::string(value));
  }

  /// Empty string when absent.
  std::string get(const std::string& section, const std::string& key) const;
  void merge(const Manifest& other);

  std::string text() const;
  std::uint64_t hash() const { return fnv1a64(text()); }

 private:
  using Entries = std::vector<std::pair<std::string, std::string>>;
  std::vector<std::pair<std::string, Entries>> sections_;
};

/// Binary P5, rows as given (top row first), one comment line.
std::string pgm_bytes(std::size_t width, std::size_t height, const std::vector<std::uint8_t>& pixels,
                      const std::string& comment);
/// Binary P4 of a raster, highest Im row first; members are black.
std::string pbm_bytes(const GridSet& g, const std::string& comment);

/// Attracted: 0..100 darkening with log2 first_n; escaped: 155..255;
/// undecided: 128.
std::uint8_t fate_shade(const OrbitFate& f);
/// The fate raster as P5, highest row of the window first.
std::string fate_pgm(const FateGrid& g, const std::string& comment);

/// Throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace shortck

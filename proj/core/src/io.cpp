#include "shortck/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shortck {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void Manifest::set(const std::string& section, const std::string& key, const std::string& value) {
  if (value.find('\n') != std::string::npos) throw std::invalid_argument("Manifest: value for " + key + " spans lines");
  auto s = std::find_if(sections_.begin(), sections_.end(), [&](const auto& e) { return e.first == section; });
  if (s == sections_.end()) {
    sections_.push_back({section, {}});
    s = std::prev(sections_.end());
  }
  auto k = std::find_if(s->second.begin(), s->second.end(), [&](const auto& e) { return e.first == key; });
  if (k == s->second.end())
    s->second.push_back({key, value});
  else
    k->second = value;
}

std::string Manifest::get(const std::string& section, const std::string& key) const {
  for (const auto& [name, entries] : sections_)
    if (name == section)
      for (const auto& [k, v] : entries)
        if (k == key) return v;
  return {};
}

void Manifest::merge(const Manifest& other) {
  for (const auto& [name, entries] : other.sections_)
    for (const auto& [k, v] : entries) set(name, k, v);
}

std::string Manifest::text() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, entries] : sections_) {
    if (!first) os << '\n';
    first = false;
    os << '[' << name << "]\n";
    for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
  }
  return os.str();
}

std::string pgm_bytes(std::size_t width, std::size_t height, const std::vector<std::uint8_t>& pixels,
                      const std::string& comment) {
  if (pixels.size() != width * height) throw std::invalid_argument("pgm_bytes: pixel count does not match size");
  std::ostringstream os;
  os << "P5\n# " << comment << '\n' << width << ' ' << height << "\n255\n";
  os.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  return os.str();
}

std::string pbm_bytes(const GridSet& g, const std::string& comment) {
  std::ostringstream os;
  os << "P4\n# " << comment << '\n' << g.nx() << ' ' << g.ny() << '\n';
  const std::size_t row_bytes = (g.nx() + 7) / 8;
  std::string row(row_bytes, '\0');
  for (std::size_t jj = 0; jj < g.ny(); ++jj) {
    const std::size_t j = g.ny() - 1 - jj;
    std::fill(row.begin(), row.end(), '\0');
    for (std::size_t i = 0; i < g.nx(); ++i)
      if (g.get(i, j)) row[i / 8] = static_cast<char>(row[i / 8] | (0x80 >> (i % 8)));
    os << row;
  }
  return os.str();
}

std::uint8_t fate_shade(const OrbitFate& f) {
  const double depth = std::min(100.0, 12.0 * std::log2(static_cast<double>(f.n) + 1.0));
  switch (f.tag) {
    case FateTag::Attracted: return static_cast<std::uint8_t>(std::lround(depth));
    case FateTag::Escaped: return static_cast<std::uint8_t>(255 - std::lround(depth));
    case FateTag::Undecided: return 128;
  }
  return 128;
}

std::string fate_pgm(const FateGrid& g, const std::string& comment) {
  const std::size_t nx = g.window.nx, ny = g.window.ny;
  std::vector<std::uint8_t> px(nx * ny);
  for (std::size_t jj = 0; jj < ny; ++jj)
    for (std::size_t i = 0; i < nx; ++i) px[jj * nx + i] = fate_shade(g.at(i, ny - 1 - jj));
  return pgm_bytes(nx, ny, px, comment);
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace shortck

#pragma once

// Axis-aligned boolean rasters over a rectangle of C, with the morphology
// needed for Julia-set neighbourhoods and nested compact sets.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace shortck {

struct Rect {
  std::complex<double> center{0.0, 0.0};
  double width = 1.0;
  double height = 1.0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct PixelIndex {
  std::size_t i = 0;  // column, increasing with Re
  std::size_t j = 0;  // row, increasing with Im
};

class GridSet {
 public:
  GridSet() = default;
  GridSet(Rect rect, std::size_t nx, std::size_t ny);

  const Rect& rect() const { return rect_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return bits_.size(); }
  double dx() const { return rect_.width / static_cast<double>(nx_); }
  double dy() const { return rect_.height / static_cast<double>(ny_); }
  double pixel() const { return std::max(dx(), dy()); }

  bool get(std::size_t i, std::size_t j) const { return bits_[j * nx_ + i] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { bits_[j * nx_ + i] = v ? 1 : 0; }
  bool at(std::size_t idx) const { return bits_[idx] != 0; }
  void set_at(std::size_t idx, bool v = true) { bits_[idx] = v ? 1 : 0; }

  std::complex<double> center_of(std::size_t i, std::size_t j) const;
  std::optional<PixelIndex> pixel_of(std::complex<double> z) const;
  /// Membership of the pixel containing z; false outside the rectangle.
  bool contains(std::complex<double> z) const;

  std::size_t count() const;
  bool empty() const { return count() == 0; }

  bool same_geometry(const GridSet& o) const {
    return rect_ == o.rect_ && nx_ == o.nx_ && ny_ == o.ny_;
  }
  /// Throws std::invalid_argument when geometries differ.
  void require_same_geometry(const GridSet& o) const;

  GridSet complement() const;
  friend GridSet operator|(const GridSet& a, const GridSet& b);
  friend GridSet operator&(const GridSet& a, const GridSet& b);
  friend GridSet operator-(const GridSet& a, const GridSet& b);
  /// Subset test over identical geometry.
  bool subset_of(const GridSet& o) const;

  /// Pixel centres of the members, in row-major order.
  std::vector<std::complex<double>> points() const;
  /// Members with a 4-neighbour outside the set (or on the raster edge).
  std::vector<std::complex<double>> edge_points() const;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const GridSet& a, const GridSet& b) {
    return a.same_geometry(b) && a.bits_ == b.bits_;
  }

 private:
  Rect rect_{};
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Euclidean distance from every pixel centre to the nearest member centre,
/// in the rectangle's units (exact, separable squared-distance transform).
/// All entries are +inf when the set is empty.
std::vector<double> distance_to_set(const GridSet& g);

struct Dilation {
  GridSet set;
  bool subpixel = false;  // delta below half a pixel; set returned unchanged
};

/// Morphological dilation by the closed disc of radius delta >= 0.
Dilation dilate(const GridSet& g, double delta);

/// Connected components (4-connectivity); label -1 for non-members.
struct Components {
  std::vector<int> label;
  int count = 0;
  std::vector<bool> touches_border;
};
Components label_components(const GridSet& g);
GridSet component_mask(const GridSet& g, const Components& c, int label);

/// Max distance between member pixel centres (0 for fewer than two).
double diameter(const GridSet& g);

/// Rasterizes the image of the set under f: every member centre is mapped
/// and the target pixel is marked together with a square block of radius
/// `block_radius(centre)` pixels (at least one), so that whole-pixel images
/// are covered. Targets outside the rectangle are dropped.
template <class Map, class BlockRadius>
GridSet rasterize_image(const GridSet& src, Map&& f, BlockRadius&& block_radius) {
  GridSet out(src.rect(), src.nx(), src.ny());
  for (std::size_t j = 0; j < src.ny(); ++j) {
    for (std::size_t i = 0; i < src.nx(); ++i) {
      if (!src.get(i, j)) continue;
      const std::complex<double> z = src.center_of(i, j);
      const auto t = out.pixel_of(f(z));
      const long b = std::max<long>(1, static_cast<long>(block_radius(z)));
      if (!t) continue;
      const long ti = static_cast<long>(t->i), tj = static_cast<long>(t->j);
      for (long v = tj - b; v <= tj + b; ++v) {
        if (v < 0 || v >= static_cast<long>(out.ny())) continue;
        for (long u = ti - b; u <= ti + b; ++u) {
          if (u < 0 || u >= static_cast<long>(out.nx())) continue;
          out.set(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        }
      }
    }
  }
  return out;
}

}  // namespace shortck

#ifndef CBIR_CORE_IMAGE_HPP
#define CBIR_CORE_IMAGE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace cbir {

/// Decoded 8-bit RGB image, row-major, 3 bytes per pixel.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width*height*3 bytes

  RasterImage() = default;
  RasterImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

  const std::uint8_t* rgb(int x, int y) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  std::uint8_t* rgb(int x, int y) {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
};

/// 8-bit single-channel image, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;  // width*height bytes

  GrayImage() = default;
  GrayImage(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return values[static_cast<std::size_t>(y) * width + x];
  }
  /// Edge-clamped read: coordinates outside the frame are snapped to the border.
  std::uint8_t clamped(int x, int y) const {
    if (x < 0) x = 0;
    if (x >= width) x = width - 1;
    if (y < 0) y = 0;
    if (y >= height) y = height - 1;
    return at(x, y);
  }
};

/// Per-pixel boolean grid; "on" pixels are the white pixels of an edge/object map.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 0 or 1, row-major

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool at(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  std::size_t count_on() const {
    std::size_t n = 0;
    for (auto b : bits) n += b;
    return n;
  }
};

/// Real-valued pixel position (column x, row y).
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned pixel rectangle; (x0,y0) is the top-left corner.
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;

  std::int64_t area() const { return static_cast<std::int64_t>(w) * h; }
};

/// Decodes a JPEG or PNG file into an 8-bit RGB raster. Grayscale sources are
/// replicated across the three channels.
/// Throws FileNotFound, UnsupportedFormat or CorruptImage.
RasterImage decode_image(const std::filesystem::path& path);

}  // namespace cbir

#endif

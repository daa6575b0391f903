#include "core/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "core/error.hpp"

namespace cbir {

namespace {

std::uint8_t quantize(double v) {
  double r = std::lround(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    k[i + radius] = w;
    sum += w;
  }
  for (double& w : k) w /= sum;
  return k;
}

struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx, gy, mag;
};

// 3x3 Sobel with edge-clamped borders.
GradientField sobel_gradients(const GrayImage& img) {
  GradientField g;
  g.width = img.width;
  g.height = img.height;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  g.gx.resize(n);
  g.gy.resize(n);
  g.mag.resize(n);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double p00 = img.clamped(x - 1, y - 1), p01 = img.clamped(x, y - 1), p02 = img.clamped(x + 1, y - 1);
      const double p10 = img.clamped(x - 1, y), p12 = img.clamped(x + 1, y);
      const double p20 = img.clamped(x - 1, y + 1), p21 = img.clamped(x, y + 1), p22 = img.clamped(x + 1, y + 1);
      const double gx = (p02 + 2.0 * p12 + p22) - (p00 + 2.0 * p10 + p20);
      const double gy = (p20 + 2.0 * p21 + p22) - (p00 + 2.0 * p01 + p02);
      const std::size_t i = static_cast<std::size_t>(y) * img.width + x;
      g.gx[i] = gx;
      g.gy[i] = gy;
      g.mag[i] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

// Nearest-rank percentile of the nonzero magnitudes.
double nonzero_percentile(const std::vector<double>& mag, double pct) {
  std::vector<double> nz;
  nz.reserve(mag.size());
  for (double m : mag) {
    if (m > 0.0) nz.push_back(m);
  }
  if (nz.empty()) return 0.0;
  std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(nz.size())));
  std::size_t idx = rank == 0 ? 0 : std::min(rank - 1, nz.size() - 1);
  std::nth_element(nz.begin(), nz.begin() + static_cast<std::ptrdiff_t>(idx), nz.end());
  return nz[idx];
}

}  // namespace

GrayImage to_grayscale(const RasterImage& img) {
  GrayImage out(img.width, img.height);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* p = img.pixels.data() + i * 3;
    out.values[i] = quantize(0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]);
  }
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) {
    raise(ErrorCode::InvalidParameter, "gaussian_blur: sigma must be > 0");
  }
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);

  // Horizontal pass into a double buffer, vertical pass quantizes.
  std::vector<double> tmp(static_cast<std::size_t>(img.width) * img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += k[i + radius] * img.clamped(x + i, y);
      }
      tmp[static_cast<std::size_t>(y) * img.width + x] = acc;
    }
  }
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        int yy = std::clamp(y + i, 0, img.height - 1);
        acc += k[i + radius] * tmp[static_cast<std::size_t>(yy) * img.width + x];
      }
      out.at(x, y) = quantize(acc);
    }
  }
  return out;
}

BinaryMask sobel_edges(const GrayImage& img, double tau_s) {
  if (!(tau_s > 0.0) || !(tau_s < 1.0)) {
    raise(ErrorCode::InvalidParameter, "sobel_edges: tau_s must lie in (0,1)");
  }
  GradientField g = sobel_gradients(img);
  const double gmax = g.mag.empty() ? 0.0 : *std::max_element(g.mag.begin(), g.mag.end());
  BinaryMask out(img.width, img.height);
  if (gmax == 0.0) return out;
  for (std::size_t i = 0; i < g.mag.size(); ++i) {
    out.bits[i] = (g.mag[i] / gmax >= tau_s) ? 1 : 0;
  }
  return out;
}

BinaryMask canny_edges(const GrayImage& img, double sigma, double low_ratio, double high_pct) {
  if (!(low_ratio > 0.0) || !(low_ratio < 1.0)) {
    raise(ErrorCode::InvalidParameter, "canny_edges: low_ratio must lie in (0,1)");
  }
  if (!(high_pct > 0.0) || !(high_pct < 100.0)) {
    raise(ErrorCode::InvalidParameter, "canny_edges: high_pct must lie in (0,100)");
  }
  const GrayImage smooth = gaussian_blur(img, sigma);
  const GradientField g = sobel_gradients(smooth);
  const int w = img.width, h = img.height;

  auto mag_at = [&](int x, int y) -> double {
    if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
    return g.mag[static_cast<std::size_t>(y) * w + x];
  };

  // Non-maximum suppression along the quantized gradient direction. A
  // two-pixel plateau keeps exactly its first pixel (strict test against the
  // negative-side neighbour, non-strict against the positive side).
  std::vector<std::uint8_t> thin(static_cast<std::size_t>(w) * h, 0);
  constexpr double pi = std::numbers::pi;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = g.mag[i];
      if (m <= 0.0) continue;
      double angle = std::atan2(g.gy[i], g.gx[i]);
      if (angle < 0.0) angle += pi;
      int sector = static_cast<int>((angle + pi / 8.0) / (pi / 4.0)) & 3;
      int dx = 0, dy = 0;
      switch (sector) {
        case 0: dx = 1; dy = 0; break;
        case 1: dx = 1; dy = 1; break;
        case 2: dx = 0; dy = 1; break;
        case 3: dx = -1; dy = 1; break;
      }
      const double neg = mag_at(x - dx, y - dy);
      const double pos = mag_at(x + dx, y + dy);
      if (m > neg && m >= pos) thin[i] = 1;
    }
  }

  const double high = nonzero_percentile(g.mag, high_pct);
  const double low = low_ratio * high;
  BinaryMask out(w, h);
  if (high <= 0.0) return out;

  // Hysteresis: seed with strong pixels, grow through weak ones (8-connected).
  std::vector<std::size_t> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (thin[i] && g.mag[i] >= high) {
        out.bits[i] = 1;
        stack.push_back(i);
      }
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        if (!out.bits[j] && thin[j] && g.mag[j] >= low) {
          out.bits[j] = 1;
          stack.push_back(j);
        }
      }
    }
  }
  return out;
}

BinaryMask dilate_line_se(const BinaryMask& mask) {
  // (row, col) offsets of the four 3-pixel line structuring elements.
  static constexpr int kSe[4][3][2] = {
      {{0, -1}, {0, 0}, {0, 1}},    // 0 degrees
      {{-1, 1}, {0, 0}, {1, -1}},   // 45 degrees
      {{-1, 0}, {0, 0}, {1, 0}},    // 90 degrees
      {{-1, -1}, {0, 0}, {1, 1}},   // 135 degrees
  };
  BinaryMask out(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) continue;
      for (const auto& se : kSe) {
        for (const auto& off : se) {
          const int ny = y + off[0], nx = x + off[1];
          if (nx < 0 || nx >= mask.width || ny < 0 || ny >= mask.height) continue;
          out.set(nx, ny, true);
        }
      }
    }
  }
  return out;
}

BinaryMask fill_holes(const BinaryMask& mask) {
  const int w = mask.width, h = mask.height;
  std::vector<std::uint8_t> reached(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::size_t> stack;

  auto push_if_background = [&](int x, int y) {
    const std::size_t i = static_cast<std::size_t>(y) * w + x;
    if (!mask.bits[i] && !reached[i]) {
      reached[i] = 1;
      stack.push_back(i);
    }
  };
  for (int x = 0; x < w; ++x) {
    push_if_background(x, 0);
    push_if_background(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    push_if_background(0, y);
    push_if_background(w - 1, y);
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
    if (x > 0) push_if_background(x - 1, y);
    if (x + 1 < w) push_if_background(x + 1, y);
    if (y > 0) push_if_background(x, y - 1);
    if (y + 1 < h) push_if_background(x, y + 1);
  }

  BinaryMask out(w, h);
  for (std::size_t i = 0; i < out.bits.size(); ++i) {
    out.bits[i] = (mask.bits[i] || !reached[i]) ? 1 : 0;
  }
  return out;
}

std::optional<Point> centroid(const BinaryMask& mask) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
    }
  }
  if (n == 0) return std::nullopt;
  return Point{sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

}  // namespace cbir

#include "core/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>

#include "core/error.hpp"
#include "core/imaging.hpp"

namespace cbir {

namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

struct Hsv {
  double h;  // [0,360), meaningless when s == 0
  double s;  // [0,1]
  double v;  // [0,1]
};

Hsv rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
  const double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
  const double cmax = std::max({r, g, b});
  const double cmin = std::min({r, g, b});
  const double d = cmax - cmin;

  Hsv out{0.0, 0.0, cmax};
  if (cmax > 0.0) out.s = d / cmax;
  if (d > 0.0) {
    double h;
    if (cmax == r) {
      h = 60.0 * ((g - b) / d);
    } else if (cmax == g) {
      h = 60.0 * ((b - r) / d + 2.0);
    } else {
      h = 60.0 * ((r - g) / d + 4.0);
    }
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
  }
  return out;
}

int quantize_level(std::uint8_t g, int levels) {
  return static_cast<int>(g) * levels / 256;
}

}  // namespace

std::uint64_t params_fingerprint(const ExtractParams& p) {
  std::string canon = "cbir.v";
  canon += std::to_string(kFormatVersion);
  canon += "|tau_s=";
  append_number(canon, p.tau_s);
  canon += "|tau_r=";
  append_number(canon, p.tau_r);
  canon += "|levels=" + std::to_string(p.glcm_levels);
  canon += "|t_edge=";
  append_number(canon, p.t_edge);
  canon += "|sigma=";
  append_number(canon, p.sigma);
  canon += "|low_ratio=";
  append_number(canon, p.low_ratio);
  canon += "|high_pct=";
  append_number(canon, p.high_pct);
  canon += "|strips=" + std::to_string(p.strip_count);

  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void validate_params(const ExtractParams& p) {
  if (!(p.tau_s > 0.0 && p.tau_s < 1.0)) raise(ErrorCode::InvalidParameter, "tau_s must lie in (0,1)");
  if (!(p.tau_r > 0.0 && p.tau_r <= 1.0)) raise(ErrorCode::InvalidParameter, "tau_r must lie in (0,1]");
  if (p.glcm_levels < 2) raise(ErrorCode::InvalidParameter, "glcm_levels must be >= 2");
  if (!(p.t_edge >= 0.0)) raise(ErrorCode::InvalidParameter, "t_edge must be >= 0");
  if (!(p.sigma > 0.0)) raise(ErrorCode::InvalidParameter, "sigma must be > 0");
  if (!(p.low_ratio > 0.0 && p.low_ratio < 1.0)) raise(ErrorCode::InvalidParameter, "low_ratio must lie in (0,1)");
  if (!(p.high_pct > 0.0 && p.high_pct < 100.0)) raise(ErrorCode::InvalidParameter, "high_pct must lie in (0,100)");
  if (p.strip_count != kStripCount) raise(ErrorCode::InvalidParameter, "strip_count is fixed at 3");
  if (p.border_crop < 0) raise(ErrorCode::InvalidParameter, "border_crop must be >= 0");
}

ColorHistogram hsv_histogram(const RasterImage& img, const Rect& rect) {
  if (rect.w < 1 || rect.h < 1) {
    raise(ErrorCode::EmptyRect, "hsv_histogram: empty rect");
  }
  std::array<std::int64_t, kHueBins> hue{};
  std::array<std::int64_t, kSatBins> sat{};
  std::array<std::int64_t, kValBins> val{};
  for (int y = rect.y0; y < rect.y0 + rect.h; ++y) {
    for (int x = rect.x0; x < rect.x0 + rect.w; ++x) {
      const std::uint8_t* p = img.rgb(x, y);
      const Hsv hsv = rgb_to_hsv(p[0], p[1], p[2]);
      const int hb = (hsv.s == 0.0) ? 0 : std::min(static_cast<int>(hsv.h / 20.0), kHueBins - 1);
      const int sb = std::min(static_cast<int>(hsv.s * kSatBins), kSatBins - 1);
      const int vb = std::min(static_cast<int>(hsv.v * kValBins), kValBins - 1);
      ++hue[hb];
      ++sat[sb];
      ++val[vb];
    }
  }
  const double n = static_cast<double>(rect.area());
  ColorHistogram out;
  for (int i = 0; i < kHueBins; ++i) out.bins[i] = hue[i] / n;
  for (int i = 0; i < kSatBins; ++i) out.bins[kHueBins + i] = sat[i] / n;
  for (int i = 0; i < kValBins; ++i) out.bins[kHueBins + kSatBins + i] = val[i] / n;
  return out;
}

std::vector<double> glcm(const GrayImage& img, const Rect& rect, int levels,
                         std::pair<int, int> offset) {
  if (rect.w < 1 || rect.h < 1) {
    raise(ErrorCode::RectTooSmall, "glcm: empty rect");
  }
  if (levels < 2) {
    raise(ErrorCode::InvalidParameter, "glcm: levels must be >= 2");
  }
  const auto [dr, dc] = offset;
  std::vector<double> m(static_cast<std::size_t>(levels) * levels, 0.0);
  std::int64_t total = 0;
  for (int y = rect.y0; y < rect.y0 + rect.h; ++y) {
    const int py = y + dr;
    if (py < rect.y0 || py >= rect.y0 + rect.h) continue;
    for (int x = rect.x0; x < rect.x0 + rect.w; ++x) {
      const int px = x + dc;
      if (px < rect.x0 || px >= rect.x0 + rect.w) continue;
      const int qi = quantize_level(img.at(x, y), levels);
      const int qj = quantize_level(img.at(px, py), levels);
      m[static_cast<std::size_t>(qi) * levels + qj] += 1.0;
      ++total;
    }
  }
  if (total > 0) {
    for (double& v : m) v /= static_cast<double>(total);
  }
  return m;
}

TextureVector glcm_features(const GrayImage& img, const Rect& rect, int levels) {
  if (rect.w < 2 || rect.h < 2) {
    raise(ErrorCode::RectTooSmall, "glcm_features: rect must be at least 2x2");
  }
  if (levels < 2) {
    raise(ErrorCode::InvalidParameter, "glcm_features: levels must be >= 2");
  }

  const std::size_t cells = static_cast<std::size_t>(levels) * levels;
  std::vector<double> avg(cells, 0.0);
  TextureVector out;

  for (int dir = 0; dir < 4; ++dir) {
    const std::vector<double> p = glcm(img, rect, levels, kGlcmOffsets[dir]);
    for (std::size_t i = 0; i < cells; ++i) avg[i] += p[i];

    double contrast = 0.0, energy = 0.0, homogeneity = 0.0;
    double mu_i = 0.0, mu_j = 0.0;
    for (int i = 0; i < levels; ++i) {
      for (int j = 0; j < levels; ++j) {
        const double v = p[static_cast<std::size_t>(i) * levels + j];
        contrast += (i - j) * (i - j) * v;
        energy += v * v;
        homogeneity += v / (1.0 + std::abs(i - j));
        mu_i += i * v;
        mu_j += j * v;
      }
    }
    double var_i = 0.0, var_j = 0.0, cov = 0.0;
    int rows_with_mass = 0, cols_with_mass = 0;
    for (int i = 0; i < levels; ++i) {
      bool row_mass = false, col_mass = false;
      for (int j = 0; j < levels; ++j) {
        const double v = p[static_cast<std::size_t>(i) * levels + j];
        var_i += (i - mu_i) * (i - mu_i) * v;
        var_j += (j - mu_j) * (j - mu_j) * v;
        cov += (i - mu_i) * (j - mu_j) * v;
        if (v > 0.0) row_mass = true;
        if (p[static_cast<std::size_t>(j) * levels + i] > 0.0) col_mass = true;
      }
      if (row_mass) ++rows_with_mass;
      if (col_mass) ++cols_with_mass;
    }
    // A marginal concentrated on one level has zero variance by definition;
    // deciding it from the support keeps the convention exact.
    double correlation = 0.0;
    if (rows_with_mass > 1 && cols_with_mass > 1) {
      correlation = cov / (std::sqrt(var_i) * std::sqrt(var_j));
      correlation = std::clamp(correlation, -1.0, 1.0);
    }

    const double contrast_bound = static_cast<double>(levels - 1) * (levels - 1);
    out.features[0 * 4 + dir] = contrast / contrast_bound;
    out.features[1 * 4 + dir] = energy;
    out.features[2 * 4 + dir] = (correlation + 1.0) / 2.0;
    out.features[3 * 4 + dir] = homogeneity;
  }

  double entropy = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double q = avg[i] / 4.0;
    if (q > 0.0) entropy -= q * std::log2(q);
  }
  out.features[16] = entropy / std::log2(static_cast<double>(levels) * levels);
  return out;
}

EdgeHistogram ehd(const GrayImage& img, double t_edge) {
  if (img.width < 8 || img.height < 8) {
    raise(ErrorCode::ImageTooSmall, "ehd: image must be at least 8x8");
  }
  EdgeHistogram out;
  const double sqrt2 = std::sqrt(2.0);

  const int sw = img.width / 4, sh = img.height / 4;
  for (int sr = 0; sr < 4; ++sr) {
    for (int sc = 0; sc < 4; ++sc) {
      const int sx = sc * sw, sy = sr * sh;
      const int subw = (sc == 3) ? img.width - 3 * sw : sw;
      const int subh = (sr == 3) ? img.height - 3 * sh : sh;
      const int bw = subw / 8, bh = subh / 8;
      double* bins = out.bins.data() + (sr * 4 + sc) * kEhdEdgeTypes;
      if (bw < 2 || bh < 2) continue;  // quadrant means undefined; bins stay 0

      for (int by = 0; by < 8; ++by) {
        for (int bx = 0; bx < 8; ++bx) {
          const int x0 = sx + bx * bw, y0 = sy + by * bh;
          const int hw = bw / 2, hh = bh / 2;

          // Integer quadrant sums and pixel counts; responses are exact
          // integer combinations over the common denominator, so they are
          // bit-identical under intensity negation and constant shifts.
          std::int64_t sum[4] = {0, 0, 0, 0};
          for (int y = y0; y < y0 + bh; ++y) {
            const bool bottom = (y - y0) >= hh;
            for (int x = x0; x < x0 + bw; ++x) {
              const bool right = (x - x0) >= hw;
              sum[(bottom ? 2 : 0) + (right ? 1 : 0)] += img.at(x, y);
            }
          }
          const std::int64_t n0 = static_cast<std::int64_t>(hw) * hh;
          const std::int64_t n1 = static_cast<std::int64_t>(bw - hw) * hh;
          const std::int64_t n2 = static_cast<std::int64_t>(hw) * (bh - hh);
          const std::int64_t n3 = static_cast<std::int64_t>(bw - hw) * (bh - hh);
          const std::int64_t denom = n0 * n1 * n2 * n3;
          const std::int64_t a0 = sum[0] * (denom / n0);
          const std::int64_t a1 = sum[1] * (denom / n1);
          const std::int64_t a2 = sum[2] * (denom / n2);
          const std::int64_t a3 = sum[3] * (denom / n3);

          const double inv = 1.0 / static_cast<double>(denom);
          const double resp[kEhdEdgeTypes] = {
              std::abs(static_cast<double>(a0 - a1 + a2 - a3)) * inv,           // vertical
              std::abs(static_cast<double>(a0 + a1 - a2 - a3)) * inv,           // horizontal
              sqrt2 * std::abs(static_cast<double>(a0 - a3)) * inv,             // 45
              sqrt2 * std::abs(static_cast<double>(a1 - a2)) * inv,             // 135
              2.0 * std::abs(static_cast<double>(a0 - a1 - a2 + a3)) * inv,     // non-directional
          };
          int best = 0;
          for (int t = 1; t < kEhdEdgeTypes; ++t) {
            if (resp[t] > resp[best]) best = t;
          }
          if (resp[best] >= t_edge) bins[best] += 1.0;
        }
      }
      for (int t = 0; t < kEhdEdgeTypes; ++t) bins[t] /= 64.0;
    }
  }
  return out;
}

RegionDescriptor region_descriptor(const RasterImage& img, const GrayImage& gray,
                                   const Rect& rect, double significance, int cell_index,
                                   int levels) {
  const ColorHistogram color = hsv_histogram(img, rect);
  const TextureVector texture = glcm_features(gray, rect, levels);
  RegionDescriptor out;
  std::copy(color.bins.begin(), color.bins.end(), out.feature.begin());
  std::copy(texture.features.begin(), texture.features.end(), out.feature.begin() + kColorDims);
  out.significance = significance;
  out.cell_index = cell_index;
  return out;
}

namespace {

std::vector<RegionDescriptor> roi_descriptors(const RasterImage& img, const GrayImage& gray,
                                              const BinaryMask& mask, PartitionScheme scheme,
                                              const ExtractParams& params) {
  const std::vector<Rect> rects = partition(img.width, img.height, scheme);
  const RoiSet rois = select_rois(mask, rects, params.tau_r, scheme);
  std::vector<RegionDescriptor> out;
  out.reserve(rois.entries.size());
  for (std::size_t i = 0; i < rois.entries.size(); ++i) {
    const RoiEntry& e = rois.entries[i];
    out.push_back(region_descriptor(img, gray, rects[static_cast<std::size_t>(e.cell_index)],
                                    rois.significances[i], e.cell_index, params.glcm_levels));
  }
  return out;
}

}  // namespace

ImageSignature build_signature(const RasterImage& img, const ExtractParams& params) {
  validate_params(params);
  if (img.width < 8 || img.height < 8) {
    raise(ErrorCode::ImageTooSmall, "build_signature: image must be at least 8x8");
  }

  const GrayImage gray = to_grayscale(img);
  const BinaryMask mask = object_mask(gray, params.tau_s);

  ImageSignature sig;
  sig.grid_regions = roi_descriptors(img, gray, mask, PartitionScheme::Grid3x3, params);
  sig.h_regions = roi_descriptors(img, gray, mask, PartitionScheme::HorizontalStrips, params);
  sig.v_regions = roi_descriptors(img, gray, mask, PartitionScheme::VerticalStrips, params);

  const Point center = attention_center(img, params.border_crop, params.sigma,
                                        params.low_ratio, params.high_pct);
  const Rect central = central_block_rect(img.width, img.height, center);
  sig.central = region_descriptor(img, gray, central, 1.0, 0, params.glcm_levels).feature;

  sig.global_color = hsv_histogram(img, Rect{0, 0, img.width, img.height});
  sig.global_shape = ehd(gray, params.t_edge);
  sig.params_fingerprint = params_fingerprint(params);
  return sig;
}

}  // namespace cbir

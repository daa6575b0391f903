#include "core/regions.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/imaging.hpp"

namespace cbir {

std::vector<Rect> partition(int width, int height, PartitionScheme scheme) {
  if (width < 3 || height < 3) {
    raise(ErrorCode::ImageTooSmall, "partition: frame must be at least 3x3");
  }
  std::vector<Rect> rects;
  switch (scheme) {
    case PartitionScheme::Grid3x3: {
      const int cw = width / 3, ch = height / 3;
      rects.reserve(9);
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          Rect rect;
          rect.x0 = c * cw;
          rect.y0 = r * ch;
          rect.w = (c == 2) ? width - 2 * cw : cw;
          rect.h = (r == 2) ? height - 2 * ch : ch;
          rects.push_back(rect);
        }
      }
      break;
    }
    case PartitionScheme::HorizontalStrips: {
      const int ch = height / kStripCount;
      for (int r = 0; r < kStripCount; ++r) {
        const int h = (r == kStripCount - 1) ? height - (kStripCount - 1) * ch : ch;
        rects.push_back(Rect{0, r * ch, width, h});
      }
      break;
    }
    case PartitionScheme::VerticalStrips: {
      const int cw = width / kStripCount;
      for (int c = 0; c < kStripCount; ++c) {
        const int w = (c == kStripCount - 1) ? width - (kStripCount - 1) * cw : cw;
        rects.push_back(Rect{c * cw, 0, w, height});
      }
      break;
    }
  }
  return rects;
}

Point attention_center(const RasterImage& img, int border_crop, double sigma,
                       double low_ratio, double high_pct) {
  const bool crop = img.width > 2 * border_crop && img.height > 2 * border_crop;
  const int ox = crop ? border_crop : 0;
  const int oy = crop ? border_crop : 0;
  const int cw = crop ? img.width - 2 * border_crop : img.width;
  const int ch = crop ? img.height - 2 * border_crop : img.height;

  RasterImage cropped(cw, ch);
  for (int y = 0; y < ch; ++y) {
    const std::uint8_t* src = img.rgb(ox, oy + y);
    std::copy(src, src + static_cast<std::size_t>(cw) * 3, cropped.rgb(0, y));
  }

  const GrayImage gray = to_grayscale(cropped);
  const GrayImage smooth = gaussian_blur(gray, sigma);
  const BinaryMask edges = canny_edges(smooth, sigma, low_ratio, high_pct);
  if (auto c = centroid(edges)) {
    return Point{c->x + ox, c->y + oy};
  }
  return Point{img.width / 2.0, img.height / 2.0};
}

Rect central_block_rect(int width, int height, Point center) {
  const int bw = std::max(1, static_cast<int>(std::lround(width / 2.0)));
  const int bh = std::max(1, static_cast<int>(std::lround(height / 2.0)));
  int x0 = static_cast<int>(std::lround(center.x - bw / 2.0));
  int y0 = static_cast<int>(std::lround(center.y - bh / 2.0));
  x0 = std::clamp(x0, 0, width - bw);
  y0 = std::clamp(y0, 0, height - bh);
  return Rect{x0, y0, bw, bh};
}

BinaryMask object_mask(const GrayImage& gray, double tau_s) {
  return fill_holes(dilate_line_se(sobel_edges(gray, tau_s)));
}

BinaryMask object_mask(const RasterImage& img, double tau_s) {
  return object_mask(to_grayscale(img), tau_s);
}

RoiSet select_rois(const BinaryMask& mask, const std::vector<Rect>& rects, double tau_r,
                   PartitionScheme scheme) {
  if (!(tau_r > 0.0) || !(tau_r <= 1.0)) {
    raise(ErrorCode::InvalidParameter, "select_rois: tau_r must lie in (0,1]");
  }
  if (rects.empty()) {
    raise(ErrorCode::InvalidParameter, "select_rois: no cells");
  }

  std::vector<double> density(rects.size(), 0.0);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& r = rects[i];
    std::int64_t on = 0;
    for (int y = r.y0; y < r.y0 + r.h; ++y) {
      for (int x = r.x0; x < r.x0 + r.w; ++x) {
        on += mask.at(x, y) ? 1 : 0;
      }
    }
    density[i] = static_cast<double>(on) / static_cast<double>(r.area());
  }
  const double dmax = *std::max_element(density.begin(), density.end());

  RoiSet out;
  out.scheme = scheme;
  if (dmax == 0.0) {
    // Blank mask: keep every cell queryable with uniform weights.
    const double uniform = 1.0 / static_cast<double>(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i) {
      out.entries.push_back(RoiEntry{static_cast<int>(i), 0.0});
      out.significances.push_back(uniform);
    }
    return out;
  }

  const double threshold = tau_r * dmax;
  double total = 0.0;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    if (density[i] >= threshold) {
      out.entries.push_back(RoiEntry{static_cast<int>(i), density[i]});
      total += density[i];
    }
  }
  out.significances.reserve(out.entries.size());
  for (const RoiEntry& e : out.entries) {
    out.significances.push_back(e.raw_density / total);
  }
  return out;
}

}  // namespace cbir

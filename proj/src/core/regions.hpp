#ifndef CBIR_CORE_REGIONS_HPP
#define CBIR_CORE_REGIONS_HPP

#include <vector>

#include "core/image.hpp"

namespace cbir {

enum class PartitionScheme {
  Grid3x3,
  HorizontalStrips,
  VerticalStrips,
};

inline constexpr int kStripCount = 3;

/// One selected sub-block: its position in the partition and the raw
/// white-pixel fraction measured inside it.
struct RoiEntry {
  int cell_index = 0;
  double raw_density = 0.0;
};

/// Sub-blocks that cleared the density threshold, with their matching weights.
/// Significances are the raw densities normalized to sum 1 (uniform when the
/// whole mask is empty).
struct RoiSet {
  PartitionScheme scheme = PartitionScheme::Grid3x3;
  std::vector<RoiEntry> entries;
  std::vector<double> significances;
};

/// Tiles a width x height frame. Grid3x3 yields 9 cells indexed 3*row+col,
/// strips yield 3 bands indexed top-to-bottom / left-to-right. Remainder
/// pixels go to the last row/column of cells. Throws ImageTooSmall when
/// either dimension is below 3.
std::vector<Rect> partition(int width, int height, PartitionScheme scheme);

/// Centroid of the Canny edge map of the border-cropped, blurred grayscale
/// image, in full-image coordinates. The crop is skipped when the image is
/// not strictly larger than 2*border_crop in both dimensions; an empty edge
/// map falls back to the geometric center (w/2, h/2).
Point attention_center(const RasterImage& img, int border_crop, double sigma,
                       double low_ratio, double high_pct);

/// Rectangle of size round(w/2) x round(h/2) centered at `center`, translated
/// as needed so it lies fully inside the frame.
Rect central_block_rect(int width, int height, Point center);

/// Approximate object locations: grayscale -> thresholded Sobel edges ->
/// line dilation -> hole filling.
BinaryMask object_mask(const RasterImage& img, double tau_s);
BinaryMask object_mask(const GrayImage& gray, double tau_s);

/// Selects every cell whose white-pixel density reaches tau_r times the
/// maximum cell density. When the mask has no white pixels at all, every cell
/// is selected with uniform significance. Throws InvalidParameter when tau_r
/// is outside (0,1].
RoiSet select_rois(const BinaryMask& mask, const std::vector<Rect>& rects, double tau_r,
                   PartitionScheme scheme = PartitionScheme::Grid3x3);

}  // namespace cbir

#endif

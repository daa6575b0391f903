#ifndef CBIR_CORE_IMAGING_HPP
#define CBIR_CORE_IMAGING_HPP

#include <optional>

#include "core/image.hpp"

namespace cbir {

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0,255].
GrayImage to_grayscale(const RasterImage& img);

/// Separable Gaussian convolution. Kernel radius ceil(3*sigma), weights
/// normalized to sum 1, borders edge-clamped, output rounded back to [0,255].
/// Throws InvalidParameter when sigma <= 0.
GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// Sobel gradient magnitude thresholded relative to the image maximum:
/// a pixel is on iff m/max(m) >= tau_s. Zero-gradient images give an empty
/// mask. Throws InvalidParameter when tau_s is outside (0,1).
BinaryMask sobel_edges(const GrayImage& img, double tau_s);

/// Classic Canny: Gaussian smooth, Sobel gradients, 4-direction non-maximum
/// suppression, hysteresis. The high threshold is the high_pct-th percentile
/// (nearest rank) of the nonzero gradient magnitudes; low = low_ratio * high.
/// Throws InvalidParameter for out-of-range ratios or sigma.
BinaryMask canny_edges(const GrayImage& img, double sigma, double low_ratio, double high_pct);

/// Union of four dilations with 3-pixel line structuring elements at
/// 0, 45, 90 and 135 degrees.
BinaryMask dilate_line_se(const BinaryMask& mask);

/// Fills holes: background is flood-filled (4-connectivity) from the border;
/// any off pixel the fill cannot reach is turned on.
BinaryMask fill_holes(const BinaryMask& mask);

/// Mean (x, y) of the on pixels; nullopt for an empty mask.
std::optional<Point> centroid(const BinaryMask& mask);

}  // namespace cbir

#endif

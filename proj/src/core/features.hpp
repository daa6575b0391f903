#ifndef CBIR_CORE_FEATURES_HPP
#define CBIR_CORE_FEATURES_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/image.hpp"
#include "core/regions.hpp"

namespace cbir {

inline constexpr int kHueBins = 18;
inline constexpr int kSatBins = 3;
inline constexpr int kValBins = 3;
inline constexpr int kColorDims = kHueBins + kSatBins + kValBins;  // 24
inline constexpr int kTextureDims = 17;
inline constexpr int kDescriptorDims = kColorDims + kTextureDims;  // 41
inline constexpr int kEhdSubImages = 16;
inline constexpr int kEhdEdgeTypes = 5;
inline constexpr int kEhdDims = kEhdSubImages * kEhdEdgeTypes;  // 80

/// 18 hue + 3 saturation + 3 value bins, each channel normalized by the
/// pixel count of the rect it was measured on.
struct ColorHistogram {
  std::array<double, kColorDims> bins{};
};

/// Contrast, energy, correlation and homogeneity at 0/45/90/135 degrees
/// (feature-major), then one entropy value; all scaled into [0,1].
struct TextureVector {
  std::array<double, kTextureDims> features{};
};

/// 16 sub-images x 5 edge types (vertical, horizontal, 45, 135,
/// non-directional), sub-image-major.
struct EdgeHistogram {
  std::array<double, kEhdDims> bins{};
};

/// Combined colour+texture vector of one ROI plus its matching weight.
struct RegionDescriptor {
  std::array<double, kDescriptorDims> feature{};
  double significance = 0.0;
  int cell_index = 0;
};

/// Everything extracted from one image.
struct ImageSignature {
  std::string image_id;
  std::vector<RegionDescriptor> grid_regions;
  std::vector<RegionDescriptor> h_regions;
  std::vector<RegionDescriptor> v_regions;
  std::array<double, kDescriptorDims> central{};
  ColorHistogram global_color;
  EdgeHistogram global_shape;
  std::uint64_t params_fingerprint = 0;
};

/// All extraction knobs. The defaults are the shipped configuration; every
/// field participates in the parameter fingerprint except border_crop, which
/// is a fixed part of the attention pipeline.
struct ExtractParams {
  double tau_s = 0.10;       // Sobel edge threshold, relative to max gradient
  double tau_r = 0.30;       // ROI density threshold, relative to max density
  int glcm_levels = 16;      // gray-level count for co-occurrence matrices
  double t_edge = 11.0;      // EHD edge-strength threshold (0..255 scale)
  double sigma = 2.0;        // Gaussian sigma for the attention pipeline
  double low_ratio = 0.4;    // Canny low = low_ratio * high
  double high_pct = 80.0;    // Canny high percentile of nonzero magnitudes
  int strip_count = kStripCount;
  int border_crop = 20;
};

inline constexpr int kFormatVersion = 1;

/// FNV-1a over the canonical parameter string (includes the format version).
std::uint64_t params_fingerprint(const ExtractParams& params);

/// Validates parameter ranges; throws InvalidParameter.
void validate_params(const ExtractParams& params);

/// Quantized HSV histogram of the pixels inside `rect`: 18 hue bins (20
/// degrees each; undefined hue when S=0 lands in bin 0), 3 saturation and 3
/// value bins. Throws EmptyRect.
ColorHistogram hsv_histogram(const RasterImage& img, const Rect& rect);

/// Gray-level co-occurrence matrix (levels x levels, row-major, normalized to
/// sum 1). `offset` is a (drow, dcol) displacement; pairs are counted where
/// both endpoints fall inside the rect. A rect admitting no pairs yields the
/// all-zero matrix.
std::vector<double> glcm(const GrayImage& img, const Rect& rect, int levels,
                         std::pair<int, int> offset);

/// Co-occurrence offsets for d=1 at 0, 45, 90 and 135 degrees.
inline constexpr std::pair<int, int> kGlcmOffsets[4] = {{0, 1}, {-1, 1}, {-1, 0}, {-1, -1}};

/// 17 texture features from the four d=1 co-occurrence matrices; entropy is
/// computed on the direction-averaged matrix. Throws RectTooSmall below 2x2.
TextureVector glcm_features(const GrayImage& img, const Rect& rect, int levels);

/// MPEG-7 style edge histogram: 4x4 sub-images, an 8x8 grid of 2x2-filtered
/// blocks per sub-image, five edge types, bins normalized by the 64-block
/// grid. Throws ImageTooSmall below 8x8.
EdgeHistogram ehd(const GrayImage& img, double t_edge = 11.0);

/// Colour histogram and texture vector of `rect` concatenated into the
/// 41-dim region feature.
RegionDescriptor region_descriptor(const RasterImage& img, const GrayImage& gray,
                                   const Rect& rect, double significance, int cell_index,
                                   int levels);

/// Full per-image extraction: ROI descriptors for the 3x3 grid and both strip
/// partitions, the central-block descriptor, global colour and global shape.
/// The caller assigns image_id. Throws ImageTooSmall below 8x8.
ImageSignature build_signature(const RasterImage& img, const ExtractParams& params);

}  // namespace cbir

#endif

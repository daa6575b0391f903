#ifndef CBIR_CORE_MATCHING_HPP
#define CBIR_CORE_MATCHING_HPP

#include <span>
#include <vector>

#include "core/features.hpp"

namespace cbir {

/// Plain L2 distance. Throws DimensionMismatch on unequal lengths.
double euclidean(std::span<const double> f1, std::span<const double> f2);

/// One step of the greedy region matching, kept for diagnostics: which target
/// cell the query cell matched, at what distance, and how much significance
/// mass the match consumed (0 in the exhausted-budget fallback).
struct MatchStep {
  int query_cell = 0;
  int target_cell = 0;
  double pair_distance = 0.0;
  double transferred = 0.0;
};

struct IrmResult {
  double distance = 0.0;
  std::vector<MatchStep> trace;
};

/// Greedy one-to-one region matching. For each query region (in list order)
/// the nearest target region is found (ties to the lowest index); while both
/// significance budgets remain, the pair distance is weighted by the smaller
/// remaining significance of the two regions, which is then consumed from
/// both; once either budget is exhausted the remaining query regions
/// contribute their minimum distances unweighted.
///
/// Significances of each list are expected to sum to 1 (callers normalize).
/// Throws EmptyRegionList or DimensionMismatch.
IrmResult irm_distance(std::span<const RegionDescriptor> r1,
                       std::span<const RegionDescriptor> r2);

/// Total distance between two signatures: the three region-matching terms
/// (grid, horizontal, vertical) plus the global colour, global shape and
/// central-block Euclidean terms, summed with unit weights. Throws
/// ParameterMismatch when the signatures were extracted with different
/// parameters.
double total_distance(const ImageSignature& a, const ImageSignature& b);

}  // namespace cbir

#endif

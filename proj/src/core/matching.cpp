#include "core/matching.hpp"

#include <cmath>

#include "core/error.hpp"

namespace cbir {

namespace {

constexpr double kBudgetEpsilon = 1e-12;

}  // namespace

double euclidean(std::span<const double> f1, std::span<const double> f2) {
  if (f1.size() != f2.size()) {
    raise(ErrorCode::DimensionMismatch,
          "euclidean: " + std::to_string(f1.size()) + " vs " + std::to_string(f2.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const double d = f1[i] - f2[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

IrmResult irm_distance(std::span<const RegionDescriptor> r1,
                       std::span<const RegionDescriptor> r2) {
  if (r1.empty() || r2.empty()) {
    raise(ErrorCode::EmptyRegionList, "irm_distance: empty region list");
  }

  std::vector<double> sig1(r1.size()), sig2(r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) sig1[i] = r1[i].significance;
  for (std::size_t j = 0; j < r2.size(); ++j) sig2[j] = r2[j].significance;

  IrmResult out;
  out.trace.reserve(r1.size());

  for (std::size_t i = 0; i < r1.size(); ++i) {
    double dmin = euclidean(r1[i].feature, r2[0].feature);
    std::size_t jmin = 0;
    for (std::size_t j = 1; j < r2.size(); ++j) {
      const double d = euclidean(r1[i].feature, r2[j].feature);
      if (d < dmin) {
        dmin = d;
        jmin = j;
      }
    }

    // Budgets are re-summed each round in index order so the arithmetic is
    // reproducible independent of how earlier rounds consumed mass.
    double budget1 = 0.0, budget2 = 0.0;
    for (double s : sig1) budget1 += s;
    for (double s : sig2) budget2 += s;

    if (budget1 > kBudgetEpsilon && budget2 > kBudgetEpsilon) {
      const double s = std::min(sig1[i], sig2[jmin]);
      out.distance += dmin * s;
      sig1[i] -= s;
      sig2[jmin] -= s;
      out.trace.push_back(MatchStep{r1[i].cell_index, r2[jmin].cell_index, dmin, s});
    } else {
      out.distance += dmin;
      out.trace.push_back(MatchStep{r1[i].cell_index, r2[jmin].cell_index, dmin, 0.0});
    }
  }
  return out;
}

double total_distance(const ImageSignature& a, const ImageSignature& b) {
  if (a.params_fingerprint != b.params_fingerprint) {
    raise(ErrorCode::ParameterMismatch,
          "total_distance: signatures use different extraction parameters");
  }
  double d = irm_distance(a.grid_regions, b.grid_regions).distance;
  d += irm_distance(a.h_regions, b.h_regions).distance;
  d += irm_distance(a.v_regions, b.v_regions).distance;
  d += euclidean(a.global_color.bins, b.global_color.bins) +
       euclidean(a.global_shape.bins, b.global_shape.bins);
  d += euclidean(a.central, b.central);
  return d;
}

}  // namespace cbir

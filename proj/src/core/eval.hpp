#ifndef CBIR_CORE_EVAL_HPP
#define CBIR_CORE_EVAL_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "core/index.hpp"

namespace cbir {

struct CategoryPrecision {
  std::string category;
  double precision = 0.0;  // in [0,1]
};

/// Per-category average precision@k plus the unweighted mean of the
/// category averages.
struct EvalReport {
  std::size_t k = 0;
  std::vector<CategoryPrecision> per_category;  // sorted by category
  double overall = 0.0;
};

/// Fraction of the first k results sharing the query's category. The query
/// image itself counts when it is among the results. Throws
/// InsufficientResults when fewer than k results are available.
double precision_at_k(const QueryResult& result, const std::string& query_category,
                      std::size_t k);

/// Queries the index with every entry's own signature and averages
/// precision@k per category, then across categories. Throws MissingCategory
/// when an entry is unlabeled, InsufficientResults when k exceeds the index.
EvalReport evaluate(const FeatureIndex& index, std::size_t k);

/// Filename-or-stem to category lookup, loaded from a labels file of
/// `<name> <category>` lines (# starts a comment).
using LabelMap = std::map<std::string, std::string>;
LabelMap load_labels(const std::filesystem::path& path);

/// Category of an image: an all-digit filename stem n maps to n/100
/// (Corel-1000 convention); otherwise the labels file is consulted
/// (exact filename, then stem); otherwise the parent directory name.
/// Returns an empty string when nothing applies.
std::string infer_category(const std::filesystem::path& image_path, const LabelMap* labels);

/// Static HTML contact sheet: the query image first, then the results in
/// rank order with distance and category captions. Re-running with the same
/// inputs produces byte-identical output. Throws IoError.
void emit_html_sheet(const QueryResult& result, const std::filesystem::path& query_path,
                     const std::filesystem::path& out_path);

/// Plain-text table: one row per category (percent precision, two decimals)
/// plus the overall row.
std::string format_report_table(const EvalReport& report);

/// Machine-readable form of the same table. Throws IoError.
void write_report_json(const EvalReport& report, const std::filesystem::path& path);

}  // namespace cbir

#endif

#include "core/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace cbir {

namespace {

std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_distance(double d) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", d);
  return buf;
}

}  // namespace

double precision_at_k(const QueryResult& result, const std::string& query_category,
                      std::size_t k) {
  if (k < 1) {
    raise(ErrorCode::InvalidParameter, "precision_at_k: k must be >= 1");
  }
  if (result.rows.size() < k) {
    raise(ErrorCode::InsufficientResults,
          "precision_at_k: " + std::to_string(result.rows.size()) + " results for k=" +
              std::to_string(k));
  }
  std::size_t relevant = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (result.rows[i].category == query_category) ++relevant;
  }
  return static_cast<double>(relevant) / static_cast<double>(k);
}

EvalReport evaluate(const FeatureIndex& index, std::size_t k) {
  if (k < 1) {
    raise(ErrorCode::InvalidParameter, "evaluate: k must be >= 1");
  }
  if (index.size() == 0) {
    raise(ErrorCode::EmptyIndex, "evaluate: index has no entries");
  }
  if (k > index.size()) {
    raise(ErrorCode::InsufficientResults,
          "evaluate: k=" + std::to_string(k) + " exceeds index size " +
              std::to_string(index.size()));
  }
  for (const IndexEntry& e : index.entries()) {
    if (e.category.empty()) {
      raise(ErrorCode::MissingCategory, "evaluate: no category for " + e.signature.image_id);
    }
  }

  const auto& entries = index.entries();
  std::vector<double> precision(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    const QueryResult r = query(index, entries[i].signature, k, /*threads=*/1);
    precision[i] = precision_at_k(r, entries[i].category, k);
  });

  std::map<std::string, std::pair<double, std::size_t>> per_cat;  // sum, count
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& acc = per_cat[entries[i].category];
    acc.first += precision[i];
    acc.second += 1;
  }

  EvalReport report;
  report.k = k;
  double sum = 0.0;
  for (const auto& [cat, acc] : per_cat) {
    const double mean = acc.first / static_cast<double>(acc.second);
    report.per_category.push_back(CategoryPrecision{cat, mean});
    sum += mean;
  }
  report.overall = sum / static_cast<double>(per_cat.size());
  return report;
}

LabelMap load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::IoError, "cannot open labels file " + path.string());
  }
  LabelMap labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string name, category;
    if (row >> name >> category) {
      labels[name] = category;
    }
  }
  return labels;
}

std::string infer_category(const std::filesystem::path& image_path, const LabelMap* labels) {
  const std::string stem = image_path.stem().string();
  const bool numeric = !stem.empty() && stem.size() <= 9 &&
                       std::all_of(stem.begin(), stem.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
  if (numeric) {
    return std::to_string(std::stol(stem) / 100);
  }
  if (labels) {
    auto it = labels->find(image_path.filename().string());
    if (it == labels->end()) it = labels->find(stem);
    if (it != labels->end()) return it->second;
  }
  return image_path.parent_path().filename().string();
}

void emit_html_sheet(const QueryResult& result, const std::filesystem::path& query_path,
                     const std::filesystem::path& out_path) {
  std::string html;
  html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n";
  html += "<title>cbir results</title>\n";
  html += "<style>\n";
  html += "body{font-family:sans-serif;background:#fafafa;margin:1em}\n";
  html += ".grid{display:flex;flex-wrap:wrap;gap:8px}\n";
  html += "figure{margin:0;padding:4px;background:#fff;border:1px solid #ccc}\n";
  html += "figure.query{border:2px solid #06c}\n";
  html += "figure img{width:192px;display:block}\n";
  html += "figcaption{font-size:12px;margin-top:2px}\n";
  html += "</style>\n</head>\n<body>\n";
  html += "<h1>Query: <code>" + html_escape(query_path.string()) + "</code></h1>\n";
  html += "<div class=\"grid\">\n";
  html += "<figure class=\"query\"><img src=\"" + html_escape(query_path.string()) +
          "\" alt=\"query\"><figcaption>query</figcaption></figure>\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const ResultRow& r = result.rows[i];
    html += "<figure><img src=\"" + html_escape(r.path) + "\" alt=\"" +
            html_escape(r.image_id) + "\"><figcaption>#" + std::to_string(i + 1) +
            " d=" + format_distance(r.distance);
    if (!r.category.empty()) html += " [" + html_escape(r.category) + "]";
    html += "</figcaption></figure>\n";
  }
  html += "</div>\n";
  if (result.rows.empty()) {
    html += "<p>No results.</p>\n";
  }
  html += "</body>\n</html>\n";

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(ErrorCode::IoError, "cannot open " + out_path.string() + " for writing");
  }
  out << html;
  out.flush();
  if (!out.good()) {
    raise(ErrorCode::IoError, "write failed: " + out_path.string());
  }
}

std::string format_report_table(const EvalReport& report) {
  std::size_t width = std::string("category").size();
  for (const CategoryPrecision& c : report.per_category) {
    width = std::max(width, c.category.size());
  }
  width = std::max(width, std::string("overall").size());

  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-*s  precision@%zu (%%)\n", static_cast<int>(width),
                "category", report.k);
  out += buf;
  for (const CategoryPrecision& c : report.per_category) {
    std::snprintf(buf, sizeof(buf), "%-*s  %6.2f\n", static_cast<int>(width), c.category.c_str(),
                  100.0 * c.precision);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-*s  %6.2f\n", static_cast<int>(width), "overall",
                100.0 * report.overall);
  out += buf;
  return out;
}

void write_report_json(const EvalReport& report, const std::filesystem::path& path) {
  nlohmann::json j;
  j["k"] = report.k;
  j["categories"] = nlohmann::json::array();
  for (const CategoryPrecision& c : report.per_category) {
    j["categories"].push_back({{"category", c.category}, {"precision", c.precision}});
  }
  j["overall"] = report.overall;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << '\n';
  out.flush();
  if (!out.good()) {
    raise(ErrorCode::IoError, "write failed: " + path.string());
  }
}

}  // namespace cbir

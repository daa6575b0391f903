#include "core/index.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numeric>
#include <system_error>

#include <json.hpp>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace cbir {

namespace {

using nlohmann::json;

// Shortest decimal that round-trips through the given type.
void append_float(std::string& out, float v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

void append_double(std::string& out, double v) {
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

// Feature components are narrowed to float32 on disk; everything that must
// keep an exact sum (significances) or reproduce the fingerprint (params)
// stays double.
void append_feature_array(std::string& out, std::span<const double> values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    append_float(out, static_cast<float>(values[i]));
  }
  out += ']';
}

void append_regions(std::string& out, const std::vector<RegionDescriptor>& regions) {
  out += '[';
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (i) out += ',';
    out += "{\"cell\":" + std::to_string(regions[i].cell_index) + ",\"sig\":";
    append_double(out, regions[i].significance);
    out += ",\"f\":";
    append_feature_array(out, regions[i].feature);
    out += '}';
  }
  out += ']';
}

std::string manifest_line(const IndexManifest& m) {
  std::string out = "{\"cbir_index\":true,\"format_version\":";
  out += std::to_string(m.format_version);
  out += ",\"created\":" + quoted(m.created);
  out += ",\"fingerprint\":\"" + fingerprint_hex(m.fingerprint) + "\"";
  out += ",\"params\":{\"tau_s\":";
  append_double(out, m.params.tau_s);
  out += ",\"tau_r\":";
  append_double(out, m.params.tau_r);
  out += ",\"glcm_levels\":" + std::to_string(m.params.glcm_levels);
  out += ",\"t_edge\":";
  append_double(out, m.params.t_edge);
  out += ",\"sigma\":";
  append_double(out, m.params.sigma);
  out += ",\"low_ratio\":";
  append_double(out, m.params.low_ratio);
  out += ",\"high_pct\":";
  append_double(out, m.params.high_pct);
  out += ",\"strip_count\":" + std::to_string(m.params.strip_count);
  out += ",\"border_crop\":" + std::to_string(m.params.border_crop);
  out += "}}";
  return out;
}

std::string entry_line(const IndexEntry& e) {
  std::string out = "{\"id\":" + quoted(e.signature.image_id);
  out += ",\"path\":" + quoted(e.path);
  out += ",\"category\":" + quoted(e.category);
  out += ",\"fp\":\"" + fingerprint_hex(e.signature.params_fingerprint) + "\"";
  out += ",\"grid\":";
  append_regions(out, e.signature.grid_regions);
  out += ",\"h\":";
  append_regions(out, e.signature.h_regions);
  out += ",\"v\":";
  append_regions(out, e.signature.v_regions);
  out += ",\"central\":";
  append_feature_array(out, e.signature.central);
  out += ",\"gcolor\":";
  append_feature_array(out, e.signature.global_color.bins);
  out += ",\"gshape\":";
  append_feature_array(out, e.signature.global_shape.bins);
  out += '}';
  return out;
}

[[noreturn]] void corrupt(std::size_t line_no, const std::string& what) {
  raise(ErrorCode::CorruptRecord, "line " + std::to_string(line_no) + ": " + what);
}

std::uint64_t parse_fingerprint_hex(const json& j, std::size_t line_no) {
  if (!j.is_string()) corrupt(line_no, "fingerprint must be a hex string");
  const std::string s = j.get<std::string>();
  std::uint64_t fp = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), fp, 16);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    corrupt(line_no, "bad fingerprint string");
  }
  return fp;
}

// Narrow through float32: the on-disk value is the float, storage is double.
double read_feature(const json& j, std::size_t line_no) {
  if (!j.is_number()) corrupt(line_no, "feature value must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) corrupt(line_no, "feature value must be finite");
  return static_cast<double>(static_cast<float>(v));
}

template <std::size_t N>
void read_feature_array(const json& j, std::array<double, N>& out, std::size_t line_no,
                        const char* field) {
  if (!j.is_array() || j.size() != N) {
    corrupt(line_no, std::string(field) + " must be an array of " + std::to_string(N) + " numbers");
  }
  for (std::size_t i = 0; i < N; ++i) out[i] = read_feature(j[i], line_no);
}

std::vector<RegionDescriptor> read_regions(const json& j, std::size_t line_no, const char* field) {
  if (!j.is_array() || j.empty()) {
    corrupt(line_no, std::string(field) + " must be a nonempty array");
  }
  std::vector<RegionDescriptor> out;
  out.reserve(j.size());
  for (const json& r : j) {
    if (!r.is_object() || !r.contains("cell") || !r.contains("sig") || !r.contains("f")) {
      corrupt(line_no, std::string(field) + ": malformed region record");
    }
    RegionDescriptor d;
    d.cell_index = r.at("cell").get<int>();
    d.significance = r.at("sig").get<double>();
    if (!std::isfinite(d.significance) || d.significance < 0.0) {
      corrupt(line_no, std::string(field) + ": bad significance");
    }
    read_feature_array(r.at("f"), d.feature, line_no, field);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::string FeatureIndex::current_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

FeatureIndex::FeatureIndex(const ExtractParams& params, std::string created) {
  validate_params(params);
  manifest_.format_version = kFormatVersion;
  manifest_.created = std::move(created);
  manifest_.params = params;
  manifest_.fingerprint = params_fingerprint(params);
}

void FeatureIndex::add(ImageSignature signature, std::string path, std::string category) {
  if (signature.image_id.empty()) {
    raise(ErrorCode::InvalidParameter, "index add: empty image_id");
  }
  if (signature.params_fingerprint != manifest_.fingerprint) {
    raise(ErrorCode::ParameterMismatch,
          "index add: signature extracted with different parameters");
  }
  for (const IndexEntry& e : entries_) {
    if (e.signature.image_id == signature.image_id) {
      raise(ErrorCode::InvalidParameter, "index add: duplicate image_id " + signature.image_id);
    }
  }
  entries_.push_back(IndexEntry{std::move(signature), std::move(path), std::move(category)});
}

void write_index(const FeatureIndex& index, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      raise(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
    }
    out << manifest_line(index.manifest()) << '\n';
    for (const IndexEntry& e : index.entries()) {
      out << entry_line(e) << '\n';
    }
    out.flush();
    if (!out.good()) {
      raise(ErrorCode::IoError, "write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    raise(ErrorCode::IoError, "rename to " + path.string() + " failed: " + ec.message());
  }
}

FeatureIndex read_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::IoError, "cannot open " + path.string());
  }

  std::string line;
  if (!std::getline(in, line)) {
    raise(ErrorCode::CorruptRecord, "line 1: missing manifest");
  }

  json m;
  try {
    m = json::parse(line);
  } catch (const json::exception& e) {
    corrupt(1, std::string("manifest parse error: ") + e.what());
  }
  if (!m.is_object() || !m.contains("format_version")) {
    corrupt(1, "manifest missing format_version");
  }
  const int version = m.at("format_version").get<int>();
  if (version != kFormatVersion) {
    raise(ErrorCode::FormatVersionMismatch,
          "index format version " + std::to_string(version) + ", expected " +
              std::to_string(kFormatVersion));
  }

  FeatureIndex index;
  try {
    index.manifest_.format_version = version;
    index.manifest_.created = m.at("created").get<std::string>();
    const json& p = m.at("params");
    index.manifest_.params.tau_s = p.at("tau_s").get<double>();
    index.manifest_.params.tau_r = p.at("tau_r").get<double>();
    index.manifest_.params.glcm_levels = p.at("glcm_levels").get<int>();
    index.manifest_.params.t_edge = p.at("t_edge").get<double>();
    index.manifest_.params.sigma = p.at("sigma").get<double>();
    index.manifest_.params.low_ratio = p.at("low_ratio").get<double>();
    index.manifest_.params.high_pct = p.at("high_pct").get<double>();
    index.manifest_.params.strip_count = p.at("strip_count").get<int>();
    index.manifest_.params.border_crop = p.at("border_crop").get<int>();
    index.manifest_.fingerprint = parse_fingerprint_hex(m.at("fingerprint"), 1);
  } catch (const json::exception& e) {
    corrupt(1, std::string("manifest field error: ") + e.what());
  }
  if (index.manifest_.fingerprint != params_fingerprint(index.manifest_.params)) {
    corrupt(1, "manifest fingerprint does not match its parameters");
  }

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      // Only a trailing blank line is tolerated.
      if (in.peek() == std::ifstream::traits_type::eof()) break;
      corrupt(line_no, "blank line inside index");
    }
    json r;
    try {
      r = json::parse(line);
    } catch (const json::exception& e) {
      corrupt(line_no, std::string("record parse error: ") + e.what());
    }
    if (!r.is_object()) corrupt(line_no, "record is not an object");

    IndexEntry entry;
    try {
      entry.signature.image_id = r.at("id").get<std::string>();
      entry.path = r.at("path").get<std::string>();
      entry.category = r.at("category").get<std::string>();
      entry.signature.params_fingerprint = parse_fingerprint_hex(r.at("fp"), line_no);
      if (entry.signature.params_fingerprint != index.manifest_.fingerprint) {
        corrupt(line_no, "entry fingerprint differs from manifest");
      }
      entry.signature.grid_regions = read_regions(r.at("grid"), line_no, "grid");
      entry.signature.h_regions = read_regions(r.at("h"), line_no, "h");
      entry.signature.v_regions = read_regions(r.at("v"), line_no, "v");
      read_feature_array(r.at("central"), entry.signature.central, line_no, "central");
      read_feature_array(r.at("gcolor"), entry.signature.global_color.bins, line_no, "gcolor");
      read_feature_array(r.at("gshape"), entry.signature.global_shape.bins, line_no, "gshape");
    } catch (const json::exception& e) {
      corrupt(line_no, std::string("record field error: ") + e.what());
    }

    for (const IndexEntry& e : index.entries_) {
      if (e.signature.image_id == entry.signature.image_id) {
        corrupt(line_no, "duplicate image_id " + entry.signature.image_id);
      }
    }
    index.entries_.push_back(std::move(entry));
  }
  return index;
}

QueryResult query(const FeatureIndex& index, const ImageSignature& q, std::size_t k,
                  unsigned threads) {
  if (k < 1) {
    raise(ErrorCode::InvalidParameter, "query: k must be >= 1");
  }
  if (index.size() == 0) {
    raise(ErrorCode::EmptyIndex, "query: index has no entries");
  }
  if (q.params_fingerprint != index.manifest().fingerprint) {
    raise(ErrorCode::ParameterMismatch,
          "query: signature extracted with different parameters than the index");
  }

  const auto& entries = index.entries();
  std::vector<double> dist(entries.size());
  parallel_for(
      entries.size(), [&](std::size_t i) { dist[i] = total_distance(q, entries[i].signature); },
      threads);

  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(k, entries.size());
  auto cmp = [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return entries[a].signature.image_id < entries[b].signature.image_id;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    cmp);

  QueryResult out;
  out.rows.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    const IndexEntry& e = entries[order[i]];
    out.rows.push_back(ResultRow{e.signature.image_id, e.path, e.category, dist[order[i]]});
  }
  return out;
}

}  // namespace cbir

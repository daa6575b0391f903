#ifndef CBIR_CORE_INDEX_HPP
#define CBIR_CORE_INDEX_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "core/features.hpp"
#include "core/matching.hpp"

namespace cbir {

/// Everything needed to reproduce or reject an extraction run.
struct IndexManifest {
  int format_version = kFormatVersion;
  std::string created;  // ISO 8601 UTC, set when the index is created
  ExtractParams params;
  std::uint64_t fingerprint = 0;
};

struct IndexEntry {
  ImageSignature signature;
  std::string path;
  std::string category;  // empty when unlabeled
};

/// Persisted collection of image signatures sharing one parameter set.
/// Immutable once populated; concurrent queries are safe.
class FeatureIndex {
 public:
  explicit FeatureIndex(const ExtractParams& params, std::string created = current_timestamp());

  /// Adds a signature extracted elsewhere. The signature's image_id must be
  /// nonempty and unique; its fingerprint must match the manifest.
  void add(ImageSignature signature, std::string path, std::string category);

  const IndexManifest& manifest() const { return manifest_; }
  const std::vector<IndexEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  static std::string current_timestamp();

 private:
  friend FeatureIndex read_index(const std::filesystem::path&);
  FeatureIndex() = default;

  IndexManifest manifest_;
  std::vector<IndexEntry> entries_;
};

/// One line of a ranked retrieval answer.
struct ResultRow {
  std::string image_id;
  std::string path;
  std::string category;
  double distance = 0.0;
};

/// Ranked (ascending, ties by image_id) list of at most k entries.
struct QueryResult {
  std::vector<ResultRow> rows;
};

/// Writes the index as one manifest line plus one record line per signature
/// (JSON per line). Feature components are narrowed to 32-bit floats and
/// printed as their shortest round-trip decimals; significances and
/// parameters keep full double precision. The write lands atomically via a
/// temp-file rename. Throws IoError.
void write_index(const FeatureIndex& index, const std::filesystem::path& path);

/// Inverse of write_index. Throws IoError, FormatVersionMismatch, or
/// CorruptRecord (with the offending line number).
FeatureIndex read_index(const std::filesystem::path& path);

/// Scans every entry with total_distance and returns the k nearest, ascending
/// by (distance, image_id). k larger than the index returns the full ranking.
/// `threads` caps the scan workers (0 = hardware concurrency; callers that
/// already parallelize across queries pass 1). Throws InvalidParameter
/// (k < 1), EmptyIndex, or ParameterMismatch.
QueryResult query(const FeatureIndex& index, const ImageSignature& q, std::size_t k,
                  unsigned threads = 0);

}  // namespace cbir

#endif

#include "cbir.h"

#include <cstring>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/features.hpp"
#include "core/image.hpp"
#include "core/index.hpp"
#include "core/parallel.hpp"

struct cbir_index {
  cbir::FeatureIndex impl;
};

struct cbir_signature {
  cbir::ImageSignature impl;
};

struct cbir_result {
  cbir::QueryResult impl;
};

struct cbir_report {
  cbir::EvalReport impl;
};

namespace {

thread_local std::string g_last_error;

cbir_status status_of(cbir::ErrorCode code) {
  using cbir::ErrorCode;
  switch (code) {
    case ErrorCode::FileNotFound: return CBIR_E_FILE_NOT_FOUND;
    case ErrorCode::UnsupportedFormat: return CBIR_E_UNSUPPORTED_FORMAT;
    case ErrorCode::CorruptImage: return CBIR_E_CORRUPT_IMAGE;
    case ErrorCode::InvalidParameter: return CBIR_E_INVALID_PARAMETER;
    case ErrorCode::ImageTooSmall: return CBIR_E_IMAGE_TOO_SMALL;
    case ErrorCode::EmptyRect: return CBIR_E_EMPTY_RECT;
    case ErrorCode::RectTooSmall: return CBIR_E_RECT_TOO_SMALL;
    case ErrorCode::DimensionMismatch: return CBIR_E_DIMENSION_MISMATCH;
    case ErrorCode::EmptyRegionList: return CBIR_E_EMPTY_REGION_LIST;
    case ErrorCode::ParameterMismatch: return CBIR_E_PARAMETER_MISMATCH;
    case ErrorCode::IoError: return CBIR_E_IO;
    case ErrorCode::FormatVersionMismatch: return CBIR_E_FORMAT_VERSION_MISMATCH;
    case ErrorCode::CorruptRecord: return CBIR_E_CORRUPT_RECORD;
    case ErrorCode::EmptyIndex: return CBIR_E_EMPTY_INDEX;
    case ErrorCode::InsufficientResults: return CBIR_E_INSUFFICIENT_RESULTS;
    case ErrorCode::MissingCategory: return CBIR_E_MISSING_CATEGORY;
    case ErrorCode::UnlabeledImage: return CBIR_E_UNLABELED_IMAGE;
  }
  return CBIR_E_UNKNOWN;
}

// Runs fn, translating exceptions into status codes + the thread-local
// message. fn returns CBIR_OK (or a status of its own).
template <typename Fn>
cbir_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const cbir::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CBIR_E_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return CBIR_E_UNKNOWN;
  }
}

cbir_status invalid_argument(const char* what) {
  g_last_error = what;
  return CBIR_E_INVALID_PARAMETER;
}

cbir::ExtractParams to_extract_params(const cbir_params& p) {
  cbir::ExtractParams out;
  out.tau_s = p.tau_s;
  out.tau_r = p.tau_r;
  out.glcm_levels = p.glcm_levels;
  out.t_edge = p.t_edge;
  out.sigma = p.sigma;
  out.low_ratio = p.low_ratio;
  out.high_pct = p.high_pct;
  out.strip_count = p.strip_count;
  return out;
}

std::string derive_id(const char* image_path, const char* image_id) {
  if (image_id && *image_id) return image_id;
  return std::filesystem::path(image_path).filename().string();
}

}  // namespace

extern "C" {

void cbir_params_defaults(cbir_params* out) {
  if (!out) return;
  const cbir::ExtractParams d;
  out->tau_s = d.tau_s;
  out->tau_r = d.tau_r;
  out->glcm_levels = d.glcm_levels;
  out->t_edge = d.t_edge;
  out->sigma = d.sigma;
  out->low_ratio = d.low_ratio;
  out->high_pct = d.high_pct;
  out->strip_count = d.strip_count;
}

const char* cbir_status_name(cbir_status status) {
  switch (status) {
    case CBIR_OK: return "Ok";
    case CBIR_E_FILE_NOT_FOUND: return "FileNotFound";
    case CBIR_E_UNSUPPORTED_FORMAT: return "UnsupportedFormat";
    case CBIR_E_CORRUPT_IMAGE: return "CorruptImage";
    case CBIR_E_INVALID_PARAMETER: return "InvalidParameter";
    case CBIR_E_IMAGE_TOO_SMALL: return "ImageTooSmall";
    case CBIR_E_EMPTY_RECT: return "EmptyRect";
    case CBIR_E_RECT_TOO_SMALL: return "RectTooSmall";
    case CBIR_E_DIMENSION_MISMATCH: return "DimensionMismatch";
    case CBIR_E_EMPTY_REGION_LIST: return "EmptyRegionList";
    case CBIR_E_PARAMETER_MISMATCH: return "ParameterMismatch";
    case CBIR_E_IO: return "IoError";
    case CBIR_E_FORMAT_VERSION_MISMATCH: return "FormatVersionMismatch";
    case CBIR_E_CORRUPT_RECORD: return "CorruptRecord";
    case CBIR_E_EMPTY_INDEX: return "EmptyIndex";
    case CBIR_E_INSUFFICIENT_RESULTS: return "InsufficientResults";
    case CBIR_E_MISSING_CATEGORY: return "MissingCategory";
    case CBIR_E_UNLABELED_IMAGE: return "UnlabeledImage";
    case CBIR_E_UNKNOWN: return "Unknown";
  }
  return "Unknown";
}

const char* cbir_last_error(void) { return g_last_error.c_str(); }

cbir_status cbir_index_create(const cbir_params* params, cbir_index** out) {
  if (!params || !out) return invalid_argument("cbir_index_create: null argument");
  *out = nullptr;
  return guarded([&] {
    auto index = std::make_unique<cbir_index>(cbir_index{cbir::FeatureIndex(to_extract_params(*params))});
    *out = index.release();
    return CBIR_OK;
  });
}

cbir_status cbir_index_open(const char* path, cbir_index** out) {
  if (!path || !out) return invalid_argument("cbir_index_open: null argument");
  *out = nullptr;
  return guarded([&] {
    auto index = std::make_unique<cbir_index>(cbir_index{cbir::read_index(path)});
    *out = index.release();
    return CBIR_OK;
  });
}

cbir_status cbir_index_save(const cbir_index* index, const char* path) {
  if (!index || !path) return invalid_argument("cbir_index_save: null argument");
  return guarded([&] {
    cbir::write_index(index->impl, path);
    return CBIR_OK;
  });
}

void cbir_index_close(cbir_index* index) { delete index; }

size_t cbir_index_size(const cbir_index* index) { return index ? index->impl.size() : 0; }

cbir_status cbir_index_add_image(cbir_index* index, const char* image_path, const char* image_id,
                                 const char* category) {
  if (!index || !image_path) return invalid_argument("cbir_index_add_image: null argument");
  return guarded([&] {
    const cbir::RasterImage img = cbir::decode_image(image_path);
    cbir::ImageSignature sig = cbir::build_signature(img, index->impl.manifest().params);
    sig.image_id = derive_id(image_path, image_id);
    index->impl.add(std::move(sig), image_path, category ? category : "");
    return CBIR_OK;
  });
}

cbir_status cbir_index_add_images(cbir_index* index, const char* const* image_paths,
                                  const char* const* image_ids, const char* const* categories,
                                  size_t count, int threads, cbir_progress_fn progress,
                                  void* user) {
  if (!index || (!image_paths && count > 0)) {
    return invalid_argument("cbir_index_add_images: null argument");
  }
  return guarded([&]() -> cbir_status {
    struct Slot {
      std::optional<cbir::ImageSignature> signature;
      std::exception_ptr error;
    };
    std::vector<Slot> slots(count);
    std::mutex progress_mutex;
    std::size_t done = 0;

    const cbir::ExtractParams params = index->impl.manifest().params;
    cbir::parallel_for(
        count,
        [&](std::size_t i) {
          try {
            const cbir::RasterImage img = cbir::decode_image(image_paths[i]);
            cbir::ImageSignature sig = cbir::build_signature(img, params);
            sig.image_id = derive_id(image_paths[i], image_ids ? image_ids[i] : nullptr);
            slots[i].signature = std::move(sig);
          } catch (...) {
            slots[i].error = std::current_exception();
          }
          if (progress) {
            std::lock_guard<std::mutex> lock(progress_mutex);
            progress(++done, count, user);
          }
        },
        threads > 0 ? static_cast<unsigned>(threads) : 0);

    // Commit in input order; stop at the first failure.
    for (std::size_t i = 0; i < count; ++i) {
      if (slots[i].error) std::rethrow_exception(slots[i].error);
      index->impl.add(std::move(*slots[i].signature), image_paths[i],
                      categories && categories[i] ? categories[i] : "");
    }
    return CBIR_OK;
  });
}

cbir_status cbir_signature_create(const cbir_index* index, const char* image_path,
                                  cbir_signature** out) {
  if (!index || !image_path || !out) {
    return invalid_argument("cbir_signature_create: null argument");
  }
  *out = nullptr;
  return guarded([&] {
    const cbir::RasterImage img = cbir::decode_image(image_path);
    cbir::ImageSignature sig = cbir::build_signature(img, index->impl.manifest().params);
    sig.image_id = std::filesystem::path(image_path).filename().string();
    auto handle = std::make_unique<cbir_signature>(cbir_signature{std::move(sig)});
    *out = handle.release();
    return CBIR_OK;
  });
}

void cbir_signature_free(cbir_signature* signature) { delete signature; }

cbir_status cbir_index_query(const cbir_index* index, const cbir_signature* signature, size_t k,
                             cbir_result** out) {
  if (!index || !signature || !out) return invalid_argument("cbir_index_query: null argument");
  *out = nullptr;
  return guarded([&] {
    auto result =
        std::make_unique<cbir_result>(cbir_result{cbir::query(index->impl, signature->impl, k)});
    *out = result.release();
    return CBIR_OK;
  });
}

size_t cbir_result_count(const cbir_result* result) {
  return result ? result->impl.rows.size() : 0;
}

const char* cbir_result_image_id(const cbir_result* result, size_t i) {
  if (!result || i >= result->impl.rows.size()) return "";
  return result->impl.rows[i].image_id.c_str();
}

const char* cbir_result_path(const cbir_result* result, size_t i) {
  if (!result || i >= result->impl.rows.size()) return "";
  return result->impl.rows[i].path.c_str();
}

const char* cbir_result_category(const cbir_result* result, size_t i) {
  if (!result || i >= result->impl.rows.size()) return "";
  return result->impl.rows[i].category.c_str();
}

double cbir_result_distance(const cbir_result* result, size_t i) {
  if (!result || i >= result->impl.rows.size()) return -1.0;
  return result->impl.rows[i].distance;
}

void cbir_result_free(cbir_result* result) { delete result; }

cbir_status cbir_result_write_html(const cbir_result* result, const char* query_image_path,
                                   const char* out_path) {
  if (!result || !query_image_path || !out_path) {
    return invalid_argument("cbir_result_write_html: null argument");
  }
  return guarded([&] {
    cbir::emit_html_sheet(result->impl, query_image_path, out_path);
    return CBIR_OK;
  });
}

cbir_status cbir_index_evaluate(const cbir_index* index, size_t k, cbir_report** out) {
  if (!index || !out) return invalid_argument("cbir_index_evaluate: null argument");
  *out = nullptr;
  return guarded([&] {
    auto report =
        std::make_unique<cbir_report>(cbir_report{cbir::evaluate(index->impl, k)});
    *out = report.release();
    return CBIR_OK;
  });
}

size_t cbir_report_category_count(const cbir_report* report) {
  return report ? report->impl.per_category.size() : 0;
}

const char* cbir_report_category(const cbir_report* report, size_t i) {
  if (!report || i >= report->impl.per_category.size()) return "";
  return report->impl.per_category[i].category.c_str();
}

double cbir_report_precision(const cbir_report* report, size_t i) {
  if (!report || i >= report->impl.per_category.size()) return -1.0;
  return report->impl.per_category[i].precision;
}

double cbir_report_overall(const cbir_report* report) {
  return report ? report->impl.overall : -1.0;
}

cbir_status cbir_report_format(const cbir_report* report, char* buf, size_t buf_len) {
  if (!report || !buf || buf_len == 0) return invalid_argument("cbir_report_format: null argument");
  return guarded([&]() -> cbir_status {
    const std::string table = cbir::format_report_table(report->impl);
    if (table.size() + 1 > buf_len) {
      return invalid_argument("cbir_report_format: buffer too small");
    }
    std::memcpy(buf, table.c_str(), table.size() + 1);
    return CBIR_OK;
  });
}

cbir_status cbir_report_write_json(const cbir_report* report, const char* path) {
  if (!report || !path) return invalid_argument("cbir_report_write_json: null argument");
  return guarded([&] {
    cbir::write_report_json(report->impl, path);
    return CBIR_OK;
  });
}

void cbir_report_free(cbir_report* report) { delete report; }

cbir_status cbir_infer_category(const char* image_path, const char* labels_file, char* buf,
                                size_t buf_len) {
  if (!image_path || !buf || buf_len == 0) {
    return invalid_argument("cbir_infer_category: null argument");
  }
  return guarded([&]() -> cbir_status {
    std::optional<cbir::LabelMap> labels;
    if (labels_file) labels = cbir::load_labels(labels_file);
    const std::string category =
        cbir::infer_category(image_path, labels ? &*labels : nullptr);
    if (category.size() + 1 > buf_len) {
      return invalid_argument("cbir_infer_category: buffer too small");
    }
    std::memcpy(buf, category.c_str(), category.size() + 1);
    return CBIR_OK;
  });
}

}  // extern "C"

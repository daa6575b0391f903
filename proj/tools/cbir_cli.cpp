// cbir command-line front end: index / query / eval over the C API.
//
// Exit codes: 0 success, 1 usage error, 2 data error (decode/format),
// 3 I/O error.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbir.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

int exit_code_of(cbir_status status) {
  switch (status) {
    case CBIR_OK:
      return 0;
    case CBIR_E_IO:
    case CBIR_E_FILE_NOT_FOUND:
      return kExitIo;
    case CBIR_E_INVALID_PARAMETER:
    case CBIR_E_INSUFFICIENT_RESULTS:
      return kExitUsage;
    default:
      return kExitData;
  }
}

int fail(cbir_status status) {
  std::fprintf(stderr, "cbir: %s: %s\n", cbir_status_name(status), cbir_last_error());
  return exit_code_of(status);
}

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

struct ImageFile {
  std::string path;
  std::string id;        // path relative to the images root
  std::string category;
};

std::vector<ImageFile> collect_images(const fs::path& root, const char* labels_file,
                                      std::string* error) {
  std::vector<ImageFile> files;
  std::error_code ec;
  auto it = fs::recursive_directory_iterator(root, ec);
  if (ec) {
    *error = root.string() + ": " + ec.message();
    return files;
  }
  for (const auto& entry : it) {
    if (!entry.is_regular_file() || !has_image_extension(entry.path())) continue;
    ImageFile f;
    f.path = entry.path().string();
    f.id = fs::relative(entry.path(), root).generic_string();
    files.push_back(std::move(f));
  }
  std::sort(files.begin(), files.end(),
            [](const ImageFile& a, const ImageFile& b) { return a.id < b.id; });

  char category[256];
  for (ImageFile& f : files) {
    if (cbir_infer_category(f.path.c_str(), labels_file, category, sizeof(category)) == CBIR_OK) {
      f.category = category;
    }
  }
  return files;
}

void progress_line(size_t done, size_t total, void*) {
  if (done % 100 == 0 || done == total) {
    std::fprintf(stderr, "indexed %zu/%zu images\n", done, total);
  }
}

int run_index(const std::string& images_dir, const std::string& db_path,
              const cbir_params& params, const std::string& labels_file) {
  std::string walk_error;
  const std::vector<ImageFile> files =
      collect_images(images_dir, labels_file.empty() ? nullptr : labels_file.c_str(),
                     &walk_error);
  if (!walk_error.empty()) {
    std::fprintf(stderr, "cbir: cannot scan %s\n", walk_error.c_str());
    return kExitIo;
  }
  if (files.empty()) {
    std::fprintf(stderr, "cbir: no JPEG/PNG images under %s\n", images_dir.c_str());
    return kExitData;
  }

  cbir_index* index = nullptr;
  cbir_status status = cbir_index_create(&params, &index);
  if (status != CBIR_OK) return fail(status);

  std::vector<const char*> paths, ids, categories;
  paths.reserve(files.size());
  for (const ImageFile& f : files) {
    paths.push_back(f.path.c_str());
    ids.push_back(f.id.c_str());
    categories.push_back(f.category.c_str());
  }
  status = cbir_index_add_images(index, paths.data(), ids.data(), categories.data(),
                                 files.size(), 0, progress_line, nullptr);
  if (status != CBIR_OK) {
    int code = fail(status);
    cbir_index_close(index);
    return code;
  }

  status = cbir_index_save(index, db_path.c_str());
  cbir_index_close(index);
  if (status != CBIR_OK) return fail(status);
  std::printf("%zu\t%s\n", files.size(), db_path.c_str());
  return 0;
}

int run_query(const std::string& db_path, const std::string& image_path, size_t k,
              const std::string& html_path) {
  cbir_index* index = nullptr;
  cbir_status status = cbir_index_open(db_path.c_str(), &index);
  if (status != CBIR_OK) return fail(status);

  cbir_signature* signature = nullptr;
  status = cbir_signature_create(index, image_path.c_str(), &signature);
  if (status != CBIR_OK) {
    int code = fail(status);
    cbir_index_close(index);
    return code;
  }

  cbir_result* result = nullptr;
  status = cbir_index_query(index, signature, k, &result);
  cbir_signature_free(signature);
  if (status != CBIR_OK) {
    int code = fail(status);
    cbir_index_close(index);
    return code;
  }

  for (size_t i = 0; i < cbir_result_count(result); ++i) {
    std::printf("%zu\t%.6f\t%s\t%s\t%s\n", i + 1, cbir_result_distance(result, i),
                cbir_result_image_id(result, i), cbir_result_category(result, i),
                cbir_result_path(result, i));
  }

  int code = 0;
  if (!html_path.empty()) {
    status = cbir_result_write_html(result, image_path.c_str(), html_path.c_str());
    if (status != CBIR_OK) code = fail(status);
  }
  cbir_result_free(result);
  cbir_index_close(index);
  return code;
}

int run_eval(const std::string& db_path, size_t k, const std::string& report_path) {
  cbir_index* index = nullptr;
  cbir_status status = cbir_index_open(db_path.c_str(), &index);
  if (status != CBIR_OK) return fail(status);

  cbir_report* report = nullptr;
  status = cbir_index_evaluate(index, k, &report);
  if (status != CBIR_OK) {
    int code = fail(status);
    cbir_index_close(index);
    return code;
  }

  std::vector<char> table(1 << 16);
  status = cbir_report_format(report, table.data(), table.size());
  if (status == CBIR_OK) {
    std::fputs(table.data(), stdout);
  }

  int code = status == CBIR_OK ? 0 : fail(status);
  if (code == 0 && !report_path.empty()) {
    status = cbir_report_write_json(report, report_path.c_str());
    if (status != CBIR_OK) code = fail(status);
  }
  cbir_report_free(report);
  cbir_index_close(index);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query-by-example image retrieval"};
  app.require_subcommand(1);

  cbir_params params;
  cbir_params_defaults(&params);

  // index
  auto* index_cmd = app.add_subcommand("index", "extract features for a directory of images");
  std::string images_dir, db_path, labels_file;
  index_cmd->add_option("--images", images_dir, "directory of JPEG/PNG images")->required();
  index_cmd->add_option("--db", db_path, "output index file")->required();
  index_cmd->add_option("--tau-s", params.tau_s, "Sobel edge threshold in (0,1)");
  index_cmd->add_option("--tau-r", params.tau_r, "ROI density threshold in (0,1]");
  index_cmd->add_option("--levels", params.glcm_levels, "GLCM gray levels");
  index_cmd->add_option("--t-edge", params.t_edge, "edge histogram threshold");
  index_cmd->add_option("--labels", labels_file, "labels file (<filename-or-stem> <category>)");

  // query
  auto* query_cmd = app.add_subcommand("query", "rank indexed images against a query image");
  std::string query_db, query_image, html_path;
  size_t query_k = 0;
  query_cmd->add_option("--db", query_db, "index file")->required();
  query_cmd->add_option("--image", query_image, "query image")->required();
  query_cmd->add_option("--k", query_k, "number of results")->required();
  query_cmd->add_option("--html", html_path, "write an HTML contact sheet");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "average precision@k over the indexed corpus");
  std::string eval_db, report_path;
  size_t eval_k = 0;
  eval_cmd->add_option("--db", eval_db, "index file")->required();
  eval_cmd->add_option("--k", eval_k, "retrieval depth")->required();
  eval_cmd->add_option("--report", report_path, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (index_cmd->parsed()) return run_index(images_dir, db_path, params, labels_file);
  if (query_cmd->parsed()) return run_query(query_db, query_image, query_k, html_path);
  if (eval_cmd->parsed()) return run_eval(eval_db, eval_k, report_path);
  return kExitUsage;
}

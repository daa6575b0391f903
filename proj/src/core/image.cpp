#include "core/image.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include <jpeglib.h>
#include <png.h>

#include "core/error.hpp"

namespace cbir {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

enum class Sniffed { Png, Jpeg, Other };

Sniffed sniff_format(std::FILE* f) {
  unsigned char magic[8] = {0};
  std::size_t got = std::fread(magic, 1, sizeof(magic), f);
  std::rewind(f);
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return Sniffed::Png;
  if (got >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF) return Sniffed::Jpeg;
  return Sniffed::Other;
}

RasterImage decode_png(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;

  if (!png_image_begin_read_from_file(&img, path.string().c_str())) {
    raise(ErrorCode::CorruptImage, path.string() + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGB;

  RasterImage out(static_cast<int>(img.width), static_cast<int>(img.height));
  if (!png_image_finish_read(&img, nullptr, out.pixels.data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    raise(ErrorCode::CorruptImage, path.string() + ": " + msg);
  }
  return out;
}

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

RasterImage decode_jpeg(const std::filesystem::path& path, std::FILE* f) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  jerr.message[0] = '\0';

  RasterImage out;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    raise(ErrorCode::CorruptImage, path.string() + ": " + jerr.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  out.width = static_cast<int>(cinfo.output_width);
  out.height = static_cast<int>(cinfo.output_height);
  out.pixels.resize(static_cast<std::size_t>(out.width) * out.height * 3);

  const std::size_t stride = static_cast<std::size_t>(out.width) * 3;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.pixels.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

}  // namespace

RasterImage decode_image(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.string().c_str(), "rb"));
  if (!f) {
    if (!std::filesystem::exists(path)) {
      raise(ErrorCode::FileNotFound, path.string());
    }
    raise(ErrorCode::IoError, "cannot open " + path.string());
  }

  switch (sniff_format(f.get())) {
    case Sniffed::Png:
      f.reset();
      return decode_png(path);
    case Sniffed::Jpeg:
      return decode_jpeg(path, f.get());
    case Sniffed::Other:
      raise(ErrorCode::UnsupportedFormat, path.string() + ": not a JPEG or PNG file");
  }
  raise(ErrorCode::UnsupportedFormat, path.string());
}

}  // namespace cbir

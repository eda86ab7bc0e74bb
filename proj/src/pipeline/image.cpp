// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/pipeline/image.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>

#include "virtfusion/errors.hpp"

namespace virtfusion::pipeline {

namespace {

// libpng reports errors by longjmp; the handler stashes the message first.
struct ErrorSink {
  std::string message;
};

void on_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  if (sink) sink->message = msg ? msg : "unknown";
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

void flush_noop(png_structp) {}

struct Reader {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};

void read_bytes(png_structp png, png_bytep out, png_size_t length) {
  auto* reader = static_cast<Reader*>(png_get_io_ptr(png));
  if (reader->pos + length > reader->size) {
    png_error(png, "unexpected end of stream");
  }
  std::memcpy(out, reader->data + reader->pos, length);
  reader->pos += length;
}

std::string encode(int width, int height, int bit_depth, int color_type,
                   std::vector<png_bytep>& rows) {
  ErrorSink sink;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &sink,
                                            on_error, on_warning);
  if (!png) throw Error("png: writer allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("png: info allocation failed");
  }

  std::string out;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("png: encode failed: " + sink.message);
  }

  png_set_write_fn(png, &out, append_bytes, flush_noop);
  png_set_IHDR(png, info, width, height, bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);  // in-memory is little endian
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

struct Decoded {
  int width = 0, height = 0, bit_depth = 0, color_type = 0;
  std::vector<unsigned char> bytes;  // tightly packed rows
};

Decoded decode(std::string_view data) {
  if (data.size() < 8 ||
      png_sig_cmp(reinterpret_cast<png_const_bytep>(data.data()), 0, 8)) {
    throw ParseError("png: bad signature");
  }
  ErrorSink sink;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &sink,
                                           on_error, on_warning);
  if (!png) throw Error("png: reader allocation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("png: info allocation failed");
  }

  Decoded out;
  std::vector<png_bytep> rows;
  Reader reader{reinterpret_cast<const unsigned char*>(data.data()),
                data.size(), 0};

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError("png: decode failed: " + sink.message);
  }

  png_set_read_fn(png, &reader, read_bytes);
  png_read_info(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.bit_depth = png_get_bit_depth(png, info);
  out.color_type = png_get_color_type(png, info);
  if (out.bit_depth == 16) png_set_swap(png);

  const std::size_t row_bytes = png_get_rowbytes(png, info);
  out.bytes.resize(row_bytes * out.height);
  rows.resize(out.height);
  for (int y = 0; y < out.height; ++y) {
    rows[y] = out.bytes.data() + row_bytes * y;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

}  // namespace

std::string encode_png(const ImageRgb8& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.width) * image.height * 3) {
    throw InvalidArgumentError("png: malformed rgb8 image");
  }
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(image.pixels.data()) +
              static_cast<std::size_t>(y) * image.width * 3;
  }
  return encode(image.width, image.height, 8, PNG_COLOR_TYPE_RGB, rows);
}

std::string encode_png(const ImageGray16& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.width) * image.height) {
    throw InvalidArgumentError("png: malformed gray16 image");
  }
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = const_cast<png_bytep>(
        reinterpret_cast<const png_byte*>(image.pixels.data())) +
        static_cast<std::size_t>(y) * image.width * 2;
  }
  return encode(image.width, image.height, 16, PNG_COLOR_TYPE_GRAY, rows);
}

ImageRgb8 decode_png_rgb8(std::string_view bytes) {
  Decoded d = decode(bytes);
  if (d.color_type != PNG_COLOR_TYPE_RGB || d.bit_depth != 8) {
    throw ParseError("png: expected 8-bit RGB");
  }
  ImageRgb8 image;
  image.width = d.width;
  image.height = d.height;
  image.pixels.assign(d.bytes.begin(), d.bytes.end());
  return image;
}

ImageGray16 decode_png_gray16(std::string_view bytes) {
  Decoded d = decode(bytes);
  if (d.color_type != PNG_COLOR_TYPE_GRAY || d.bit_depth != 16) {
    throw ParseError("png: expected 16-bit grayscale");
  }
  ImageGray16 image;
  image.width = d.width;
  image.height = d.height;
  image.pixels.resize(static_cast<std::size_t>(d.width) * d.height);
  std::memcpy(image.pixels.data(), d.bytes.data(), d.bytes.size());
  return image;
}

}  // namespace virtfusion::pipeline

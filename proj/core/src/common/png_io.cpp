// Copyright 2026 The VoxSem Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "voxsem/common/png_io.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <string>

#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"

namespace voxsem {

namespace {

struct MemoryReader {
  const std::vector<std::uint8_t>* bytes;
  std::size_t pos = 0;
};

void read_callback(png_structp png, png_bytep out, png_size_t len) {
  auto* src = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (src->pos + len > src->bytes->size()) png_error(png, "unexpected end of data");
  std::copy_n(src->bytes->data() + src->pos, len, out);
  src->pos += len;
}

void write_callback(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void flush_callback(png_structp) {}

void error_callback(png_structp png, png_const_charp msg) {
  auto* message = static_cast<std::string*>(png_get_error_ptr(png));
  *message = msg;
  png_longjmp(png, 1);
}

void warning_callback(png_structp, png_const_charp) {}

// The decoded image is returned as rows of 8- or 16-bit samples.
struct DecodedPng {
  int width = 0;
  int height = 0;
  int bit_depth = 0;
  int color_type = 0;
  std::vector<std::uint8_t> data;
  std::size_t row_bytes = 0;
};

DecodedPng decode_png(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw IoError(path.string() + ": not a PNG file");
  }
  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message,
                                           error_callback, warning_callback);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": libpng initialisation failed");
  }
  MemoryReader reader{&bytes};
  DecodedPng out;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError(path.string() + ": PNG decode error: " + message);
  }
  png_set_read_fn(png, &reader, read_callback);
  png_read_info(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.bit_depth = png_get_bit_depth(png, info);
  out.color_type = png_get_color_type(png, info);
  if (out.bit_depth == 16) png_set_swap(png);  // to host little-endian
  png_read_update_info(png, info);
  out.row_bytes = png_get_rowbytes(png, info);
  out.data.resize(out.row_bytes * static_cast<std::size_t>(out.height));
  rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[y] = out.data.data() + y * out.row_bytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void encode_png(const std::filesystem::path& path, int width, int height,
                int bit_depth, int color_type, int channels,
                const std::uint8_t* data) {
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            error_callback, warning_callback);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path.string() + ": libpng initialisation failed");
  }
  std::vector<std::uint8_t> encoded;
  const std::size_t row_bytes =
      static_cast<std::size_t>(width) * channels * (bit_depth / 8);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data + y * row_bytes);
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError(path.string() + ": PNG encode error: " + message);
  }
  png_set_write_fn(png, &encoded, write_callback, flush_callback);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth == 16) png_set_swap(png);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  write_file_atomic(path, encoded);
}

}  // namespace

DepthMap quantize_depth_mm(const DepthMap& depth) {
  DepthMap out = depth;
  for (float& v : out.values) {
    const double mm = std::min(65535.0, std::round(static_cast<double>(v) * 1000.0));
    v = static_cast<float>(mm / 1000.0);
  }
  return out;
}

void write_depth_png(const std::filesystem::path& path, const DepthMap& depth) {
  depth.validate();
  if (depth.width < 1 || depth.height < 1) {
    throw ValidationError("cannot write an empty depth map");
  }
  std::vector<std::uint16_t> mm(depth.values.size());
  for (std::size_t i = 0; i < mm.size(); ++i) {
    mm[i] = static_cast<std::uint16_t>(
        std::min(65535.0, std::round(static_cast<double>(depth.values[i]) * 1000.0)));
  }
  encode_png(path, depth.width, depth.height, 16, PNG_COLOR_TYPE_GRAY, 1,
             reinterpret_cast<const std::uint8_t*>(mm.data()));
}

DepthMap read_depth_png(const std::filesystem::path& path) {
  const DecodedPng img = decode_png(path);
  if (img.color_type != PNG_COLOR_TYPE_GRAY || img.bit_depth != 16) {
    throw IoError(path.string() + ": depth PNG must be 16-bit grayscale");
  }
  DepthMap depth(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    const auto* row =
        reinterpret_cast<const std::uint16_t*>(img.data.data() + y * img.row_bytes);
    for (int x = 0; x < img.width; ++x) {
      depth.at(x, y) = static_cast<float>(row[x] / 1000.0);
    }
  }
  return depth;
}

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image) {
  if (image.width < 1 || image.height < 1 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
    throw ValidationError("RGB image size mismatch");
  }
  encode_png(path, image.width, image.height, 8, PNG_COLOR_TYPE_RGB, 3,
             image.pixels.data());
}

RgbImage read_rgb_png(const std::filesystem::path& path) {
  const DecodedPng img = decode_png(path);
  if (img.color_type != PNG_COLOR_TYPE_RGB || img.bit_depth != 8) {
    throw IoError(path.string() + ": expected 8-bit RGB PNG");
  }
  RgbImage out{img.width, img.height, {}};
  out.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  for (int y = 0; y < img.height; ++y) {
    std::copy_n(img.data.data() + y * img.row_bytes, img.width * 3,
                out.pixels.data() + static_cast<std::size_t>(y) * img.width * 3);
  }
  return out;
}

}  // namespace voxsem

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

#include "voxsem/neural/checkpoint.hpp"

#include <cstring>

#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"

namespace voxsem::nn {

namespace {

constexpr char kMagic[4] = {'S', 'S', 'C', 'W'};
constexpr std::uint32_t kMaxNameLength = 4096;

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const std::vector<NamedTensor<float>>& tensors) {
  ByteWriter w;
  w.raw(kMagic, 4);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    if (!t.value.consistent()) throw ValidationError("tensor '" + t.name + "' is inconsistent");
    w.u32(static_cast<std::uint32_t>(t.name.size()));
    w.raw(t.name.data(), t.name.size());
    w.u32(5);
    for (int d : t.value.shape.dims) w.u32(static_cast<std::uint32_t>(d));
    for (float v : t.value.data) w.f32(v);
  }
  return w.bytes();
}

std::vector<NamedTensor<float>> decode_checkpoint(const std::vector<std::uint8_t>& bytes,
                                                  const std::string& source) {
  ByteReader r(bytes, source);
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw ValidationError(source + ": not an SSCW checkpoint");
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw ValidationError(source + ": unsupported checkpoint version " + std::to_string(version));
  }
  const std::uint32_t count = r.u32();
  std::vector<NamedTensor<float>> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    NamedTensor<float> t;
    const std::uint32_t len = r.u32();
    if (len == 0 || len > kMaxNameLength) throw ValidationError(source + ": bad tensor name length");
    t.name.resize(len);
    r.raw(t.name.data(), len);
    const std::uint32_t rank = r.u32();
    if (rank != 5) throw ValidationError(source + ": tensor '" + t.name + "' has rank " +
                                         std::to_string(rank) + ", expected 5");
    Shape s;
    std::uint64_t total = 1;
    for (int d = 0; d < 5; ++d) {
      const std::uint32_t v = r.u32();
      if (v > (1u << 30)) throw ValidationError(source + ": tensor dim too large");
      s.dims[d] = static_cast<int>(v);
      total *= v;
    }
    if (total * 4 > r.remaining()) throw ValidationError(source + ": truncated tensor '" + t.name + "'");
    t.value = Tensor<float>(s);
    for (float& v : t.value.data) v = r.f32();
    out.push_back(std::move(t));
  }
  if (r.remaining() != 0) throw ValidationError(source + ": trailing bytes after checkpoint");
  return out;
}

void write_checkpoint(const std::filesystem::path& path,
                      const std::vector<NamedTensor<float>>& tensors) {
  write_file_atomic(path, encode_checkpoint(tensors));
}

std::vector<NamedTensor<float>> read_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(read_file_bytes(path), path.string());
}

}  // namespace voxsem::nn

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

#include "voxsem/volume/voxb.hpp"

#include <cmath>
#include <cstring>

#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"

namespace voxsem {

namespace {

constexpr char kMagic[4] = {'V', 'O', 'X', 'B'};

void write_header(ByteWriter& w, const GridSpec& spec, VoxbPayload payload,
                  std::optional<VoxbTsdfHeader> tsdf) {
  spec.validate();
  w.raw(kMagic, 4);
  w.u32(tsdf ? 2u : 1u);
  w.u32(static_cast<std::uint32_t>(spec.dims.nx));
  w.u32(static_cast<std::uint32_t>(spec.dims.ny));
  w.u32(static_cast<std::uint32_t>(spec.dims.nz));
  w.f32(static_cast<float>(spec.voxel_size));
  w.f32(static_cast<float>(spec.origin.x));
  w.f32(static_cast<float>(spec.origin.y));
  w.f32(static_cast<float>(spec.origin.z));
  w.u8(static_cast<std::uint8_t>(payload));
  if (tsdf) {
    w.u8(tsdf->mode);
    w.f32(tsdf->d_max);
  }
}

template <typename P>
void check_consistent(const VoxelGrid<P>& g) {
  if (!g.consistent()) {
    throw ValidationError("voxel grid data length " +
                          std::to_string(g.data.size()) +
                          " does not match dims product " +
                          std::to_string(g.spec.count()));
  }
}

}  // namespace

const char* to_string(VoxbPayload p) {
  switch (p) {
    case VoxbPayload::Scalar: return "scalar";
    case VoxbPayload::Label: return "label";
    case VoxbPayload::State: return "state";
  }
  return "unknown";
}

GridSpec quantize_to_f32(const GridSpec& spec) {
  GridSpec q = spec;
  q.voxel_size = static_cast<float>(spec.voxel_size);
  q.origin = {static_cast<float>(spec.origin.x),
              static_cast<float>(spec.origin.y),
              static_cast<float>(spec.origin.z)};
  return q;
}

std::vector<std::uint8_t> encode_voxb(const VoxelGrid<float>& grid,
                                      std::optional<VoxbTsdfHeader> tsdf) {
  check_consistent(grid);
  if (tsdf && !(tsdf->d_max > 0.0f && std::isfinite(tsdf->d_max))) {
    throw ValidationError("VOXB TSDF header needs a positive d_max");
  }
  ByteWriter w;
  write_header(w, grid.spec, VoxbPayload::Scalar, tsdf);
  w.raw(grid.data.data(), grid.data.size() * sizeof(float));
  return w.bytes();
}

std::vector<std::uint8_t> encode_voxb(const VoxelGrid<std::uint8_t>& labels) {
  check_consistent(labels);
  ByteWriter w;
  write_header(w, labels.spec, VoxbPayload::Label, std::nullopt);
  w.raw(labels.data.data(), labels.data.size());
  return w.bytes();
}

std::vector<std::uint8_t> encode_voxb(const VoxelGrid<VoxelState>& states) {
  check_consistent(states);
  ByteWriter w;
  write_header(w, states.spec, VoxbPayload::State, std::nullopt);
  w.raw(states.data.data(), states.data.size());
  return w.bytes();
}

VoxbFile decode_voxb(const std::vector<std::uint8_t>& bytes,
                     const std::string& source) {
  ByteReader r(bytes, source);
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw ValidationError(source + ": not a VOXB file (bad magic)");
  }
  VoxbFile f;
  f.version = r.u32();
  if (f.version != 1 && f.version != 2) {
    throw ValidationError(source + ": unsupported VOXB version " +
                          std::to_string(f.version));
  }
  const std::uint32_t nx = r.u32(), ny = r.u32(), nz = r.u32();
  if (nx == 0 || ny == 0 || nz == 0 || nx > (1u << 16) || ny > (1u << 16) ||
      nz > (1u << 16)) {
    throw ValidationError(source + ": invalid VOXB dims");
  }
  f.spec.dims = {static_cast<int>(nx), static_cast<int>(ny),
                 static_cast<int>(nz)};
  f.spec.voxel_size = r.f32();
  f.spec.origin.x = r.f32();
  f.spec.origin.y = r.f32();
  f.spec.origin.z = r.f32();
  try {
    f.spec.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  const std::uint8_t tag = r.u8();
  if (tag > 2) {
    throw ValidationError(source + ": unknown VOXB payload tag " +
                          std::to_string(tag));
  }
  f.payload = static_cast<VoxbPayload>(tag);
  if (f.version == 2) {
    if (f.payload != VoxbPayload::Scalar) {
      throw ValidationError(source + ": VOXB version 2 requires a scalar payload");
    }
    f.mode = r.u8();
    f.d_max = r.f32();
    if (!(*f.d_max > 0.0f) || !std::isfinite(*f.d_max)) {
      throw ValidationError(source + ": VOXB d_max must be positive");
    }
  }

  const auto count = static_cast<std::size_t>(f.spec.count());
  const std::size_t elem = f.payload == VoxbPayload::Scalar ? 4 : 1;
  if (r.remaining() != count * elem) {
    throw ValidationError(source + ": VOXB payload holds " +
                          std::to_string(r.remaining()) + " bytes, expected " +
                          std::to_string(count * elem));
  }
  if (f.payload == VoxbPayload::Scalar) {
    f.scalars.resize(count);
    r.raw(f.scalars.data(), count * 4);
    for (float v : f.scalars) {
      if (!std::isfinite(v)) {
        throw ValidationError(source + ": non-finite scalar in VOXB payload");
      }
    }
  } else {
    f.bytes.resize(count);
    r.raw(f.bytes.data(), count);
    if (f.payload == VoxbPayload::State) {
      for (auto b : f.bytes) {
        if (b >= kVoxelStateCount) {
          throw ValidationError(source + ": invalid voxel state " +
                                std::to_string(b));
        }
      }
    }
  }
  return f;
}

VoxbFile read_voxb(const std::filesystem::path& path) {
  return decode_voxb(read_file_bytes(path), path.string());
}

VoxelGrid<float> scalar_grid(const VoxbFile& f, const std::string& source) {
  if (f.payload != VoxbPayload::Scalar) {
    throw ValidationError(source + ": expected scalar payload, found " +
                          to_string(f.payload));
  }
  VoxelGrid<float> g;
  g.spec = f.spec;
  g.data = f.scalars;
  return g;
}

VoxelGrid<std::uint8_t> label_grid(const VoxbFile& f,
                                   const std::string& source) {
  if (f.payload != VoxbPayload::Label) {
    throw ValidationError(source + ": expected label payload, found " +
                          to_string(f.payload));
  }
  VoxelGrid<std::uint8_t> g;
  g.spec = f.spec;
  g.data = f.bytes;
  return g;
}

VoxelGrid<VoxelState> state_grid(const VoxbFile& f, const std::string& source) {
  if (f.payload != VoxbPayload::State) {
    throw ValidationError(source + ": expected state payload, found " +
                          to_string(f.payload));
  }
  VoxelGrid<VoxelState> g;
  g.spec = f.spec;
  g.data.resize(f.bytes.size());
  for (std::size_t i = 0; i < f.bytes.size(); ++i) {
    g.data[i] = static_cast<VoxelState>(f.bytes[i]);
  }
  return g;
}

VoxelGrid<std::uint8_t> load_label_grid(const std::filesystem::path& path) {
  return label_grid(read_voxb(path), path.string());
}

VoxelGrid<VoxelState> load_state_grid(const std::filesystem::path& path) {
  return state_grid(read_voxb(path), path.string());
}

}  // namespace voxsem

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

#include "cli/commands.hpp"
#include "cli/export.hpp"
#include "voxsem/common/error.hpp"
#include "voxsem/common/file_io.hpp"
#include "voxsem/volume/voxb.hpp"

namespace voxsem::cli {

int cmd_export(const ExportOptions& o, std::ostream& log) {
  std::string style = o.style;
  if (style.empty()) {
    const std::string ext = o.out.extension().string();
    if (ext == ".ply") style = "ply";
    else if (ext == ".obj") style = "obj";
    else if (ext == ".png") style = "slices";
    else throw ValidationError("cannot infer export style from '" + o.out.string() + "'");
  }
  const VoxbFile f = read_voxb(o.grid);
  const std::string src = o.grid.string();
  if (style == "ply" || style == "obj") {
    if (f.payload != VoxbPayload::Label) {
      throw ValidationError(src + ": mesh export needs a label grid, found " +
                            std::string(to_string(f.payload)));
    }
    const auto labels = label_grid(f, src);
    write_file_atomic(o.out, style == "ply" ? voxel_ply(labels) : voxel_obj(labels));
  } else if (style == "slices") {
    const int axis = axis_index(o.axis);
    RgbImage img;
    switch (f.payload) {
      case VoxbPayload::Scalar: img = scalar_montage(scalar_grid(f, src), axis); break;
      case VoxbPayload::Label:
        img = label_montage(label_grid(f, src), axis, kClassPalette.data(), kNumClasses);
        break;
      case VoxbPayload::State: {
        VoxelGrid<std::uint8_t> g(f.spec);
        g.data = f.bytes;
        img = label_montage(g, axis, kStatePalette.data(), kVoxelStateCount);
        break;
      }
    }
    write_rgb_png(o.out, img);
  } else {
    throw ValidationError("unknown export style '" + style + "'");
  }
  log << "exported " << o.out.string() << "\n";
  return kExitOk;
}

}  // namespace voxsem::cli

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

#pragma once

#include <cstdint>
#include <vector>

#include "voxsem/volume/geometry.hpp"

namespace voxsem::tsdf {

/// Static 3D k-d tree over a point set, built once and then queried
/// read-only from any number of threads.
class KdTree {
 public:
  explicit KdTree(std::vector<Vec3> points, int leaf_size = 12);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// Euclidean distance from q to its nearest point, or `max_distance` when
  /// no point lies strictly closer. Passing +inf gives the exact nearest
  /// distance.
  double nearest_distance(const Vec3& q, double max_distance) const;

 private:
  struct Node {
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double split = 0.0;
    std::int8_t axis = -1;  // -1 marks a leaf
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end, int depth);
  void search(std::int32_t node, const Vec3& q, double& best_sq) const;

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int leaf_size_;
};

}  // namespace voxsem::tsdf

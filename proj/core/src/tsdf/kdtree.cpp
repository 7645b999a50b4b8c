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

#include "voxsem/tsdf/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace voxsem::tsdf {

KdTree::KdTree(std::vector<Vec3> points, int leaf_size)
    : points_(std::move(points)), leaf_size_(std::max(1, leaf_size)) {
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / leaf_size_ + 2);
    build(0, static_cast<std::uint32_t>(points_.size()), 0);
  }
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end, int depth) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= static_cast<std::uint32_t>(leaf_size_) || depth > 60) {
    return id;
  }
  // Split the widest axis at the median.
  Aabb box = Aabb::empty();
  for (auto i = begin; i < end; ++i) box.expand(points_[i]);
  const Vec3 ext = box.extent();
  int axis = 0;
  if (ext.y > ext[axis]) axis = 1;
  if (ext.z > ext[axis]) axis = 2;
  if (ext[axis] <= 0.0) return id;  // all points coincide

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(points_.begin() + begin, points_.begin() + mid,
                   points_.begin() + end,
                   [axis](const Vec3& a, const Vec3& b) { return a[axis] < b[axis]; });
  const double split = points_[mid][axis];
  nodes_[id].axis = static_cast<std::int8_t>(axis);
  nodes_[id].split = split;
  const std::int32_t left = build(begin, mid, depth + 1);
  const std::int32_t right = build(mid, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::search(std::int32_t node_id, const Vec3& q, double& best_sq) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (auto i = node.begin; i < node.end; ++i) {
      const Vec3 d = points_[i] - q;
      const double sq = dot(d, d);
      if (sq < best_sq) best_sq = sq;
    }
    return;
  }
  // Left holds points <= split, right holds points >= split.
  const double diff = q[node.axis] - node.split;
  const std::int32_t near = diff <= 0.0 ? node.left : node.right;
  const std::int32_t far = diff <= 0.0 ? node.right : node.left;
  search(near, q, best_sq);
  if (diff * diff < best_sq) search(far, q, best_sq);
}

double KdTree::nearest_distance(const Vec3& q, double max_distance) const {
  if (points_.empty()) return max_distance;
  double best_sq = std::isinf(max_distance)
                       ? std::numeric_limits<double>::infinity()
                       : max_distance * max_distance;
  const double bound = best_sq;
  search(0, q, best_sq);
  return best_sq < bound ? std::sqrt(best_sq) : max_distance;
}

}  // namespace voxsem::tsdf

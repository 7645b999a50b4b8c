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

#include <array>
#include <cstdint>
#include <string_view>

namespace voxsem {

/// Voxel classes. Label 0 is empty space; 1..11 follow the benchmark column
/// order.
enum class Category : std::uint8_t {
  Empty = 0,
  Ceiling = 1,
  Floor = 2,
  Wall = 3,
  Window = 4,
  Chair = 5,
  Bed = 6,
  Sofa = 7,
  Table = 8,
  Tvs = 9,
  Furniture = 10,
  Objects = 11,
};

inline constexpr int kNumClasses = 12;

inline constexpr std::array<std::string_view, kNumClasses> kCategoryNames = {
    "empty", "ceiling", "floor", "wall",  "window",    "chair",
    "bed",   "sofa",    "table", "tvs",   "furniture", "objects"};

/// Column headers used by the plain-text metric tables.
inline constexpr std::array<std::string_view, kNumClasses> kCategoryShortNames = {
    "empty", "ceil.", "floor", "wall", "win.",  "chair",
    "bed",   "sofa",  "table", "tvs",  "furn.", "objs."};

constexpr std::uint8_t label_of(Category c) {
  return static_cast<std::uint8_t>(c);
}

/// Wall, floor, ceiling and empty are structural; everything else counts as
/// an object for view validity.
constexpr bool is_structural(std::uint8_t label) {
  return label == label_of(Category::Empty) ||
         label == label_of(Category::Ceiling) ||
         label == label_of(Category::Floor) ||
         label == label_of(Category::Wall);
}

}  // namespace voxsem

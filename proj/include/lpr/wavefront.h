// Copyright (c) the LPR Codec Project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lpr/error.h"

namespace lpr {

// Shape of the causal context used for parameter estimation: a k x k
// neighborhood thinned so that pixels on the same diagonal wavefront are
// mutually independent.  `par_index` (j) selects how steep the wavefronts
// are; larger j admits more of the neighborhood but yields longer
// schedules.
struct ContextModelSpec {
  int kernel = 7;     // odd, >= 3
  int par_index = 3;  // in [1, (kernel + 3) / 2]

  ContextModelSpec() = default;
  ContextModelSpec(int k, int j) : kernel(k), par_index(j) { validate(); }
  void validate() const;
  int half() const { return kernel / 2; }
  int max_par_index() const { return (kernel + 3) / 2; }
};

// Relative (row, col) offsets of the context pixels, all strictly earlier
// in raster order (above the pixel, or to its left on the same row).
std::vector<std::pair<int, int>> context_offsets(const ContextModelSpec& spec);

// Diagonal wavefront index of a pixel: (j - 1) * row + col.  Every context
// offset lands on a strictly smaller index, so all pixels sharing an index
// can have their parameters computed at once.
int64_t wavefront_step(const ContextModelSpec& spec, int row, int col);

// Pixels of a rows x cols patch bucketed by wavefront index.  Group g
// occupies positions[group_start[g] .. group_start[g + 1]), rows ascending
// within a group.
struct Schedule {
  std::vector<std::pair<uint16_t, uint16_t>> positions;  // (row, col)
  std::vector<uint32_t> group_start;                     // size = groups + 1

  size_t groups() const { return group_start.empty() ? 0 : group_start.size() - 1; }
};

Schedule build_schedule(uint32_t rows, uint32_t cols,
                        const ContextModelSpec& spec);
Schedule build_schedule(uint32_t patch, const ContextModelSpec& spec);

// One tile of the image grid; patches are coded independently.
struct PatchRect {
  uint32_t row0 = 0;
  uint32_t col0 = 0;
  uint32_t rows = 0;
  uint32_t cols = 0;
};

// Splits a height x width image into patch x patch tiles in raster order;
// edge tiles are clipped.
std::vector<PatchRect> tile(uint32_t height, uint32_t width, uint32_t patch);

}  // namespace lpr

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

#include "lpr/wavefront.h"

namespace lpr {

void ContextModelSpec::validate() const {
  if (kernel < 3 || kernel % 2 == 0 || kernel > 255)
    fail(ErrorCode::kBadConfig, "context kernel must be odd and >= 3");
  if (par_index < 1 || par_index > max_par_index())
    fail(ErrorCode::kBadConfig, "parallelism index out of range for kernel");
}

std::vector<std::pair<int, int>> context_offsets(const ContextModelSpec& spec) {
  spec.validate();
  const int h = spec.half();
  const int j = spec.par_index;
  std::vector<std::pair<int, int>> offsets;
  offsets.reserve(size_t(h) * (2 * h + 1) + h);
  for (int dr = -h; dr <= -1; ++dr)
    for (int dc = -h; dc <= h; ++dc)
      if ((j - 1) * dr + dc < 0) offsets.emplace_back(dr, dc);
  for (int dc = -h; dc <= -1; ++dc) offsets.emplace_back(0, dc);
  return offsets;
}

int64_t wavefront_step(const ContextModelSpec& spec, int row, int col) {
  return int64_t(spec.par_index - 1) * row + col;
}

Schedule build_schedule(uint32_t rows, uint32_t cols,
                        const ContextModelSpec& spec) {
  spec.validate();
  if (rows == 0 || cols == 0)
    fail(ErrorCode::kBadConfig, "schedule needs a nonempty patch");
  if (rows > 0xFFFF || cols > 0xFFFF)
    fail(ErrorCode::kBadConfig, "patch dimension exceeds 65535");
  const int64_t steps =
      wavefront_step(spec, int(rows) - 1, int(cols) - 1) + 1;
  Schedule schedule;
  schedule.group_start.assign(size_t(steps) + 1, 0);
  for (uint32_t r = 0; r < rows; ++r)
    for (uint32_t c = 0; c < cols; ++c)
      ++schedule.group_start[size_t(wavefront_step(spec, int(r), int(c))) + 1];
  for (size_t g = 1; g < schedule.group_start.size(); ++g)
    schedule.group_start[g] += schedule.group_start[g - 1];

  schedule.positions.resize(size_t(rows) * cols);
  std::vector<uint32_t> cursor(schedule.group_start.begin(),
                               schedule.group_start.end() - 1);
  // Row-major fill keeps each group ordered by ascending row: a group
  // visits any row at most once because the column is determined by the
  // row within a fixed wavefront index.
  for (uint32_t r = 0; r < rows; ++r)
    for (uint32_t c = 0; c < cols; ++c) {
      const size_t g = size_t(wavefront_step(spec, int(r), int(c)));
      schedule.positions[cursor[g]++] = {uint16_t(r), uint16_t(c)};
    }
  return schedule;
}

Schedule build_schedule(uint32_t patch, const ContextModelSpec& spec) {
  return build_schedule(patch, patch, spec);
}

std::vector<PatchRect> tile(uint32_t height, uint32_t width, uint32_t patch) {
  if (patch == 0) fail(ErrorCode::kBadConfig, "patch size must be positive");
  if (height == 0 || width == 0)
    fail(ErrorCode::kBadConfig, "cannot tile an empty image");
  std::vector<PatchRect> rects;
  for (uint32_t r = 0; r < height; r += patch)
    for (uint32_t c = 0; c < width; c += patch)
      rects.push_back({r, c, std::min(patch, height - r),
                       std::min(patch, width - c)});
  return rects;
}

}  // namespace lpr

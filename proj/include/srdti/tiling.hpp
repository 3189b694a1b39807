#pragma once

#include <vector>

#include "srdti/volume.hpp"

namespace srdti {

// Placement of overlapping blocks over a (possibly zero-padded) grid.
// Volumes smaller than a block are padded symmetrically; otherwise the
// block count per axis is ceil(dims / stride) and padding extends the
// grid to cover the last partial window.
struct BlockGeometry {
  std::array<int, 3> dims{};     // original volume dims
  std::array<int, 3> padded{};   // padded dims covered by the blocks
  std::array<int, 3> pad_lo{};   // leading zero-padding per axis
  std::array<double, 3> spacing{1, 1, 1};
  std::array<double, 3> origin{0, 0, 0};
  BlockSpec spec;
  std::vector<std::array<int, 3>> positions;  // block origins, padded space

  size_t block_count() const { return positions.size(); }
  size_t block_voxels() const {
    return static_cast<size_t>(spec.block[0]) * spec.block[1] * spec.block[2];
  }
};

BlockGeometry plan_blocks(const Volume& reference, const BlockSpec& spec);

// Extracted blocks: one flat array per block, channel-major
// [c][k][j][i] with i fastest, matching the CNN tensor layout.
struct BlockSet {
  BlockGeometry geometry;
  int channels = 0;
  std::vector<std::vector<double>> blocks;
};

// All channel volumes must share the reference grid.
BlockSet extract_blocks(const std::vector<const Volume*>& channels,
                        const BlockSpec& spec);

// Uniform-average blending over overlaps (per-voxel accumulated sum
// divided by contribution count), then the recorded padding is cropped.
// Blocks whose count or size disagree with the geometry are rejected.
std::vector<Volume> assemble_blocks(const BlockGeometry& geometry,
                                    const std::vector<std::vector<double>>& blocks,
                                    int channels);

}  // namespace srdti

#include "srdti/tiling.hpp"

namespace srdti {

BlockGeometry plan_blocks(const Volume& reference, const BlockSpec& spec) {
  reference.validate();
  spec.validate();

  BlockGeometry g;
  g.dims = reference.dims;
  g.spacing = reference.spacing;
  g.origin = reference.origin;
  g.spec = spec;

  std::array<std::vector<int>, 3> axis_pos;
  for (int a = 0; a < 3; ++a) {
    int d = g.dims[a];
    int b = spec.block[a];
    int s = spec.block[a] - spec.overlap[a];
    if (d <= b) {
      g.padded[a] = b;
      g.pad_lo[a] = (b - d) / 2;
      axis_pos[a] = {0};
    } else {
      int n = (d + s - 1) / s;  // ceil(dims / stride)
      g.padded[a] = (n - 1) * s + b;
      g.pad_lo[a] = 0;
      for (int i = 0; i < n; ++i) axis_pos[a].push_back(i * s);
    }
  }
  for (int pz : axis_pos[2])
    for (int py : axis_pos[1])
      for (int px : axis_pos[0]) g.positions.push_back({px, py, pz});
  return g;
}

BlockSet extract_blocks(const std::vector<const Volume*>& channels,
                        const BlockSpec& spec) {
  if (channels.empty()) throw Error("tiling: no channels to extract");
  for (const Volume* v : channels) {
    v->validate();
    if (!v->same_grid(*channels[0]))
      throw Error("tiling: channel grids differ");
  }

  BlockSet set;
  set.geometry = plan_blocks(*channels[0], spec);
  set.channels = static_cast<int>(channels.size());

  const auto& g = set.geometry;
  const int bx = spec.block[0], by = spec.block[1], bz = spec.block[2];
  const int nx = g.dims[0], ny = g.dims[1], nz = g.dims[2];

  set.blocks.reserve(g.block_count());
  for (const auto& pos : g.positions) {
    std::vector<double> blk(static_cast<size_t>(set.channels) * bx * by * bz,
                            0.0);
    size_t o = 0;
    for (int c = 0; c < set.channels; ++c) {
      const Volume& v = *channels[c];
      for (int k = 0; k < bz; ++k) {
        int vk = pos[2] + k - g.pad_lo[2];
        for (int j = 0; j < by; ++j) {
          int vj = pos[1] + j - g.pad_lo[1];
          if (vk < 0 || vk >= nz || vj < 0 || vj >= ny) {
            o += bx;
            continue;
          }
          for (int i = 0; i < bx; ++i, ++o) {
            int vi = pos[0] + i - g.pad_lo[0];
            if (vi >= 0 && vi < nx) blk[o - 1 - (bx - 1) + i] = 0.0, void();
            // (index below; placeholder removed)
          }
          o -= bx;
          const double* src = &v.data[v.index(0, vj, vk)];
          for (int i = 0; i < bx; ++i, ++o) {
            int vi = pos[0] + i - g.pad_lo[0];
            blk[o] = (vi >= 0 && vi < nx) ? src[vi] : 0.0;
          }
        }
      }
    }
    set.blocks.push_back(std::move(blk));
  }
  return set;
}

std::vector<Volume> assemble_blocks(
    const BlockGeometry& g, const std::vector<std::vector<double>>& blocks,
    int channels) {
  if (blocks.size() != g.block_count())
    throw Error("tiling: block count " + std::to_string(blocks.size()) +
                " does not match geometry (" +
                std::to_string(g.block_count()) + ")");
  const int bx = g.spec.block[0], by = g.spec.block[1], bz = g.spec.block[2];
  const size_t per_block =
      static_cast<size_t>(channels) * bx * by * bz;
  for (const auto& b : blocks)
    if (b.size() != per_block)
      throw Error("tiling: block size does not match geometry/channels");

  const size_t padded_n =
      static_cast<size_t>(g.padded[0]) * g.padded[1] * g.padded[2];
  std::vector<double> sum(padded_n * channels, 0.0);
  std::vector<int> count(padded_n, 0);

  auto pidx = [&](int i, int j, int k) {
    return static_cast<size_t>(i) +
           static_cast<size_t>(g.padded[0]) *
               (static_cast<size_t>(j) + static_cast<size_t>(g.padded[1]) * k);
  };

  // Fixed accumulation order: blocks in position order, voxels in scan
  // order, so results do not depend on any parallel schedule.
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& pos = g.positions[bi];
    const auto& blk = blocks[bi];
    size_t o = 0;
    for (int c = 0; c < channels; ++c) {
      for (int k = 0; k < bz; ++k)
        for (int j = 0; j < by; ++j)
          for (int i = 0; i < bx; ++i, ++o) {
            size_t p = pidx(pos[0] + i, pos[1] + j, pos[2] + k);
            sum[p + c * padded_n] += blk[o];
            if (c == 0) ++count[p];
          }
    }
  }

  std::vector<Volume> out;
  out.reserve(channels);
  for (int c = 0; c < channels; ++c) {
    Volume v(g.dims, g.spacing, g.origin);
    for (int k = 0; k < g.dims[2]; ++k)
      for (int j = 0; j < g.dims[1]; ++j)
        for (int i = 0; i < g.dims[0]; ++i) {
          size_t p = pidx(i + g.pad_lo[0], j + g.pad_lo[1], k + g.pad_lo[2]);
          v.at(i, j, k) = sum[p + c * padded_n] / count[p];
        }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace srdti

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace srdti {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// One 3D scalar grid with physical spacing and origin. Data is stored
// x-fastest: data[i + nx*(j + ny*k)]. The world coordinate of voxel
// (i,j,k) is origin + ((i,j,k) + 0.5) * spacing (voxel-center convention).
struct Volume {
  std::array<int, 3> dims{0, 0, 0};
  std::array<double, 3> spacing{1.0, 1.0, 1.0};
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  std::vector<double> data;

  Volume() = default;
  Volume(std::array<int, 3> d, std::array<double, 3> sp,
         std::array<double, 3> org, double fill = 0.0)
      : dims(d), spacing(sp), origin(org),
        data(static_cast<size_t>(d[0]) * d[1] * d[2], fill) {}

  size_t size() const {
    return static_cast<size_t>(dims[0]) * dims[1] * dims[2];
  }
  size_t index(int i, int j, int k) const {
    return static_cast<size_t>(i) +
           static_cast<size_t>(dims[0]) *
               (static_cast<size_t>(j) + static_cast<size_t>(dims[1]) * k);
  }
  double& at(int i, int j, int k) { return data[index(i, j, k)]; }
  double at(int i, int j, int k) const { return data[index(i, j, k)]; }

  std::array<double, 3> voxel_center(int i, int j, int k) const {
    return {origin[0] + (i + 0.5) * spacing[0],
            origin[1] + (j + 0.5) * spacing[1],
            origin[2] + (k + 0.5) * spacing[2]};
  }
  // Center of the physical field of view (dims * spacing box).
  std::array<double, 3> fov_center() const {
    return {origin[0] + dims[0] * spacing[0] * 0.5,
            origin[1] + dims[1] * spacing[1] * 0.5,
            origin[2] + dims[2] * spacing[2] * 0.5};
  }

  void validate() const {
    for (int a = 0; a < 3; ++a) {
      if (dims[a] < 1) throw Error("volume: dims must be >= 1");
      if (!(spacing[a] > 0.0)) throw Error("volume: spacing must be > 0");
    }
    if (data.size() != size())
      throw Error("volume: data length " + std::to_string(data.size()) +
                  " does not match dims product " + std::to_string(size()));
  }

  bool same_grid(const Volume& o, double tol = 1e-6) const {
    if (dims != o.dims) return false;
    for (int a = 0; a < 3; ++a) {
      if (std::abs(spacing[a] - o.spacing[a]) > tol) return false;
      if (std::abs(origin[a] - o.origin[a]) > tol) return false;
    }
    return true;
  }
};

// Unit diffusion-encoding directions and b-values in ms/um^2
// (1 ms/um^2 = 1000 s/mm^2). A zero direction must pair with b = 0.
struct GradientTable {
  std::vector<std::array<double, 3>> directions;
  std::vector<double> bvalues;

  size_t size() const { return directions.size(); }

  void validate() const {
    if (directions.size() != bvalues.size())
      throw Error("gradient table: direction/bvalue count mismatch");
    for (size_t i = 0; i < directions.size(); ++i) {
      const auto& g = directions[i];
      double n = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
      if (n == 0.0) {
        if (bvalues[i] != 0.0)
          throw Error("gradient table: zero direction with nonzero b at row " +
                      std::to_string(i));
      } else if (std::abs(n - 1.0) > 1e-6) {
        throw Error("gradient table: direction " + std::to_string(i) +
                    " is not unit norm (|g| = " + std::to_string(n) + ")");
      }
    }
  }
};

// A b=0 volume (mean of all acquired b=0 volumes), N diffusion-weighted
// volumes with their gradient table, and optional T1 / mask volumes on
// the same grid.
struct DwiStack {
  Volume b0;
  std::vector<Volume> dwis;
  GradientTable table;
  std::optional<Volume> t1;
  std::optional<Volume> mask;

  void validate() const {
    b0.validate();
    if (dwis.size() != table.directions.size())
      throw Error("stack: dwi count does not match gradient table");
    table.validate();
    for (const auto& v : dwis) {
      v.validate();
      if (!v.same_grid(b0)) throw Error("stack: dwi grid differs from b0");
    }
    if (t1 && !t1->same_grid(b0)) throw Error("stack: t1 grid differs from b0");
    if (mask && !mask->same_grid(b0))
      throw Error("stack: mask grid differs from b0");
  }
};

// Scalars used to normalize a stack; kept so the scaling can be undone.
struct ScaleRecord {
  double b0_scale = 1.0;
  std::optional<double> t1_scale;
};

// Divides b0 and all DWIs by one shared scalar (max of b0) and T1 by its
// own max, so intensities live on the unit scale. DWI/b0 ratios are
// unchanged. Throws if b0 (or a present T1) has no positive voxel.
std::pair<DwiStack, ScaleRecord> normalize_stack(const DwiStack& stack);

// Inverse of normalize_stack.
DwiStack denormalize_stack(const DwiStack& stack, const ScaleRecord& rec);

struct BlockSpec {
  std::array<int, 3> block{64, 64, 64};
  std::array<int, 3> overlap{8, 8, 8};

  void validate() const {
    for (int a = 0; a < 3; ++a) {
      if (block[a] < 1) throw Error("block spec: block must be >= 1");
      if (overlap[a] < 0 || overlap[a] >= block[a])
        throw Error("block spec: overlap must satisfy 0 <= overlap < block");
    }
  }
  std::array<int, 3> stride() const {
    return {block[0] - overlap[0], block[1] - overlap[1],
            block[2] - overlap[2]};
  }
};

}  // namespace srdti

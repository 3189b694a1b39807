#include "srdti/volume.hpp"

#include <algorithm>
#include <limits>

namespace srdti {

namespace {

double max_value(const Volume& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v.data) m = std::max(m, x);
  return m;
}

void scale_volume(Volume& v, double s) {
  for (double& x : v.data) x *= s;
}

}  // namespace

std::pair<DwiStack, ScaleRecord> normalize_stack(const DwiStack& stack) {
  stack.validate();
  double b0max = max_value(stack.b0);
  if (!(b0max > 0.0)) throw Error("normalize: b0 has no positive voxel");

  DwiStack out = stack;
  ScaleRecord rec;
  rec.b0_scale = b0max;
  double inv = 1.0 / b0max;
  scale_volume(out.b0, inv);
  for (auto& v : out.dwis) scale_volume(v, inv);

  if (out.t1) {
    double t1max = max_value(*out.t1);
    if (!(t1max > 0.0)) throw Error("normalize: t1 has no positive voxel");
    rec.t1_scale = t1max;
    scale_volume(*out.t1, 1.0 / t1max);
  }
  return {std::move(out), rec};
}

DwiStack denormalize_stack(const DwiStack& stack, const ScaleRecord& rec) {
  DwiStack out = stack;
  scale_volume(out.b0, rec.b0_scale);
  for (auto& v : out.dwis) scale_volume(v, rec.b0_scale);
  if (out.t1 && rec.t1_scale) scale_volume(*out.t1, *rec.t1_scale);
  return out;
}

}  // namespace srdti

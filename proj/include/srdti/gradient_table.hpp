#pragma once

#include <string>
#include <vector>

#include "srdti/volume.hpp"

namespace srdti {

struct GradientTableReadResult {
  GradientTable table;
  std::vector<std::string> warnings;  // e.g. directions renormalized on read
};

// FSL-style text files: bvecs has 3 whitespace-separated rows (x, y, z
// components), bvals one row, equal column counts. File b-values are in
// s/mm^2; the in-memory table uses ms/um^2 (divide by 1000). Non-unit
// directions are normalized on read with a warning; zero vectors are kept
// for b = 0 rows.
GradientTableReadResult read_gradient_table(const std::string& bvecs_path,
                                            const std::string& bvals_path);
void write_gradient_table(const std::string& bvecs_path,
                          const std::string& bvals_path,
                          const GradientTable& table);

}  // namespace srdti

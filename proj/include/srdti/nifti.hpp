#pragma once

#include <string>

#include "srdti/volume.hpp"

namespace srdti {

// Single-file NIfTI-1 (.nii), 32-bit float, little-endian. The affine is
// axis-aligned: only spacing and origin are honored (sform rotation part
// is identity). Geometry is stored at float precision, so metadata
// roundtrips exactly for float-representable spacing/origin values.
Volume read_nifti(const std::string& path);
void write_nifti(const std::string& path, const Volume& v);

}  // namespace srdti

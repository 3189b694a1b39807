#include "srdti/nifti.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace srdti {

namespace {

// NIfTI-1 header, 348 bytes.
#pragma pack(push, 1)
struct Nifti1Header {
  int32_t sizeof_hdr;     // must be 348
  char data_type[10];
  char db_name[18];
  int32_t extents;
  int16_t session_error;
  char regular;
  char dim_info;
  int16_t dim[8];
  float intent_p1;
  float intent_p2;
  float intent_p3;
  int16_t intent_code;
  int16_t datatype;       // 16 = float32
  int16_t bitpix;
  int16_t slice_start;
  float pixdim[8];
  float vox_offset;
  float scl_slope;
  float scl_inter;
  int16_t slice_end;
  char slice_code;
  char xyzt_units;
  float cal_max;
  float cal_min;
  float slice_duration;
  float toffset;
  int32_t glmax;
  int32_t glmin;
  char descrip[80];
  char aux_file[24];
  int16_t qform_code;
  int16_t sform_code;
  float quatern_b;
  float quatern_c;
  float quatern_d;
  float qoffset_x;
  float qoffset_y;
  float qoffset_z;
  float srow_x[4];
  float srow_y[4];
  float srow_z[4];
  char intent_name[16];
  char magic[4];          // "n+1\0" for single-file
};
#pragma pack(pop)

static_assert(sizeof(Nifti1Header) == 348, "NIfTI-1 header must be 348 bytes");

constexpr int16_t kDtFloat32 = 16;
constexpr char kUnitsMm = 2;

}  // namespace

Volume read_nifti(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("nifti read: cannot open " + path);

  Nifti1Header h{};
  f.read(reinterpret_cast<char*>(&h), sizeof(h));
  if (!f) throw Error("nifti read: short header in " + path);

  if (h.sizeof_hdr != 348) {
    // A byte-swapped 348 reads as 1543569408; either way we reject.
    throw Error("nifti read: bad sizeof_hdr (" + std::to_string(h.sizeof_hdr) +
                "), not a little-endian NIfTI-1 file: " + path);
  }
  if (std::strncmp(h.magic, "n+1", 4) != 0)
    throw Error("nifti read: bad magic in " + path +
                " (only single-file n+1 supported)");
  if (h.datatype != kDtFloat32)
    throw Error("nifti read: unsupported datatype code " +
                std::to_string(h.datatype) + " in " + path +
                " (only float32 supported)");
  if (h.dim[0] < 3 || h.dim[0] > 7)
    throw Error("nifti read: expected 3D image, dim[0] = " +
                std::to_string(h.dim[0]) + " in " + path);
  for (int a = 4; a <= h.dim[0]; ++a)
    if (h.dim[a] > 1)
      throw Error("nifti read: higher dimension " + std::to_string(a) +
                  " has extent > 1 in " + path);

  Volume v;
  for (int a = 0; a < 3; ++a) {
    v.dims[a] = h.dim[a + 1];
    if (v.dims[a] < 1)
      throw Error("nifti read: nonpositive dim in " + path);
    v.spacing[a] = h.pixdim[a + 1];
    if (!(v.spacing[a] > 0.0))
      throw Error("nifti read: nonpositive pixdim in " + path);
  }
  // sform translation is the world position of voxel (0,0,0) center,
  // which under our convention is origin + 0.5 * spacing.
  double t[3] = {h.srow_x[3], h.srow_y[3], h.srow_z[3]};
  for (int a = 0; a < 3; ++a) v.origin[a] = t[a] - 0.5 * v.spacing[a];

  size_t nvox = v.size();
  size_t need = nvox * sizeof(float);
  f.seekg(0, std::ios::end);
  size_t fsize = static_cast<size_t>(f.tellg());
  size_t offset = static_cast<size_t>(h.vox_offset);
  if (offset < 352)
    throw Error("nifti read: vox_offset < 352 in " + path);
  if (fsize < offset || fsize - offset < need)
    throw Error("nifti read: declared dims need " + std::to_string(need) +
                " bytes but payload has " +
                std::to_string(fsize > offset ? fsize - offset : 0) +
                " in " + path);

  std::vector<float> buf(nvox);
  f.seekg(static_cast<std::streamoff>(offset), std::ios::beg);
  f.read(reinterpret_cast<char*>(buf.data()),
         static_cast<std::streamsize>(need));
  if (!f) throw Error("nifti read: truncated payload in " + path);

  v.data.resize(nvox);
  for (size_t i = 0; i < nvox; ++i) {
    v.data[i] = buf[i];
    if (h.scl_slope != 0.0f && (h.scl_slope != 1.0f || h.scl_inter != 0.0f))
      v.data[i] = static_cast<double>(h.scl_slope) * buf[i] + h.scl_inter;
  }
  v.validate();
  return v;
}

void write_nifti(const std::string& path, const Volume& v) {
  v.validate();

  Nifti1Header h{};
  h.sizeof_hdr = 348;
  h.regular = 'r';
  h.dim[0] = 3;
  for (int a = 0; a < 3; ++a) h.dim[a + 1] = static_cast<int16_t>(v.dims[a]);
  for (int a = 4; a < 8; ++a) h.dim[a] = 1;
  for (int a = 0; a < 3; ++a) {
    if (v.dims[a] > 32767) throw Error("nifti write: dim exceeds int16 range");
  }
  h.datatype = kDtFloat32;
  h.bitpix = 32;
  h.pixdim[0] = 1.0f;
  for (int a = 0; a < 3; ++a)
    h.pixdim[a + 1] = static_cast<float>(v.spacing[a]);
  for (int a = 4; a < 8; ++a) h.pixdim[a] = 0.0f;
  h.vox_offset = 352.0f;
  h.scl_slope = 1.0f;
  h.scl_inter = 0.0f;
  h.xyzt_units = kUnitsMm;
  std::strncpy(h.descrip, "srdti volume", sizeof(h.descrip) - 1);
  h.qform_code = 0;
  h.sform_code = 1;
  h.srow_x[0] = static_cast<float>(v.spacing[0]);
  h.srow_y[1] = static_cast<float>(v.spacing[1]);
  h.srow_z[2] = static_cast<float>(v.spacing[2]);
  h.srow_x[3] = static_cast<float>(v.origin[0] + 0.5 * v.spacing[0]);
  h.srow_y[3] = static_cast<float>(v.origin[1] + 0.5 * v.spacing[1]);
  h.srow_z[3] = static_cast<float>(v.origin[2] + 0.5 * v.spacing[2]);
  std::memcpy(h.magic, "n+1", 4);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("nifti write: cannot open " + path);
  f.write(reinterpret_cast<const char*>(&h), sizeof(h));
  const char extender[4] = {0, 0, 0, 0};
  f.write(extender, 4);

  std::vector<float> buf(v.size());
  for (size_t i = 0; i < buf.size(); ++i)
    buf[i] = static_cast<float>(v.data[i]);
  f.write(reinterpret_cast<const char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!f) throw Error("nifti write: write failed for " + path);
}

}  // namespace srdti

#pragma once
#include <memory>
#include <string>
#include <utility>

#include "ibs2/grids.hpp"

namespace ibs2 {

// Binary artifact formats. Both use a 32-byte header:
//   bytes 0..7   magic ("IBS2FLD\0" for pixel fields, "IBS2FAR\0" for data)
//   bytes 8..11  version (u32 little-endian, currently 1)
//   bytes 12..15 n (u32): grid side for fields; receiver count or node count
//                for far-field data
//   bytes 16..19 dtype (u32): 0 = real f64, 1 = complex interleaved f64
//   bytes 20..23 flags (u32): far-field bit0 = 1 means a node-indexed vector
//                (length n) instead of an n x n receiver-major matrix
//   bytes 24..31 reserved; far-field files store the frequency here (f64)
// followed by the payload as row-major little-endian 8-byte floats (real) or
// interleaved re/im pairs (complex). Writes are atomic (temp file + rename).

inline constexpr std::uint32_t kFormatVersion = 1;

void write_field(const std::string& path, const RealField& f);
void write_field(const std::string& path, const ComplexField& f);

struct FieldFile {
    bool is_complex = false;
    RealField real{PixelGrid(2)};
    ComplexField complex_{PixelGrid(2)};
};
FieldFile read_field_file(const std::string& path);  // throws FormatError
RealField read_real_field(const std::string& path);  // throws FormatError if complex
ComplexField read_any_field(const std::string& path);  // complex view of either dtype

// Far-field matrix (receiver-major u[i * n_in + j], observation i, source j).
void write_farfield(const std::string& path, const FarFieldMatrix& m);
FarFieldMatrix read_farfield(const std::string& path);

// Node-indexed data vector (one frequency component at the p-nodes).
void write_pdata(const std::string& path, const PData& d);
PData read_pdata(const std::string& path, std::shared_ptr<const PNodeSet> nodes);

// CSV far-field import for hand-made fixtures: lines "i, j, re, im" with
// 0-based receiver i and source j; n_in and the frequency come from the
// caller. Unset entries default to zero; out-of-range indices are an error.
FarFieldMatrix read_farfield_csv(const std::string& path, int n_in, double k);

// Text documents (JSON sidecars, tables). Atomic like the binary writers.
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace ibs2

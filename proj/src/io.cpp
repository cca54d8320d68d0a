#include "ibs2/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ibs2/errors.hpp"

namespace ibs2 {
namespace {

constexpr char kMagicField[8] = {'I', 'B', 'S', '2', 'F', 'L', 'D', '\0'};
constexpr char kMagicFar[8] = {'I', 'B', 'S', '2', 'F', 'A', 'R', '\0'};

struct Header {
    char magic[8] = {};
    std::uint32_t version = kFormatVersion;
    std::uint32_t n = 0;
    std::uint32_t dtype = 0;  // 0 real f64, 1 complex f64 pairs
    std::uint32_t flags = 0;
    unsigned char reserved[8] = {};
};
static_assert(sizeof(Header) == 32, "artifact header must be exactly 32 bytes");

void put_u32(unsigned char* p, std::uint32_t v) {
    p[0] = static_cast<unsigned char>(v & 0xff);
    p[1] = static_cast<unsigned char>((v >> 8) & 0xff);
    p[2] = static_cast<unsigned char>((v >> 16) & 0xff);
    p[3] = static_cast<unsigned char>((v >> 24) & 0xff);
}

std::uint32_t get_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

void put_f64(unsigned char* p, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
}

double get_f64(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t(p[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::vector<unsigned char> encode_header(const char magic[8], std::uint32_t n,
                                         std::uint32_t dtype, std::uint32_t flags,
                                         double reserved_f64) {
    std::vector<unsigned char> h(32, 0);
    std::memcpy(h.data(), magic, 8);
    put_u32(h.data() + 8, kFormatVersion);
    put_u32(h.data() + 12, n);
    put_u32(h.data() + 16, dtype);
    put_u32(h.data() + 20, flags);
    put_f64(h.data() + 24, reserved_f64);
    return h;
}

void encode_doubles(std::vector<unsigned char>& out, const double* v, std::size_t count) {
    const std::size_t base = out.size();
    out.resize(base + 8 * count);
    for (std::size_t i = 0; i < count; ++i) put_f64(out.data() + base + 8 * i, v[i]);
}

void atomic_write(const std::string& path, const std::vector<unsigned char>& bytes) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw FormatError("cannot open for writing: " + tmp.string());
        f.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (!f) throw FormatError("short write: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw FormatError("cannot rename " + tmp.string() + " -> " + path + ": " + ec.message());
}

std::vector<unsigned char> read_all(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open: " + path);
    f.seekg(0, std::ios::end);
    const std::streamoff size = f.tellg();
    f.seekg(0);
    std::vector<unsigned char> bytes(static_cast<std::size_t>(size));
    f.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!f) throw FormatError("short read: " + path);
    return bytes;
}

struct Parsed {
    bool is_far = false;
    std::uint32_t n = 0, dtype = 0, flags = 0;
    double reserved = 0.0;
    const unsigned char* payload = nullptr;
    std::size_t payload_bytes = 0;
};

Parsed parse_header(const std::vector<unsigned char>& bytes, const std::string& path) {
    if (bytes.size() < 32) throw FormatError(path + ": file shorter than the 32-byte header");
    Parsed p;
    if (std::memcmp(bytes.data(), kMagicField, 8) == 0)
        p.is_far = false;
    else if (std::memcmp(bytes.data(), kMagicFar, 8) == 0)
        p.is_far = true;
    else
        throw FormatError(path + ": unrecognized magic");
    const std::uint32_t version = get_u32(bytes.data() + 8);
    if (version != kFormatVersion)
        throw FormatError(path + ": unsupported format version " + std::to_string(version));
    p.n = get_u32(bytes.data() + 12);
    p.dtype = get_u32(bytes.data() + 16);
    p.flags = get_u32(bytes.data() + 20);
    p.reserved = get_f64(bytes.data() + 24);
    if (p.dtype > 1) throw FormatError(path + ": unknown dtype tag " + std::to_string(p.dtype));
    p.payload = bytes.data() + 32;
    p.payload_bytes = bytes.size() - 32;
    return p;
}

void expect_payload(const Parsed& p, std::size_t scalars, const std::string& path) {
    const std::size_t want = 8 * scalars * (p.dtype == 1 ? 2 : 1);
    if (p.payload_bytes != want)
        throw FormatError(path + ": payload is " + std::to_string(p.payload_bytes) +
                          " bytes, expected " + std::to_string(want));
}

}  // namespace

void write_field(const std::string& path, const RealField& f) {
    std::vector<unsigned char> bytes =
        encode_header(kMagicField, static_cast<std::uint32_t>(f.grid.n), 0, 0, 0.0);
    encode_doubles(bytes, f.v.data(), f.v.size());
    atomic_write(path, bytes);
}

void write_field(const std::string& path, const ComplexField& f) {
    std::vector<unsigned char> bytes =
        encode_header(kMagicField, static_cast<std::uint32_t>(f.grid.n), 1, 0, 0.0);
    encode_doubles(bytes, reinterpret_cast<const double*>(f.v.data()), 2 * f.v.size());
    atomic_write(path, bytes);
}

FieldFile read_field_file(const std::string& path) {
    const auto bytes = read_all(path);
    const Parsed p = parse_header(bytes, path);
    if (p.is_far) throw FormatError(path + ": is a far-field file, expected a pixel field");
    if (p.n < 2) throw FormatError(path + ": invalid grid size " + std::to_string(p.n));
    const std::size_t ncells = std::size_t(p.n) * p.n;
    expect_payload(p, ncells, path);
    FieldFile out;
    out.is_complex = (p.dtype == 1);
    const PixelGrid grid(static_cast<int>(p.n));
    if (out.is_complex) {
        out.complex_ = ComplexField(grid);
        for (std::size_t i = 0; i < ncells; ++i)
            out.complex_.v[i] = cplx(get_f64(p.payload + 16 * i), get_f64(p.payload + 16 * i + 8));
    } else {
        out.real = RealField(grid);
        for (std::size_t i = 0; i < ncells; ++i) out.real.v[i] = get_f64(p.payload + 8 * i);
    }
    return out;
}

RealField read_real_field(const std::string& path) {
    FieldFile f = read_field_file(path);
    if (f.is_complex) throw FormatError(path + ": holds complex data, expected real");
    return f.real;
}

ComplexField read_any_field(const std::string& path) {
    FieldFile f = read_field_file(path);
    return f.is_complex ? f.complex_ : to_complex(f.real);
}

void write_farfield(const std::string& path, const FarFieldMatrix& m) {
    if (m.obs.M != m.inc.M)
        throw InvalidArgument("write_farfield: observation/incident counts differ");
    std::uint32_t flags = m.scaled ? 2u : 0u;
    std::vector<unsigned char> bytes =
        encode_header(kMagicFar, static_cast<std::uint32_t>(m.obs.M), 1, flags, m.k);
    encode_doubles(bytes, reinterpret_cast<const double*>(m.u.data()), 2 * m.u.size());
    atomic_write(path, bytes);
}

FarFieldMatrix read_farfield(const std::string& path) {
    const auto bytes = read_all(path);
    const Parsed p = parse_header(bytes, path);
    if (!p.is_far) throw FormatError(path + ": is a pixel-field file, expected far-field data");
    if (p.flags & 1u) throw FormatError(path + ": holds node data, expected a receiver matrix");
    if (p.dtype != 1) throw FormatError(path + ": far-field payload must be complex");
    if (p.n < 1) throw FormatError(path + ": invalid receiver count");
    const DirectionSet dirs(static_cast<int>(p.n));
    FarFieldMatrix m(dirs, dirs, p.reserved);
    expect_payload(p, m.u.size(), path);
    for (std::size_t i = 0; i < m.u.size(); ++i)
        m.u[i] = cplx(get_f64(p.payload + 16 * i), get_f64(p.payload + 16 * i + 8));
    m.scaled = (p.flags & 2u) != 0;
    return m;
}

void write_pdata(const std::string& path, const PData& d) {
    std::vector<unsigned char> bytes =
        encode_header(kMagicFar, static_cast<std::uint32_t>(d.v.size()), 1, 1u, d.k);
    encode_doubles(bytes, reinterpret_cast<const double*>(d.v.data()), 2 * d.v.size());
    atomic_write(path, bytes);
}

PData read_pdata(const std::string& path, std::shared_ptr<const PNodeSet> nodes) {
    const auto bytes = read_all(path);
    const Parsed p = parse_header(bytes, path);
    if (!p.is_far) throw FormatError(path + ": is a pixel-field file, expected node data");
    if (!(p.flags & 1u)) throw FormatError(path + ": holds a receiver matrix, expected node data");
    if (p.dtype != 1) throw FormatError(path + ": node payload must be complex");
    if (!nodes) throw InvalidArgument("read_pdata: node set required");
    if (p.n != nodes->size())
        throw FormatError(path + ": holds " + std::to_string(p.n) + " nodes, expected " +
                          std::to_string(nodes->size()));
    PData d(std::move(nodes), p.reserved);
    expect_payload(p, d.v.size(), path);
    for (std::size_t i = 0; i < d.v.size(); ++i)
        d.v[i] = cplx(get_f64(p.payload + 16 * i), get_f64(p.payload + 16 * i + 8));
    return d;
}

FarFieldMatrix read_farfield_csv(const std::string& path, int n_in, double k) {
    if (n_in < 1) throw InvalidArgument("read_farfield_csv: n_in must be >= 1");
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open: " + path);
    const DirectionSet dirs(n_in);
    FarFieldMatrix m(dirs, dirs, k);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        // strip comments and blanks
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ss(line);
        long i = -1, j = -1;
        double re = 0.0, im = 0.0;
        if (!(ss >> i >> j >> re >> im))
            throw FormatError(path + ":" + std::to_string(lineno) +
                              ": expected 'i, j, re, im'");
        if (i < 0 || i >= n_in || j < 0 || j >= n_in)
            throw FormatError(path + ":" + std::to_string(lineno) + ": index (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ") outside 0.." + std::to_string(n_in - 1));
        m.at(static_cast<int>(i), static_cast<int>(j)) = cplx(re, im);
    }
    return m;
}

void write_text(const std::string& path, const std::string& content) {
    std::vector<unsigned char> bytes(content.begin(), content.end());
    atomic_write(path, bytes);
}

std::string read_text(const std::string& path) {
    const auto bytes = read_all(path);
    return std::string(bytes.begin(), bytes.end());
}

}  // namespace ibs2

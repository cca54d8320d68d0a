#include "ibs2/render.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "ibs2/errors.hpp"
#include "ibs2/io.hpp"

namespace ibs2 {
namespace {

// ---------------------------------------------------------------------------
// PNG plumbing
// ---------------------------------------------------------------------------

void put_be32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    out.push_back(static_cast<unsigned char>(v & 0xff));
}

void put_chunk(std::vector<unsigned char>& out, const char type[4],
               const std::vector<unsigned char>& payload) {
    put_be32(out, static_cast<std::uint32_t>(payload.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    const auto crc =
        crc32(0L, out.data() + start, static_cast<uInt>(out.size() - start));
    put_be32(out, static_cast<std::uint32_t>(crc));
}

// ---------------------------------------------------------------------------
// Colormap: diverging blue-white-red, symmetric about zero.
// ---------------------------------------------------------------------------

struct Rgb {
    unsigned char r, g, b;
};

Rgb diverging(double t) {  // t in [-1, 1]
    t = std::clamp(t, -1.0, 1.0);
    const double lo[3] = {59.0, 76.0, 192.0};   // deep blue
    const double mid[3] = {245.0, 245.0, 245.0};  // near white
    const double hi[3] = {180.0, 4.0, 38.0};    // deep red
    double c[3];
    if (t < 0.0) {
        for (int i = 0; i < 3; ++i) c[i] = mid[i] + (-t) * (lo[i] - mid[i]);
    } else {
        for (int i = 0; i < 3; ++i) c[i] = mid[i] + t * (hi[i] - mid[i]);
    }
    return {static_cast<unsigned char>(std::lround(c[0])),
            static_cast<unsigned char>(std::lround(c[1])),
            static_cast<unsigned char>(std::lround(c[2]))};
}

// ---------------------------------------------------------------------------
// 5x7 bitmap glyphs for panel labels (lowercase letters, digits and a few
// symbols). Each glyph is 7 rows of 5 bits, msb = leftmost column.
// ---------------------------------------------------------------------------

struct Glyph {
    char ch;
    unsigned char rows[7];
};

constexpr Glyph kFont[] = {
    {'a', {0x00, 0x00, 0x0e, 0x01, 0x0f, 0x11, 0x0f}},
    {'b', {0x10, 0x10, 0x1e, 0x11, 0x11, 0x11, 0x1e}},
    {'c', {0x00, 0x00, 0x0e, 0x11, 0x10, 0x11, 0x0e}},
    {'d', {0x01, 0x01, 0x0f, 0x11, 0x11, 0x11, 0x0f}},
    {'e', {0x00, 0x00, 0x0e, 0x11, 0x1f, 0x10, 0x0e}},
    {'f', {0x06, 0x09, 0x08, 0x1c, 0x08, 0x08, 0x08}},
    {'g', {0x00, 0x0f, 0x11, 0x11, 0x0f, 0x01, 0x0e}},
    {'h', {0x10, 0x10, 0x1e, 0x11, 0x11, 0x11, 0x11}},
    {'i', {0x04, 0x00, 0x0c, 0x04, 0x04, 0x04, 0x0e}},
    {'j', {0x02, 0x00, 0x06, 0x02, 0x02, 0x12, 0x0c}},
    {'k', {0x10, 0x10, 0x12, 0x14, 0x18, 0x14, 0x12}},
    {'l', {0x0c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0e}},
    {'m', {0x00, 0x00, 0x1a, 0x15, 0x15, 0x15, 0x15}},
    {'n', {0x00, 0x00, 0x1e, 0x11, 0x11, 0x11, 0x11}},
    {'o', {0x00, 0x00, 0x0e, 0x11, 0x11, 0x11, 0x0e}},
    {'p', {0x00, 0x00, 0x1e, 0x11, 0x1e, 0x10, 0x10}},
    {'q', {0x00, 0x00, 0x0f, 0x11, 0x0f, 0x01, 0x01}},
    {'r', {0x00, 0x00, 0x16, 0x19, 0x10, 0x10, 0x10}},
    {'s', {0x00, 0x00, 0x0f, 0x10, 0x0e, 0x01, 0x1e}},
    {'t', {0x08, 0x08, 0x1c, 0x08, 0x08, 0x09, 0x06}},
    {'u', {0x00, 0x00, 0x11, 0x11, 0x11, 0x13, 0x0d}},
    {'v', {0x00, 0x00, 0x11, 0x11, 0x11, 0x0a, 0x04}},
    {'w', {0x00, 0x00, 0x11, 0x11, 0x15, 0x15, 0x0a}},
    {'x', {0x00, 0x00, 0x11, 0x0a, 0x04, 0x0a, 0x11}},
    {'y', {0x00, 0x00, 0x11, 0x11, 0x0f, 0x01, 0x0e}},
    {'z', {0x00, 0x00, 0x1f, 0x02, 0x04, 0x08, 0x1f}},
    {'0', {0x0e, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0e}},
    {'1', {0x04, 0x0c, 0x04, 0x04, 0x04, 0x04, 0x0e}},
    {'2', {0x0e, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1f}},
    {'3', {0x1f, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0e}},
    {'4', {0x02, 0x06, 0x0a, 0x12, 0x1f, 0x02, 0x02}},
    {'5', {0x1f, 0x10, 0x1e, 0x01, 0x01, 0x11, 0x0e}},
    {'6', {0x06, 0x08, 0x10, 0x1e, 0x11, 0x11, 0x0e}},
    {'7', {0x1f, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0e, 0x11, 0x11, 0x0e, 0x11, 0x11, 0x0e}},
    {'9', {0x0e, 0x11, 0x11, 0x0f, 0x01, 0x02, 0x0c}},
    {'=', {0x00, 0x00, 0x1f, 0x00, 0x1f, 0x00, 0x00}},
    {'_', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1f}},
    {'-', {0x00, 0x00, 0x00, 0x1f, 0x00, 0x00, 0x00}},
    {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0c, 0x0c}},
    {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},
};

const Glyph* find_glyph(char c) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    for (const Glyph& g : kFont)
        if (g.ch == c) return &g;
    return nullptr;
}

void draw_label(std::vector<unsigned char>& rgb, int width, int x0, int y0,
                const std::string& text) {
    int x = x0;
    for (char c : text) {
        const Glyph* g = find_glyph(c);
        if (g) {
            for (int r = 0; r < 7; ++r)
                for (int col = 0; col < 5; ++col)
                    if (g->rows[r] & (1 << (4 - col))) {
                        const int px = x + col, py = y0 + r;
                        const std::size_t at = 3 * (std::size_t(py) * width + px);
                        rgb[at] = rgb[at + 1] = rgb[at + 2] = 20;
                    }
        }
        x += 6;
    }
}

}  // namespace

std::vector<unsigned char> encode_png_rgb(const std::vector<unsigned char>& rgb, int width,
                                          int height) {
    if (width < 1 || height < 1 ||
        rgb.size() != 3 * std::size_t(width) * std::size_t(height))
        throw InvalidArgument("encode_png_rgb: buffer size does not match dimensions");

    // filter byte 0 per scanline
    std::vector<unsigned char> raw;
    raw.reserve((3 * std::size_t(width) + 1) * height);
    for (int y = 0; y < height; ++y) {
        raw.push_back(0);
        const unsigned char* line = rgb.data() + 3 * std::size_t(y) * width;
        raw.insert(raw.end(), line, line + 3 * std::size_t(width));
    }

    uLongf zcap = compressBound(static_cast<uLong>(raw.size()));
    std::vector<unsigned char> z(zcap);
    if (compress2(z.data(), &zcap, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw NumericFailure("encode_png_rgb: deflate failed");
    z.resize(zcap);

    std::vector<unsigned char> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<unsigned char> ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(width));
    put_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // color type RGB
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter
    ihdr.push_back(0);   // interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", z);
    put_chunk(out, "IEND", {});
    return out;
}

void render_png(const std::string& path, const std::vector<std::vector<Panel>>& rows,
                int cell_px) {
    if (rows.empty()) throw InvalidArgument("render_png: no panels");
    if (cell_px < 16) throw InvalidArgument("render_png: cell_px too small");
    std::size_t ncols = 0;
    for (const auto& row : rows) ncols = std::max(ncols, row.size());
    if (ncols == 0) throw InvalidArgument("render_png: empty row");

    const int label_h = 12;
    const int pad = 4;
    const int cell_w = cell_px + pad;
    const int cell_h = cell_px + label_h + pad;
    const int width = static_cast<int>(ncols) * cell_w + pad;
    const int height = static_cast<int>(rows.size()) * cell_h + pad;
    std::vector<unsigned char> rgb(3 * std::size_t(width) * height, 255);

    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const auto& row = rows[ri];
        double vmax = 0.0;
        for (const Panel& p : row)
            for (double v : p.field.v) vmax = std::max(vmax, std::abs(v));
        for (std::size_t ci = 0; ci < row.size(); ++ci) {
            const Panel& p = row[ci];
            const PixelGrid& g = p.field.grid;
            const int ox = pad + static_cast<int>(ci) * cell_w;
            const int oy = pad + static_cast<int>(ri) * cell_h + label_h;
            draw_label(rgb, width, ox, oy - label_h + 2, p.label);
            for (int py = 0; py < cell_px; ++py) {
                // image rows run top-down; field y runs bottom-up
                const int iy = g.n - 1 - std::min(py * g.n / cell_px, g.n - 1);
                for (int px = 0; px < cell_px; ++px) {
                    const int ix = std::min(px * g.n / cell_px, g.n - 1);
                    const double v = p.field.v[g.index(ix, iy)];
                    const Rgb c = diverging(vmax > 0.0 ? v / vmax : 0.0);
                    const std::size_t at =
                        3 * (std::size_t(oy + py) * width + (ox + px));
                    rgb[at] = c.r;
                    rgb[at + 1] = c.g;
                    rgb[at + 2] = c.b;
                }
            }
        }
    }

    const std::vector<unsigned char> png = encode_png_rgb(rgb, width, height);
    write_text(path, std::string(png.begin(), png.end()));
}

}  // namespace ibs2

#pragma once
#include <string>
#include <vector>

#include "ibs2/grids.hpp"

namespace ibs2 {

// One heatmap panel: a pixel field plus a short label drawn into the image.
struct Panel {
    RealField field;
    std::string label;
};

// Render rows of panels to an 8-bit RGB PNG. Every panel in a row shares one
// diverging color scale, symmetric about zero with limits +- max |value|
// across the row (an all-zero row renders flat). Pure function of its
// inputs: rendering never mutates numerical artifacts.
void render_png(const std::string& path, const std::vector<std::vector<Panel>>& rows,
                int cell_px = 192);

// Raw PNG encoder for an 8-bit RGB image (row-major, 3 bytes per pixel).
std::vector<unsigned char> encode_png_rgb(const std::vector<unsigned char>& rgb, int width,
                                          int height);

}  // namespace ibs2

#pragma once
#include <cstdint>
#include <string>
#include <utility>

#include "ibs2/grids.hpp"

namespace ibs2 {

// Random test-medium generator: masked weighted sums of Gaussians on the
// pixel grid. Two kinds:
//   unseparated — J bumps per field, amplitudes c in [0, 1/J), peak at
//     (r cos t, r sin t) with r in [0, 0.5), t in [0, 2 pi), FWHM
//     R in (1 - max(|x|,|y|)) * [0.3, 1), sigma = R (8 ln 2)^{-1/2};
//   separated — 2 bumps per field at (r cos t +/- 0.3, r sin t +/- 0.3),
//     amplitudes c+- in [0, 0.5), FWHM R+- in
//     (1 - max(|x +/- 0.3 + 0.2|, |y +/- 0.3 + 0.2|)) * [0.3, 1).
// All parameters are drawn from seeded uniform distributions; gamma and eta
// use independent draws (generator streams split(1) and split(2) of the
// seed). Draw order per bump: amplitude, r, theta, then FWHM (unseparated);
// per field: r, theta, c+, c-, R+, R- (separated).
struct MediaSpec {
    enum class Kind { unseparated, separated };
    Kind kind = Kind::unseparated;
    int J = 5;  // bump count per field (unseparated kind only)
    std::uint64_t seed = 0;
    // Optional peak-magnitude rescale applied after sampling: when > 0 the
    // field is scaled so its maximum value equals the target. Zero fields
    // are left unchanged.
    double magnitude_gamma = 0.0;
    double magnitude_eta = 0.0;
};

MediaSpec::Kind media_kind_from_string(const std::string& s);  // throws InvalidArgument
std::string to_string(MediaSpec::Kind kind);

// Sample (gamma, eta) on the grid; fields are masked to the unit disk.
std::pair<RealField, RealField> generate_media(const MediaSpec& spec, const PixelGrid& grid);

}  // namespace ibs2

#include "ibs2/media.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ibs2/errors.hpp"
#include "ibs2/rng.hpp"

namespace ibs2 {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
// FWHM-to-sigma conversion factor (8 ln 2)^{-1/2}.
const double kFwhm = 1.0 / std::sqrt(8.0 * std::log(2.0));

struct Bump {
    double c = 0.0, x = 0.0, y = 0.0, sigma = 0.0;
};

void add_bump(RealField& f, const Bump& b) {
    if (b.c == 0.0) return;
    const PixelGrid& g = f.grid;
    const double inv = 1.0 / (2.0 * b.sigma * b.sigma);
    for (int ix = 0; ix < g.n; ++ix) {
        const double dx = g.center(ix) - b.x;
        for (int iy = 0; iy < g.n; ++iy) {
            const double dy = g.center(iy) - b.y;
            f.v[g.index(ix, iy)] += b.c * std::exp(-(dx * dx + dy * dy) * inv);
        }
    }
}

std::vector<Bump> sample_unseparated(Rng& rng, int J) {
    std::vector<Bump> out;
    out.reserve(J);
    for (int j = 0; j < J; ++j) {
        Bump b;
        b.c = rng.uniform(0.0, 1.0 / J);
        const double r = rng.uniform(0.0, 0.5);
        const double t = rng.uniform(0.0, kTwoPi);
        b.x = r * std::cos(t);
        b.y = r * std::sin(t);
        const double cap = 1.0 - std::max(std::abs(b.x), std::abs(b.y));
        b.sigma = rng.uniform(0.3 * cap, cap) * kFwhm;
        out.push_back(b);
    }
    return out;
}

std::vector<Bump> sample_separated(Rng& rng) {
    const double r = rng.uniform(0.0, 0.5);
    const double t = rng.uniform(0.0, kTwoPi);
    const double cp = rng.uniform(0.0, 0.5);
    const double cm = rng.uniform(0.0, 0.5);
    std::vector<Bump> out(2);
    out[0].c = cp;
    out[0].x = r * std::cos(t) + 0.3;
    out[0].y = r * std::sin(t) + 0.3;
    out[1].c = cm;
    out[1].x = r * std::cos(t) - 0.3;
    out[1].y = r * std::sin(t) - 0.3;
    for (Bump& b : out) {
        const double cap = 1.0 - std::max(std::abs(b.x + 0.2), std::abs(b.y + 0.2));
        b.sigma = rng.uniform(0.3 * cap, cap) * kFwhm;
    }
    return out;
}

RealField build_field(const PixelGrid& grid, const std::vector<Bump>& bumps, double magnitude) {
    RealField f(grid);
    for (const Bump& b : bumps) add_bump(f, b);
    f.apply_mask();
    if (magnitude > 0.0) {
        const double peak = *std::max_element(f.v.begin(), f.v.end());
        if (peak > 0.0) {
            const double s = magnitude / peak;
            for (double& v : f.v) v *= s;
        }
    }
    return f;
}

}  // namespace

MediaSpec::Kind media_kind_from_string(const std::string& s) {
    if (s == "unseparated") return MediaSpec::Kind::unseparated;
    if (s == "separated") return MediaSpec::Kind::separated;
    throw InvalidArgument("media kind must be 'unseparated' or 'separated', got '" + s + "'");
}

std::string to_string(MediaSpec::Kind kind) {
    return kind == MediaSpec::Kind::unseparated ? "unseparated" : "separated";
}

std::pair<RealField, RealField> generate_media(const MediaSpec& spec, const PixelGrid& grid) {
    if (spec.J < 1) throw InvalidArgument("MediaSpec: J must be >= 1");
    Rng root(spec.seed);
    Rng rg = root.split(1);
    Rng re = root.split(2);
    std::vector<Bump> bg, be;
    if (spec.kind == MediaSpec::Kind::unseparated) {
        bg = sample_unseparated(rg, spec.J);
        be = sample_unseparated(re, spec.J);
    } else {
        bg = sample_separated(rg);
        be = sample_separated(re);
    }
    return {build_field(grid, bg, spec.magnitude_gamma), build_field(grid, be, spec.magnitude_eta)};
}

}  // namespace ibs2

#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ibs2/inverse_born.hpp"
#include "ibs2/media.hpp"

namespace ibs2 {

// Run configuration shared by the CLI subcommands. JSON layout:
//   grid.n_out, directions.n_in, freq.k, freq.ell, pnodes.T, pnodes.M,
//   recon.alpha_tilde, recon.epsilon, recon.N,
//   recon.term_frequencies ([[k, lk], ...]),
//   synth.J_max, synth.tol, noise.level, noise.seed,
//   media.kind, media.J, media.seed, media.magnitude_gamma,
//   media.magnitude_eta.
// Every group and key is optional; unknown keys are rejected as malformed.
struct RunConfig {
    int n_out = 64;
    int n_in = 64;
    double k = 5.0;
    double ell = 2.0;
    int T = 0;  // 0 = default ceil(k) + 8
    int M = 0;  // 0 = default 4 T
    ReconParams recon;
    int J_max = 20;
    double synth_tol = 1e-8;
    double noise_level = 0.02;
    std::uint64_t noise_seed = 0;
    MediaSpec media;
};

// Parse and validate a JSON config file. Malformed or unknown content throws
// FormatError with a line-level message.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text, const std::string& origin);

// Canonical JSON echo of a config (used in provenance sidecars).
std::string config_to_json(const RunConfig& cfg);

// Basis cache directory from the IBS2_CACHE_DIR environment variable; empty
// when unset (caching disabled).
std::string cache_dir_from_env();

}  // namespace ibs2

// Batch CLI: basis preparation, data synthesis, far-field import, series
// inversion, bound reports, and PNG rendering.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ibs2/analysis.hpp"
#include "ibs2/basis_io.hpp"
#include "ibs2/born_forward.hpp"
#include "ibs2/config.hpp"
#include "ibs2/errors.hpp"
#include "ibs2/fourier.hpp"
#include "ibs2/grids.hpp"
#include "ibs2/inverse_born.hpp"
#include "ibs2/io.hpp"
#include "ibs2/media.hpp"
#include "ibs2/pswf.hpp"
#include "ibs2/render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ibs2;

namespace {

std::shared_ptr<const PNodeSet> nodes_from(double k, int T, int M) {
    if (T <= 0) return std::make_shared<const PNodeSet>(default_pnodes(k));
    return std::make_shared<const PNodeSet>(build_pnodes(T, M > 0 ? M : 4 * T));
}

// Build the retained basis at c = 2k, consulting the cache directory when
// IBS2_CACHE_DIR is set. Cached documents round-trip doubles exactly, so a
// cache hit reproduces the in-process build bit for bit.
std::shared_ptr<const PswfBasis> acquire_basis(double k, double alpha_tilde,
                                               const PNodeSet& nodes, std::string* source) {
    const double c = 2.0 * k;
    const std::string dir = cache_dir_from_env();
    fs::path cache_file;
    if (!dir.empty()) {
        cache_file = fs::path(dir) / basis_cache_name(c, alpha_tilde, nodes.T, nodes.M);
        if (fs::exists(cache_file)) {
            if (source) *source = "cache:" + cache_file.string();
            return std::make_shared<const PswfBasis>(
                basis_from_json(read_text(cache_file.string()), cache_file.string()));
        }
    }
    auto basis = std::make_shared<const PswfBasis>(build_basis(c, alpha_tilde, nodes));
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (!ec) write_text(cache_file.string(), basis_to_json(*basis));
    }
    if (source) *source = "built";
    return basis;
}

json synthesis_block(const ScatterDataset& data) {
    return json{{"all_converged", data.all_converged()},
                {"converged1", data.converged1},
                {"converged2", data.converged2},
                {"term_norms1", data.term_norms1},
                {"term_norms2", data.term_norms2}};
}

// ---------------------------------------------------------------------------
// pswf
// ---------------------------------------------------------------------------
int run_pswf(double k, double alpha_tilde, int T, int M, const std::string& out_dir) {
    auto nodes = nodes_from(k, T, M);
    std::string source;
    auto basis = acquire_basis(k, alpha_tilde, *nodes, &source);

    fs::create_directories(out_dir);
    std::string csv = "m,n,l,chi,alpha_re,alpha_im,abs_alpha,residual\n";
    char line[256];
    for (const PswfEntry& e : basis->entries) {
        std::snprintf(line, sizeof line, "%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.m, e.n,
                      e.l, e.chi, e.alpha.real(), e.alpha.imag(), std::abs(e.alpha),
                      e.residual);
        csv += line;
    }
    write_text((fs::path(out_dir) / "pswf_table.csv").string(), csv);
    write_text(
        (fs::path(out_dir) / basis_cache_name(2.0 * k, alpha_tilde, nodes->T, nodes->M)).string(),
        basis_to_json(*basis));
    std::printf("basis c=%g alpha_tilde=%g: %zu retained modes, |alpha00|=%.12g, cutoff=%.12g (%s)\n",
                basis->c, basis->alpha_tilde, basis->entries.size(), std::abs(basis->alpha00),
                basis->cutoff(), source.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------
int run_synth(const std::string& config_path, const std::string& prefix) {
    const RunConfig cfg = load_config(config_path);
    const PixelGrid grid(cfg.n_out);
    auto nodes = nodes_from(cfg.k, cfg.T, cfg.M);
    auto [gamma, eta] = generate_media(cfg.media, grid);

    KernelCache cache;
    const ScatterDataset clean =
        synthesize(gamma, eta, cfg.k, cfg.ell, nodes, cfg.J_max, cfg.synth_tol, &cache);
    const ScatterDataset data = add_noise(clean, cfg.noise_level, cfg.noise_seed);

    write_field(prefix + ".gamma.fld", gamma);
    write_field(prefix + ".eta.fld", eta);
    write_pdata(prefix + ".comp1.far", data.comp1);
    write_pdata(prefix + ".comp2.far", data.comp2);

    const json side = {
        {"config", json::parse(config_to_json(cfg))},
        {"nodes",
         {{"T", nodes->T}, {"M", nodes->M}, {"count", nodes->size()},
          {"min_radius", nodes->min_radius()}}},
        {"data",
         {{"norm1", pdata_norm(data.comp1)},
          {"norm2", pdata_norm(data.comp2)},
          {"clean_norm1", pdata_norm(clean.comp1)},
          {"clean_norm2", pdata_norm(clean.comp2)}}},
        {"synthesis", synthesis_block(clean)},
        {"noise",
         {{"level", cfg.noise_level},
          {"seed", cfg.noise_seed},
          {"model",
           "additive complex Gaussian, rescaled per frequency component to "
           "||delta||_2 = level * ||component||_2; xoshiro256++ child streams 1 and 2 "
           "of noise.seed"}}},
        {"provenance", data.provenance},
    };
    write_text(prefix + ".json", side.dump(2) + "\n");
    std::printf("synth: %zu nodes, converged=%d, wrote %s.{gamma,eta}.fld %s.comp{1,2}.far %s.json\n",
                nodes->size(), int(clean.all_converged()), prefix.c_str(), prefix.c_str(),
                prefix.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// import
// ---------------------------------------------------------------------------
int run_import(const std::string& file, double k, bool csv, int n_in, int T, int M,
               const std::string& out) {
    FarFieldMatrix raw = csv ? read_farfield_csv(file, n_in, k) : read_farfield(file);
    if (!csv && raw.k != k && k > 0.0)
        std::fprintf(stderr, "note: file frequency %g overrides --k %g\n", raw.k, k);
    const double keff = csv ? k : raw.k;
    if (!(keff > 0.0)) throw InvalidArgument("import: frequency must be positive");

    const FarFieldMatrix scaled = raw.scaled ? raw : scale_farfield(raw);
    auto nodes = nodes_from(keff, T, M);
    MappingReport report;
    const PData mapped = map_farfield_to_pnodes(scaled, nodes, &report);
    write_pdata(out, mapped);
    const json side = {{"source", file},
                       {"k", keff},
                       {"n_in", scaled.inc.M},
                       {"nodes",
                        {{"T", nodes->T}, {"M", nodes->M}, {"count", nodes->size()},
                         {"min_radius", nodes->min_radius()}}},
                       {"max_assignment_distance", report.max_distance},
                       {"norm", pdata_norm(mapped)}};
    write_text(out + ".json", side.dump(2) + "\n");
    std::printf("import: %d x %d samples -> %zu nodes, max assignment distance %.6g\n",
                scaled.obs.M, scaled.inc.M, nodes->size(), report.max_distance);
    return 0;
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------
int run_invert(const std::string& config_path, const std::string& data_prefix,
               const std::string& data1, const std::string& data2, const std::string& prefix,
               bool no_truth) {
    const RunConfig cfg = load_config(config_path);
    const PixelGrid grid(cfg.n_out);
    auto nodes = nodes_from(cfg.k, cfg.T, cfg.M);

    ScatterDataset data;
    data.nodes = nodes;
    data.k = cfg.k;
    data.ell = cfg.ell;
    std::string truth_gamma_path, truth_eta_path;
    if (!data_prefix.empty()) {
        data.comp1 = read_pdata(data_prefix + ".comp1.far", nodes);
        data.comp2 = read_pdata(data_prefix + ".comp2.far", nodes);
        truth_gamma_path = data_prefix + ".gamma.fld";
        truth_eta_path = data_prefix + ".eta.fld";
    } else {
        data.comp1 = read_pdata(data1, nodes);
        data.comp2 = read_pdata(data2, nodes);
    }
    if (std::abs(data.comp1.k - cfg.k) > 1e-9 * std::max(1.0, cfg.k))
        throw FormatError("invert: component 1 frequency " + std::to_string(data.comp1.k) +
                          " does not match freq.k");
    if (std::abs(data.comp2.k - cfg.ell * cfg.k) > 1e-9 * std::max(1.0, cfg.ell * cfg.k))
        throw FormatError("invert: component 2 frequency " + std::to_string(data.comp2.k) +
                          " does not match freq.ell * freq.k");

    std::string basis_source;
    auto basis = acquire_basis(cfg.k, cfg.recon.alpha_tilde, *nodes, &basis_source);
    std::fprintf(stderr, "invert: basis %s\n", basis_source.c_str());

    KernelCache cache;
    const ReconResult res = ibs_reconstruct(data, basis, cfg.recon, grid, &cache);

    for (int j = 1; j <= res.N_completed; ++j) {
        const auto& ps = res.partial_sums[j - 1];
        write_field(prefix + ".gamma" + std::to_string(j) + ".fld", real_part(ps.first));
        write_field(prefix + ".eta" + std::to_string(j) + ".fld", real_part(ps.second));
        const auto& t = res.terms[j - 1];
        write_field(prefix + ".psi" + std::to_string(j) + ".gamma.fld", t.first);
        write_field(prefix + ".psi" + std::to_string(j) + ".eta.fld", t.second);
    }
    write_field(prefix + ".gamma.fld", res.gamma());
    write_field(prefix + ".eta.fld", res.eta());

    json metrics = {
        {"config", json::parse(config_to_json(cfg))},
        {"basis",
         {{"entries", basis->entries.size()},
          {"abs_alpha00", std::abs(basis->alpha00)}}},
        {"epsilon_used", res.epsilon_used},
        {"N_requested", res.N_requested},
        {"N_completed", res.N_completed},
        {"truncated", res.truncated},
        {"warning", res.warning},
        {"term_norms", res.term_norms},
        {"ratios", res.ratios},
        {"imag_residuals", res.imag_residuals},
    };
    if (res.real_projection_delta >= 0.0)
        metrics["real_projection_delta"] = res.real_projection_delta;

    // truth-based metrics and measure-dependent bounds when available
    double measure = 0.0;
    if (!no_truth && !truth_gamma_path.empty() && fs::exists(truth_gamma_path) &&
        fs::exists(truth_eta_path)) {
        const RealField tg = read_real_field(truth_gamma_path);
        const RealField te = read_real_field(truth_eta_path);
        json per_n = json::array();
        for (int j = 1; j <= res.N_completed; ++j) {
            const RelErrors e = rel_l2_error(tg, te, real_part(res.partial_sums[j - 1].first),
                                             real_part(res.partial_sums[j - 1].second));
            per_n.push_back({{"N", j},
                             {"e_gamma", e.e_gamma},
                             {"e_eta", e.e_eta},
                             {"e_joint", e.e_joint},
                             {"absolute_gamma", e.absolute_gamma},
                             {"absolute_eta", e.absolute_eta}});
        }
        metrics["errors"] = per_n;
        try {
            measure = measure_M(tg, te);
        } catch (const MeasureUndefined&) {
            measure = 0.0;
        }
    }
    const BoundsReport bounds = compute_bounds(cfg.k, cfg.ell, cfg.recon.alpha_tilde,
                                               res.epsilon_used, measure,
                                               std::abs(basis->alpha00));
    const ConvergenceReport diag = convergence_diagnostics(res, bounds);
    metrics["diagnostics"] = {{"psi1_norm", diag.psi1_norm},
                              {"radius", diag.radius},
                              {"C_ratio", diag.C_ratio},
                              {"predicted_convergent", diag.predicted_convergent},
                              {"empirical_divergence", diag.empirical_divergence}};
    metrics["bounds"] = json::parse(bounds_to_json(bounds));
    write_text(prefix + ".metrics.json", metrics.dump(2) + "\n");

    std::printf("invert: N=%d/%d%s, epsilon=%.6g, ||psi_1||=%.6g, wrote %s.*\n", res.N_completed,
                res.N_requested, res.truncated ? " (truncated)" : "", res.epsilon_used,
                diag.psi1_norm, prefix.c_str());
    if (!res.warning.empty()) std::fprintf(stderr, "warning: %s\n", res.warning.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------
int run_bounds(const std::string& config_path, double measure_override,
               const std::string& out) {
    const RunConfig cfg = load_config(config_path);
    auto nodes = nodes_from(cfg.k, cfg.T, cfg.M);
    std::string basis_source;
    auto basis = acquire_basis(cfg.k, cfg.recon.alpha_tilde, *nodes, &basis_source);

    double measure = measure_override;
    if (measure <= 0.0) {
        const PixelGrid grid(cfg.n_out);
        auto [gamma, eta] = generate_media(cfg.media, grid);
        try {
            measure = measure_M(gamma, eta);
        } catch (const MeasureUndefined&) {
            measure = 0.0;
        }
    }
    const double eps = cfg.recon.epsilon > 0.0 ? cfg.recon.epsilon : nodes->min_radius();
    const BoundsReport report =
        compute_bounds(cfg.k, cfg.ell, cfg.recon.alpha_tilde, eps, measure,
                       std::abs(basis->alpha00));
    const std::string doc = bounds_to_json(report);
    std::printf("%s\n", doc.c_str());
    if (!out.empty()) write_text(out, doc + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// render
// ---------------------------------------------------------------------------
int run_render(const std::vector<std::string>& row_specs, const std::string& out, int cell_px) {
    std::vector<std::vector<Panel>> rows;
    for (const std::string& spec : row_specs) {
        std::vector<Panel> row;
        std::size_t start = 0;
        while (start <= spec.size()) {
            const std::size_t comma = spec.find(',', start);
            const std::string token = spec.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!token.empty()) {
                const ComplexField f = read_any_field(token);
                row.push_back(Panel{real_part(f), fs::path(token).stem().string()});
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (row.empty()) throw InvalidArgument("render: empty --row");
        rows.push_back(std::move(row));
    }
    render_png(out, rows, cell_px);
    std::printf("render: wrote %s (%zu rows)\n", out.c_str(), rows.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-frequency scattering synthesis and inverse-series reconstruction"};
    app.require_subcommand(1);

    // pswf
    auto* sc_pswf = app.add_subcommand("pswf", "build and cache a spectral basis");
    double p_k = 5.0, p_at = 0.9;
    int p_T = 0, p_M = 0;
    std::string p_out = ".";
    sc_pswf->add_option("--k", p_k, "wavenumber (basis bandwidth c = 2k)")->required();
    sc_pswf->add_option("--alpha-tilde", p_at, "retention threshold in (0,1)");
    sc_pswf->add_option("--T", p_T, "radial node count (0 = default)");
    sc_pswf->add_option("--M", p_M, "angular node count (0 = 4T)");
    sc_pswf->add_option("--out", p_out, "output directory")->required();

    // synth
    auto* sc_synth = app.add_subcommand("synth", "generate media and synthesize scattering data");
    std::string s_config, s_out;
    sc_synth->add_option("--config", s_config, "JSON run config")->required();
    sc_synth->add_option("--out", s_out, "output path prefix")->required();

    // import
    auto* sc_import = app.add_subcommand("import", "map an external far-field matrix to nodes");
    std::string i_file, i_out;
    double i_k = 0.0;
    bool i_csv = false;
    int i_nin = 0, i_T = 0, i_M = 0;
    sc_import->add_option("--farfield", i_file, "far-field matrix file")->required();
    sc_import->add_option("--k", i_k, "frequency (required for --csv)");
    sc_import->add_flag("--csv", i_csv, "parse as CSV lines 'i, j, re, im'");
    sc_import->add_option("--n-in", i_nin, "receiver count for --csv");
    sc_import->add_option("--T", i_T, "radial node count (0 = default)");
    sc_import->add_option("--M", i_M, "angular node count (0 = 4T)");
    sc_import->add_option("--out", i_out, "output node-data file")->required();

    // invert
    auto* sc_invert = app.add_subcommand("invert", "run the truncated inverse series");
    std::string v_config, v_data, v_data1, v_data2, v_out;
    bool v_no_truth = false;
    sc_invert->add_option("--config", v_config, "JSON run config")->required();
    sc_invert->add_option("--data", v_data, "dataset prefix from synth");
    sc_invert->add_option("--data1", v_data1, "component-1 node data file");
    sc_invert->add_option("--data2", v_data2, "component-2 node data file");
    sc_invert->add_option("--out", v_out, "output path prefix")->required();
    sc_invert->add_flag("--no-truth", v_no_truth, "skip truth-based metrics");

    // bounds
    auto* sc_bounds = app.add_subcommand("bounds", "emit the analysis bound report");
    std::string b_config, b_out;
    double b_measure = 0.0;
    sc_bounds->add_option("--config", b_config, "JSON run config")->required();
    sc_bounds->add_option("--measure", b_measure, "override the media measure M");
    sc_bounds->add_option("--out", b_out, "also write the report to this file");

    // render
    auto* sc_render = app.add_subcommand("render", "render field files to a PNG heatmap");
    std::vector<std::string> r_rows;
    std::string r_out;
    int r_cell = 192;
    sc_render->add_option("--row", r_rows, "comma-separated field files sharing a color scale")
        ->required();
    sc_render->add_option("--out", r_out, "output PNG path")->required();
    sc_render->add_option("--cell-px", r_cell, "pixels per panel side");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_pswf->parsed()) return run_pswf(p_k, p_at, p_T, p_M, p_out);
        if (sc_synth->parsed()) return run_synth(s_config, s_out);
        if (sc_import->parsed()) return run_import(i_file, i_k, i_csv, i_nin, i_T, i_M, i_out);
        if (sc_invert->parsed()) {
            if (v_data.empty() == (v_data1.empty() || v_data2.empty()))
                throw FormatError("invert: pass either --data or both --data1/--data2");
            return run_invert(v_config, v_data, v_data1, v_data2, v_out, v_no_truth);
        }
        if (sc_bounds->parsed()) return run_bounds(b_config, b_measure, b_out);
        if (sc_render->parsed()) return run_render(r_rows, r_out, r_cell);
    } catch (const FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const InvalidArgument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}

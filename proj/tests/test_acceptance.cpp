// Acceptance suite: one test case per release criterion, each printing a
// single [PASS]/[FAIL] line with its measured numbers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "ibs2/analysis.hpp"
#include "ibs2/born_forward.hpp"
#include "ibs2/fourier.hpp"
#include "ibs2/inverse_born.hpp"
#include "ibs2/io.hpp"
#include "ibs2/media.hpp"
#include "ibs2/pswf.hpp"
#include "ibs2/rng.hpp"
#include "ibs2/specfun.hpp"

using namespace ibs2;
namespace fs = std::filesystem;
namespace {

constexpr double kPi = std::numbers::pi;

void report(int crit, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", crit, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double wall_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Regression pins for criterion 5 (per-frequency median joint errors measured
// on the first complete run of this suite; the pipeline is deterministic).
// A NaN entry disables the regression comparison.
constexpr double kMedianPin5 = 0.10648845933248;
constexpr double kMedianPin10 = 0.030863420989289;
constexpr double kMedianPin15 = 0.051033428089188;

}  // namespace

TEST_CASE("criterion 1: restricted transform against the closed form") {
    const auto t0 = std::chrono::steady_clock::now();
    const double k = 5.0;
    PixelGrid g(256);
    RealField f(g);
    for (auto& v : f.v) v = 1.0 / std::sqrt(kPi);
    f.apply_mask();
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    const PData F = apply_Fk(f, nodes, k);

    double max_rel = 0.0, num = 0.0, den = 0.0, oracle_sup = 0.0;
    for (std::size_t n = 0; n < nodes->size(); ++n)
        oracle_sup = std::max(oracle_sup, std::abs(F.v[n]));
    for (std::size_t n = 0; n < nodes->size(); ++n) {
        const double r = std::hypot(nodes->px[n], nodes->py[n]);
        const double oracle = std::sqrt(kPi) / (k * r) * bessel_j(1, 2.0 * k * r);
        const double diff = std::abs(F.v[n] - oracle);
        if (std::abs(oracle) > 1e-12 * oracle_sup) max_rel = std::max(max_rel, diff / std::abs(oracle));
        num += nodes->w[n] * diff * diff;
        den += nodes->w[n] * oracle * oracle;
    }
    const double agg = std::sqrt(num / den);
    const double secs = wall_since(t0);
    const bool ok = max_rel <= 1e-4 && secs < 10.0;
    report(1, ok,
           fmt("max node relative error %.6g (tolerance 1e-4), aggregate relative L2 %.6g, "
               "%.2f s; boundary-cell midpoint error dominates near the Bessel zeros",
               max_rel, agg, secs));
    CHECK(ok);
}

TEST_CASE("criterion 2: basis construction suite at c = 10") {
    const auto t0 = std::chrono::steady_clock::now();
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(5.0));
    auto basis = std::make_shared<const PswfBasis>(build_basis(10.0, 0.9, *nodes));

    const BasisNodeTable tab = tabulate_basis(basis, nodes);
    const std::size_t E = basis->entries.size();
    double gram = 0.0;
    for (std::size_t a = 0; a < E; ++a)
        for (std::size_t b = a; b < E; ++b) {
            double sum = 0.0;
            for (std::size_t n = 0; n < nodes->size(); ++n)
                sum += nodes->w[n] * tab.values[a][n] * tab.values[b][n];
            gram = std::max(gram, std::abs(sum - (a == b ? 1.0 : 0.0)));
        }

    const double a00 = std::abs(basis->alpha00);
    double worst_res = 0.0;
    bool ordered = true;
    std::map<std::pair<int, int>, std::pair<double, double>> last;
    for (const auto& e : basis->entries) {
        worst_res = std::max(worst_res, e.residual);
        const auto key = std::make_pair(e.m, e.l);
        const auto it = last.find(key);
        if (it != last.end())
            ordered = ordered && std::abs(e.alpha) <= it->second.first + 1e-12 &&
                      e.chi >= it->second.second - 1e-12;
        last[key] = {std::abs(e.alpha), e.chi};
    }
    const double secs = wall_since(t0);
    const bool ok = gram <= 1e-6 && worst_res <= 1e-4 * a00 && ordered &&
                    a00 >= norm_lower_bound(5.0) && secs < 60.0;
    report(2, ok,
           fmt("%zu modes, gram deviation %.3g (<=1e-6), max residual %.3g (<=%.3g), "
               "ordering %s, |alpha00| %.6g >= %.6g, %.2f s",
               E, gram, worst_res, 1e-4 * a00, ordered ? "ok" : "violated", a00,
               norm_lower_bound(5.0), secs));
    CHECK(ok);
}

TEST_CASE("criterion 3: first-order data equal the linear map") {
    const auto t0 = std::chrono::steady_clock::now();
    const double k = 5.0, ell = 2.0;
    PixelGrid g(64);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    KernelCache cache;
    double worst = 0.0;
    for (int seed = 100; seed < 105; ++seed) {
        MediaSpec spec;
        spec.kind = MediaSpec::Kind::unseparated;
        spec.J = 5;
        spec.seed = static_cast<std::uint64_t>(seed);
        auto [gamma, eta] = generate_media(spec, g);
        const ScatterDataset d = synthesize(gamma, eta, k, ell, nodes, 1, 1e-8, &cache);
        const PData Fg = apply_Fk(gamma, nodes, k);
        const PData Fe = apply_Fk(eta, nodes, k);
        double num = 0.0, den = 0.0;
        for (std::size_t n = 0; n < nodes->size(); ++n) {
            const double p2 = nodes->px[n] * nodes->px[n] + nodes->py[n] * nodes->py[n];
            const cplx row1 = (2.0 * p2 - 1.0) * Fg.v[n] + Fe.v[n];
            const cplx row2 = (2.0 * p2 / (ell * ell) - 1.0) * Fg.v[n] + Fe.v[n];
            num += nodes->w[n] * (std::norm(d.comp1.v[n] - row1) + std::norm(d.comp2.v[n] - row2));
            den += nodes->w[n] * (std::norm(row1) + std::norm(row2));
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    const double secs = wall_since(t0);
    const bool ok = worst <= 1e-6 && secs < 60.0;
    report(3, ok, fmt("worst relative error %.3g over 5 media (<=1e-6), %.2f s", worst, secs));
    CHECK(ok);
}

TEST_CASE("criterion 4: regularized-inverse identities") {
    const double k = 5.0, ell = 2.0;
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    const double eps = nodes->min_radius();

    double a_worst = 0.0;
    for (std::size_t n = 0; n < nodes->size(); ++n) {
        const double px = nodes->px[n], py = nodes->py[n];
        if (std::hypot(px, py) < eps) continue;
        const Mat2 A = A_matrix(px, py, ell);
        const Mat2 D = A_dagger(px, py, ell, eps);
        a_worst = std::max({a_worst, std::abs(D.a11 * A.a11 + D.a12 * A.a21 - 1.0),
                            std::abs(D.a11 * A.a12 + D.a12 * A.a22),
                            std::abs(D.a21 * A.a11 + D.a22 * A.a21),
                            std::abs(D.a21 * A.a12 + D.a22 * A.a22 - 1.0)});
    }

    PixelGrid g(64);
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    const BasisRaster raster = rasterize_basis(basis, g);
    const BasisNodeTable table = tabulate_basis(basis, nodes);
    Rng rng(404);
    SpectralCoeffs cg, ce;
    cg.basis = basis;
    ce.basis = basis;
    cg.coef.resize(basis->entries.size());
    ce.coef.resize(basis->entries.size());
    for (auto& c : cg.coef) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (auto& c : ce.coef) c = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const ComplexField gamma = synthesize_from_coeffs(cg, raster);
    const ComplexField eta = synthesize_from_coeffs(ce, raster);
    KernelCache cache;
    const auto data = apply_Km({&gamma}, {&eta}, k, ell, nodes, cache);
    const auto rec = K1_dagger_apply(data.first, data.second, ell, eps, table, raster);
    const SpectralCoeffs rg = project(rec.first, raster);
    const SpectralCoeffs re = project(rec.second, raster);
    double num = 0.0, den = 0.0;
    for (std::size_t e = 0; e < cg.coef.size(); ++e) {
        num += std::norm(rg.coef[e] - cg.coef[e]) + std::norm(re.coef[e] - ce.coef[e]);
        den += std::norm(cg.coef[e]) + std::norm(ce.coef[e]);
    }
    const double defect = std::sqrt(num / den);
    const double alpha = 0.9 * std::abs(basis->alpha00);
    const double tol = std::max(1e-3, kPi / std::sqrt(3.0) / alpha * eps);
    const bool ok = a_worst <= 1e-14 && defect <= tol;
    report(4, ok,
           fmt("row-inverse identity %.3g (<=1e-14), span defect %.6g (<=%.6g, epsilon %.4g)",
               a_worst, defect, tol, eps));
    CHECK(ok);
}

TEST_CASE("criterion 5: small-contrast recovery across frequencies") {
    const auto t0 = std::chrono::steady_clock::now();
    PixelGrid g(64);
    std::map<int, std::vector<double>> joint;
    std::map<int, int> successes;
    for (const double k : {5.0, 10.0, 15.0}) {
        auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
        auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
        KernelCache cache;
        for (int inst = 0; inst < 10; ++inst) {
            Rng mag(2000 + static_cast<std::uint64_t>(inst));
            const double s = mag.uniform(0.001, 0.002);
            MediaSpec spec;
            spec.kind = MediaSpec::Kind::unseparated;
            spec.J = 5;
            spec.seed = 1000 + static_cast<std::uint64_t>(inst);
            spec.magnitude_gamma = s;
            spec.magnitude_eta = s;
            auto [gamma, eta] = generate_media(spec, g);
            const ScatterDataset clean = synthesize(gamma, eta, k, 2.0, nodes, 20, 1e-8, &cache);
            const ScatterDataset data = add_noise(clean, 0.02, 5000 + static_cast<std::uint64_t>(inst));
            ReconParams p;
            p.N = 1;
            const ReconResult res = ibs_reconstruct(data, basis, p, g, &cache);
            const RelErrors e = rel_l2_error(gamma, eta, res.gamma(), res.eta());
            joint[static_cast<int>(k)].push_back(e.e_joint);
            if (e.e_gamma < 1.0 && e.e_eta < 1.0) ++successes[static_cast<int>(k)];
        }
    }
    const double m5 = median(joint[5]), m10 = median(joint[10]), m15 = median(joint[15]);
    bool ok = successes[5] >= 9 && successes[10] >= 9 && successes[15] >= 9 && m15 <= m5;
    std::string reg = "regression pins match";
    if (!std::isnan(kMedianPin5)) {
        const bool pin = std::abs(m5 - kMedianPin5) <= 1e-9 && std::abs(m10 - kMedianPin10) <= 1e-9 &&
                         std::abs(m15 - kMedianPin15) <= 1e-9;
        if (!pin) reg = "regression pins DRIFTED";
        ok = ok && pin;
    } else {
        reg = "no regression pins yet";
    }
    report(5, ok,
           fmt("successes 5:%d/10 10:%d/10 15:%d/10 (need >=9), median joint error "
               "k5 %.14g k10 %.14g k15 %.14g (k15<=k5 %s), %s, %.0f s",
               successes[5], successes[10], successes[15], m5, m10, m15,
               m15 <= m5 ? "ok" : "violated", reg.c_str(), wall_since(t0)));
    CHECK(ok);
}

TEST_CASE("criterion 6: higher-order series beats the first order") {
    const auto t0 = std::chrono::steady_clock::now();
    const double k = 5.0, ell = 2.0;
    PixelGrid g(64);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    KernelCache cache;
    int improved = 0, converged_count = 0;
    bool ratios_ok = true;
    std::string detail;
    for (int inst = 0; inst < 10; ++inst) {
        MediaSpec spec;
        spec.kind = MediaSpec::Kind::unseparated;
        spec.J = 5;
        spec.seed = 4000 + static_cast<std::uint64_t>(inst);
        Rng mr(9000 + static_cast<std::uint64_t>(inst));
        spec.magnitude_gamma = mr.uniform(0.08, 0.2);
        spec.magnitude_eta = mr.uniform(0.08, 0.2);
        auto [gamma, eta] = generate_media(spec, g);
        const ScatterDataset data = synthesize(gamma, eta, k, ell, nodes, 40, 1e-8, &cache);
        const bool conv = data.all_converged();
        if (conv) ++converged_count;
        ReconParams p;
        p.N = 4;
        const ReconResult res = ibs_reconstruct(data, basis, p, g, &cache);
        const RelErrors e1 = rel_l2_error(gamma, eta, real_part(res.partial_sums[0].first),
                                          real_part(res.partial_sums[0].second));
        const RelErrors eN = rel_l2_error(gamma, eta,
                                          real_part(res.partial_sums[res.N_completed - 1].first),
                                          real_part(res.partial_sums[res.N_completed - 1].second));
        const bool inst_improved = eN.e_joint < e1.e_joint;
        if (inst_improved) {
            ++improved;
            // successful instances must owe their improvement to genuinely
            // decaying series terms, not cancellation luck
            for (double r : res.ratios) ratios_ok = ratios_ok && r < 1.0;
        }
        detail += fmt("%s%.3f>%.3f", inst ? " " : "", e1.e_joint, eN.e_joint);
    }
    const double secs = wall_since(t0);
    const bool ok = improved >= 7 && ratios_ok && converged_count == 10 && secs < 900.0;
    report(6, ok,
           fmt("N=4 improved on %d/10 (need >=7), term ratios <1 %s, synthesis converged %d/10, "
               "%.0f s; per-instance joint error N1>N4: %s",
               improved, ratios_ok ? "ok" : "violated", converged_count, secs, detail.c_str()));
    CHECK(ok);
}

TEST_CASE("criterion 7: quadratic scaling of the second term") {
    const double k = 5.0, ell = 2.0;
    PixelGrid g(64);
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(k));
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    KernelCache cache;
    std::vector<double> xs, ys;
    for (const double s : {0.0025, 0.005, 0.01}) {
        MediaSpec spec;
        spec.kind = MediaSpec::Kind::unseparated;
        spec.J = 5;
        spec.seed = 777;
        spec.magnitude_gamma = s;
        spec.magnitude_eta = s;
        auto [gamma, eta] = generate_media(spec, g);
        const ScatterDataset data = synthesize(gamma, eta, k, ell, nodes, 20, 1e-10, &cache);
        ReconParams p;
        p.N = 2;
        const ReconResult res = ibs_reconstruct(data, basis, p, g, &cache);
        xs.push_back(std::log(s));
        ys.push_back(std::log(res.term_norms[1]));
    }
    // least-squares slope
    const double n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool ok = std::abs(slope - 2.0) <= 0.1;
    report(7, ok, fmt("log-log slope %.6g (2 +- 0.1)", slope));
    CHECK(ok);
}

TEST_CASE("criterion 8: bound arithmetic and error domination") {
    // exact identities
    const AbcBounds a5 = bound_abc(5.0);
    const bool exact_a = (a5.a == std::sqrt(11.0) / 10.0);
    bool exact_c = true, mu_ok = true;
    for (double k : {1.0, 5.0, 10.0, 15.0}) {
        const AbcBounds v = bound_abc(k);
        exact_c = exact_c && (v.c == k * k * v.b);
        const MuConstants m = mu_constants(k, 2.0);
        mu_ok = mu_ok && m.mu0_k <= (3.0 * std::sqrt(2.0 * kPi) + 2.0 * std::sqrt(2.0 / 3.0) * kPi) *
                                        std::pow(k, 1.5);
    }

    // radius against the scripted oracle
    auto nodes = std::make_shared<const PNodeSet>(default_pnodes(5.0));
    const double eps = nodes->min_radius();
    const BoundsReport rep = compute_bounds(5.0, 2.0, 0.9, eps, 0.25, 0.6283);
    bool radius_ok = true;
    double script_rel = 0.0;
    for (const auto& [mu, nu, r_cpp] :
         {std::tuple{rep.mu2, rep.nu2, rep.radius_l2}, std::tuple{rep.mu_inf, rep.nu_inf, rep.radius_inf}}) {
        const std::string cmd = fmt("python3 tests/radius_oracle.py %.17g %.17g %.17g",
                                    mu, nu, rep.k1dag_bound);
        FILE* pipe = popen(cmd.c_str(), "r");
        double r_script = -1.0;
        if (pipe) {
            char buf[128] = {0};
            if (std::fgets(buf, sizeof buf, pipe)) r_script = std::atof(buf);
            pclose(pipe);
        }
        const double rel = std::abs(r_script - r_cpp) / std::abs(r_cpp);
        script_rel = std::max(script_rel, rel);
        radius_ok = radius_ok && r_script > 0.0 && rel <= 1e-12;
    }

    // truncated-series bound dominates a measured bandlimited run
    const double k = 5.0, ell = 2.0;
    PixelGrid g(64);
    auto basis = std::make_shared<const PswfBasis>(build_basis(2.0 * k, 0.9, *nodes));
    const BasisRaster raster = rasterize_basis(basis, g);
    // two high-angular-order retained modes (values ~ r^m near the origin, so
    // they carry negligible content below the epsilon radius)
    int ia = -1, ib = -1;
    for (std::size_t e = 0; e < basis->entries.size() && ib < 0; ++e) {
        if (basis->entries[e].m < 4 || basis->entries[e].l != 1) continue;
        if (ia < 0) ia = int(e); else ib = int(e);
    }
    REQUIRE(ia >= 0);
    REQUIRE(ib >= 0);

    RealField shape_g(g), shape_e(g);
    for (std::size_t i = 0; i < shape_g.v.size(); ++i) {
        shape_g.v[i] = raster.fields[ia].v[i];
        shape_e.v[i] = raster.fields[ib].v[i];
    }
    const double M = measure_M(shape_g, shape_e);
    const BoundsReport br = compute_bounds(k, ell, 0.9, eps, M, std::abs(basis->alpha00));
    double sup = 0.0;
    for (std::size_t i = 0; i < shape_g.v.size(); ++i)
        sup = std::max({sup, std::abs(shape_g.v[i]), std::abs(shape_e.v[i])});
    const double joint_unit = std::sqrt(disk_norm_l2(shape_g) * disk_norm_l2(shape_g) +
                                        disk_norm_l2(shape_e) * disk_norm_l2(shape_e));
    // contrast size: half the convergence radius and well inside the gate
    const double s = 0.5 * std::min(br.smallness_gate_rhs / sup, br.radius_l2 / joint_unit);
    RealField gamma(g), eta(g);
    for (std::size_t i = 0; i < gamma.v.size(); ++i) {
        gamma.v[i] = s * shape_g.v[i];
        eta.v[i] = s * shape_e.v[i];
    }
    KernelCache cache;
    const ScatterDataset data = synthesize(gamma, eta, k, ell, nodes, 8, 1e-12, &cache);
    ReconParams prm;
    prm.N = 2;
    const ReconResult res = ibs_reconstruct(data, basis, prm, g, &cache);
    const RealField rg = res.gamma(), re = res.eta();
    double err2 = 0.0;
    const double h2 = g.h() * g.h();
    for (std::size_t i = 0; i < rg.v.size(); ++i) {
        const double dg = rg.v[i] - gamma.v[i];
        const double de = re.v[i] - eta.v[i];
        err2 += dg * dg + de * de;
    }
    const double measured = std::sqrt(h2 * err2);
    const double Ms = std::max(s * sup, res.term_norms[0]);
    const double C_ratio = res.term_norms[0] / br.radius_l2;
    const ErrorBoundResult eb =
        error_bound(prm.N, br.mu2, br.C2, br.C_K1, C_ratio, Ms, br.alpha, eps, 0.0);
    const bool dominate = eb.applicable && measured <= eb.value;
    const bool gate_ok = Ms <= br.smallness_gate_rhs && C_ratio < 1.0;

    const bool ok = exact_a && exact_c && mu_ok && radius_ok && gate_ok && dominate;
    report(8, ok,
           fmt("a(5) exact %s, c=k^2 b exact %s, mu0 capped %s, scripted radius rel diff %.2g "
               "(<=1e-12), gate %s (Ms %.3g <= %.3g, C_ratio %.3g), bound %.6g >= measured %.6g %s",
               exact_a ? "yes" : "NO", exact_c ? "yes" : "NO", mu_ok ? "yes" : "NO", script_rel,
               gate_ok ? "ok" : "violated", Ms, br.smallness_gate_rhs, C_ratio, eb.value, measured,
               dominate ? "ok" : (eb.applicable ? "VIOLATED" : eb.reason.c_str())));
    CHECK(ok);
}

TEST_CASE("criterion 9: synthesized and inverted artifacts are bit-identical") {
    const char* bin = std::getenv("IBS2_BIN");
    const std::string exe = bin ? bin : "build/ibs2";
    const fs::path dir = fs::temp_directory_path() / "ibs2_accept9";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cfg = (dir / "cfg.json").string();
    write_text(cfg, R"({
  "freq": {"k": 5.0, "ell": 2.0},
  "recon": {"N": 2},
  "noise": {"level": 0.02, "seed": 11},
  "media": {"kind": "unseparated", "J": 5, "seed": 404,
             "magnitude_gamma": 0.05, "magnitude_eta": 0.05}
})");
    const std::string cache = (dir / "cache").string();
    auto run = [&](const std::string& args) {
        const std::string cmd = "cd " + dir.string() + " && IBS2_CACHE_DIR=" + cache + " " + exe +
                                " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    bool ran = run("synth --config cfg.json --out run1") == 0 &&
               run("invert --config cfg.json --data run1 --out rec1") == 0 &&
               run("synth --config cfg.json --out run2") == 0 &&
               run("invert --config cfg.json --data run2 --out rec2") == 0;

    int compared = 0, mismatched = 0;
    if (ran) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("run1", 0) != 0 && name.rfind("rec1", 0) != 0) continue;
            std::string twin = name;
            twin.replace(3, 1, "2");
            ++compared;
            const std::string a = read_text(entry.path().string());
            const std::string b = read_text((dir / twin).string());
            if (a != b) ++mismatched;
        }
    }
    const bool ok = ran && compared >= 16 && mismatched == 0;
    report(9, ok,
           fmt("%s, %d artifact files compared, %d mismatched", ran ? "both pipelines ran" : "CLI RUN FAILED",
               compared, mismatched));
    CHECK(ok);
}

#include "ibs2/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "ibs2/fourier.hpp"

namespace ibs2 {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

AbcBounds bound_abc(double k) {
    if (!(k > 0.5)) throw InvalidArgument("bound_abc: requires k > 1/2");
    AbcBounds r;
    r.a = std::sqrt(2.0 * k + 1.0) / (2.0 * k);
    r.b = std::sqrt(kPi) * (1.5 / (k * std::sqrt(k)) + std::sqrt(8.0 * kPi / 3.0)) * std::sqrt(k);
    r.c = k * k * r.b;
    return r;
}

namespace {
double mu0_of(double k) {
    const AbcBounds ab = bound_abc(k);
    return std::max(std::max(1.0, k * ab.b),
                    std::max(ab.c / k, k * k * std::sqrt(kPi) * ab.a));
}
}  // namespace

MuConstants mu_constants(double k, double ell) {
    if (ell <= 1.0) throw InvalidArgument("mu_constants: ell must exceed 1");
    MuConstants m;
    m.mu0_k = mu0_of(k);
    m.mu0_lk = mu0_of(ell * k);
    m.nu_inf = std::sqrt(2.0) * kPi;
    m.mu_inf = std::sqrt(2.0) * (m.mu0_k + m.mu0_lk);
    return m;
}

double measure_M(const RealField& gamma, const RealField& eta) {
    if (!(gamma.grid == eta.grid)) throw InvalidArgument("measure_M: grid mismatch");
    const double h2 = gamma.grid.h() * gamma.grid.h();
    auto level_area = [&](const RealField& f) {
        double fmax = 0.0;
        for (int ix = 0; ix < f.grid.n; ++ix)
            for (int iy = 0; iy < f.grid.n; ++iy)
                if (f.grid.inside(ix, iy)) fmax = std::max(fmax, std::abs(f.at(ix, iy)));
        if (fmax == 0.0) throw MeasureUndefined("measure_M: field is identically zero");
        std::size_t count = 0;
        for (int ix = 0; ix < f.grid.n; ++ix)
            for (int iy = 0; iy < f.grid.n; ++iy)
                if (f.grid.inside(ix, iy) && std::abs(f.at(ix, iy)) >= 0.5 * fmax) ++count;
        return h2 * static_cast<double>(count);
    };
    return std::min(level_area(gamma), level_area(eta));
}

double k1dag_norm_bound(double k, double ell, double alpha_tilde, double epsilon) {
    if (k <= 0.0 || ell <= 1.0 || alpha_tilde <= 0.0 || epsilon <= 0.0)
        throw InvalidArgument("k1dag_norm_bound: invalid parameters");
    const double tau = alpha_tilde * epsilon * epsilon * (1.0 - 1.0 / (ell * ell));
    return k / (2.0 * tau * std::sqrt(std::min(k, 2.0)));
}

double radius(double mu, double nu, double k1dag_norm) {
    if (mu <= 0.0 || nu <= 0.0 || k1dag_norm <= 0.0)
        throw InvalidArgument("radius: inputs must be positive");
    const double C = std::max(2.0, nu * k1dag_norm);
    return 1.0 / (2.0 * mu * (std::sqrt(16.0 * C * C + 1.0) + 4.0 * C));
}

BoundsReport compute_bounds(double k, double ell, double alpha_tilde, double epsilon, double M,
                            double alpha00_abs) {
    BoundsReport r;
    r.k = k;
    r.ell = ell;
    r.alpha_tilde = alpha_tilde;
    r.epsilon = epsilon;
    const AbcBounds ab = bound_abc(k);
    r.a_k = ab.a;
    r.b_k = ab.b;
    r.c_k = ab.c;
    const MuConstants mc = mu_constants(k, ell);
    r.mu0_k = mc.mu0_k;
    r.mu0_lk = mc.mu0_lk;
    r.nu_inf = mc.nu_inf;
    r.mu_inf = mc.mu_inf;
    r.d_k = norm_lower_bound(k);
    r.alpha = alpha_tilde * (alpha00_abs > 0.0 ? alpha00_abs : r.d_k);
    r.k1dag_bound = k1dag_norm_bound(k, ell, alpha_tilde, epsilon);
    r.radius_inf = radius(mc.mu_inf, mc.nu_inf, r.k1dag_bound);
    const double croot = 3.0 * std::sqrt(kPi) + 2.0 * kPi / std::sqrt(3.0);
    r.proof_c_r_inf = 1.0 / (18.0 * std::sqrt(2.0) * croot * kPi);
    r.proof_c_r_2 = 1.0 / (72.0 * std::sqrt(2.0) * croot * kPi);
    r.M = M;
    if (M > 0.0) {
        const double ms = std::sqrt(M);
        r.nu2 = 2.0 * mc.nu_inf / ms;
        r.mu2 = 2.0 * mc.mu_inf / ms;
        r.C_K1 = r.nu2 * r.k1dag_bound;
        r.C2 = std::max(2.0, r.C_K1);
        r.radius_l2 = radius(r.mu2, r.nu2, r.k1dag_bound);
        const double tau = alpha_tilde * epsilon * epsilon * (1.0 - 1.0 / (ell * ell));
        const double inner =
            std::min(std::sqrt(2.0) * kPi,
                     2.0 * std::sqrt(std::min(k, 2.0)) / k * tau * ms);
        r.radius_lower_thm2 = r.proof_c_r_2 / (1.0 + std::pow(ell, 1.5)) *
                              std::pow(k, -1.5) * ms * inner;
        const double g = 1.0 - std::sqrt(std::max(0.0, 1.0 - 1.0 / (1.0 + r.C_K1)));
        r.smallness_gate_rhs = g / r.mu2;
    }
    return r;
}

ErrorBoundResult error_bound(int N, double mu2, double C2, double C_K1, double C_ratio,
                             double Mscript, double alpha, double epsilon, double delta_alpha) {
    ErrorBoundResult res;
    if (N < 0 || mu2 <= 0.0 || C2 < 2.0 || alpha <= 0.0 || epsilon < 0.0 || Mscript < 0.0 ||
        delta_alpha < 0.0 || C_K1 < 0.0) {
        res.reason = "invalid inputs";
        return res;
    }
    if (!(C_ratio < 1.0) || C_ratio < 0.0) {
        res.reason = "series ratio C_ratio is not below 1";
        return res;
    }
    const double gate = (1.0 - std::sqrt(std::max(0.0, 1.0 - 1.0 / (1.0 + C_K1)))) / mu2;
    if (Mscript > gate) {
        res.reason = "smallness gate violated";
        return res;
    }
    const double tail =
        2.0 * mu2 / (std::sqrt(16.0 * C2 * C2 + 1.0) * (1.0 - C_ratio)) *
        std::pow(C_ratio, N + 1);
    const double shrink = 1.0 + (1.0 - std::pow(1.0 - mu2 * Mscript, -2.0)) * C_K1;
    if (shrink <= 0.0) {
        res.reason = "regularization prefactor degenerate at the gate boundary";
        return res;
    }
    const double floor_term =
        (1.0 / shrink) * (kPi / std::sqrt(3.0) / alpha * epsilon * Mscript + delta_alpha);
    res.value = tail + floor_term;
    res.applicable = true;
    return res;
}

namespace {

template <typename FieldA>
RelErrors rel_impl(const RealField& gt, const RealField& et, const FieldA& ge, const FieldA& ee) {
    if (!(gt.grid == ge.grid) || !(et.grid == ee.grid) || !(gt.grid == et.grid))
        throw InvalidArgument("rel_l2_error: grid mismatch");
    const int n = gt.grid.n;
    double ng = 0, ne = 0, dg = 0, de = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            if (!gt.grid.inside(ix, iy)) continue;
            const std::size_t id = gt.grid.index(ix, iy);
            const auto dgv = ge.v[id] - gt.v[id];
            const auto dev = ee.v[id] - et.v[id];
            dg += std::norm(cplx(dgv));
            de += std::norm(cplx(dev));
            ng += gt.v[id] * gt.v[id];
            ne += et.v[id] * et.v[id];
        }
    const double h2 = gt.grid.h() * gt.grid.h();
    RelErrors r;
    const double edg = std::sqrt(h2 * dg), ede = std::sqrt(h2 * de);
    const double ngt = std::sqrt(h2 * ng), net = std::sqrt(h2 * ne);
    r.absolute_gamma = (ngt == 0.0);
    r.absolute_eta = (net == 0.0);
    r.e_gamma = r.absolute_gamma ? edg : edg / ngt;
    r.e_eta = r.absolute_eta ? ede : ede / net;
    const double djoint = std::sqrt(h2 * (dg + de));
    const double njoint = std::sqrt(h2 * (ng + ne));
    r.e_joint = (njoint == 0.0) ? djoint : djoint / njoint;
    return r;
}

}  // namespace

RelErrors rel_l2_error(const RealField& gamma_true, const RealField& eta_true,
                       const RealField& gamma_est, const RealField& eta_est) {
    return rel_impl(gamma_true, eta_true, gamma_est, eta_est);
}

RelErrors rel_l2_error(const RealField& gamma_true, const RealField& eta_true,
                       const ComplexField& gamma_est, const ComplexField& eta_est) {
    return rel_impl(gamma_true, eta_true, gamma_est, eta_est);
}

std::string bounds_to_json(const BoundsReport& r) {
    nlohmann::ordered_json j;
    j["k"] = r.k;
    j["ell"] = r.ell;
    j["alpha_tilde"] = r.alpha_tilde;
    j["epsilon"] = r.epsilon;
    j["a_k"] = r.a_k;
    j["b_k"] = r.b_k;
    j["c_k"] = r.c_k;
    j["mu0_k"] = r.mu0_k;
    j["mu0_lk"] = r.mu0_lk;
    j["nu_inf"] = r.nu_inf;
    j["mu_inf"] = r.mu_inf;
    j["M"] = r.M;
    j["nu2"] = r.nu2;
    j["mu2"] = r.mu2;
    j["d_k"] = r.d_k;
    j["alpha"] = r.alpha;
    j["k1dag_bound"] = r.k1dag_bound;
    j["C_K1"] = r.C_K1;
    j["C2"] = r.C2;
    j["radius_l2"] = r.radius_l2;
    j["radius_inf"] = r.radius_inf;
    j["radius_lower_thm2"] = r.radius_lower_thm2;
    j["proof_c_r_inf"] = r.proof_c_r_inf;
    j["proof_c_r_2"] = r.proof_c_r_2;
    j["smallness_gate_rhs"] = r.smallness_gate_rhs;
    return j.dump(2);
}

}  // namespace ibs2

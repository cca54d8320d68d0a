#include "ibs2/pswf.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ibs2/errors.hpp"
#include "ibs2/specfun.hpp"

namespace ibs2 {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre rule on [0, 1] (nodes ascending).
void gauss01(int Q, std::vector<double>& x, std::vector<double>& w) {
    x.assign(Q, 0.0);
    w.assign(Q, 0.0);
    for (int i = 0; i < Q; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (Q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= Q; ++j) {
                const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = Q * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[Q - 1 - i] = (1.0 - t) / 2.0;          // map [-1,1] -> [0,1], ascending
        w[Q - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

// Jacobi polynomials P_j^{(a,b)}(x), all degrees 0..J-1 at one point.
void jacobi_all(int J, double a, double b, double x, std::vector<double>& out) {
    out.resize(J);
    if (J == 0) return;
    out[0] = 1.0;
    if (J == 1) return;
    out[1] = 0.5 * (a - b + (a + b + 2.0) * x);
    for (int j = 2; j < J; ++j) {
        const double n = j;
        const double c1 = 2.0 * n * (n + a + b) * (2.0 * n + a + b - 2.0);
        const double c2 = (2.0 * n + a + b - 1.0) *
                          ((2.0 * n + a + b) * (2.0 * n + a + b - 2.0) * x + a * a - b * b);
        const double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + a + b);
        out[j] = (c2 * out[j - 1] - c3 * out[j - 2]) / c1;
    }
}

// Values + first/second derivatives in r of all Rbar_{m,j}(r), j < J, at one
// radius. Uses P'^{(a,0)}_j = ((j+a+1)/2) P^{(a+1,1)}_{j-1} and its analog for
// the second derivative, with x = 1 - 2 r^2 (dx/dr = -4r).
struct ZernikeDerivs {
    std::vector<double> v, d1, d2;
};
void zernike_derivs(int m, int J, double r, ZernikeDerivs& z) {
    const double x = 1.0 - 2.0 * r * r;
    std::vector<double> P, dP, d2P;
    jacobi_all(J, m, 0, x, P);
    jacobi_all(J, m + 1, 1, x, dP);
    jacobi_all(J, m + 2, 2, x, d2P);
    z.v.resize(J);
    z.d1.resize(J);
    z.d2.resize(J);
    const double rm = std::pow(r, m);
    const double rm1 = (m >= 1) ? m * std::pow(r, m - 1) : 0.0;
    const double rm2 = (m >= 2) ? m * (m - 1) * std::pow(r, m - 2) : 0.0;
    for (int j = 0; j < J; ++j) {
        const double s = std::sqrt(2.0 * (m + 2 * j + 1)) * ((j % 2) ? -1.0 : 1.0);
        const double pj = P[j];
        const double dpj = (j >= 1) ? 0.5 * (j + m + 1) * dP[j - 1] : 0.0;
        const double d2pj = (j >= 2) ? 0.25 * (j + m + 1) * (j + m + 2) * d2P[j - 2] : 0.0;
        const double xr = -4.0 * r;  // dx/dr
        z.v[j] = s * rm * pj;
        z.d1[j] = s * (rm1 * pj + rm * dpj * xr);
        z.d2[j] = s * (rm2 * pj + 2.0 * rm1 * dpj * xr + rm * (d2pj * xr * xr + dpj * (-4.0)));
    }
}

Matrix assemble_with_rule(int m, double c, int J, int Q) {
    std::vector<double> rq, wq;
    gauss01(Q, rq, wq);
    Matrix A;
    A.rows = A.cols = J;
    A.a.assign(static_cast<std::size_t>(J) * J, 0.0);
    ZernikeDerivs z;
    std::vector<double> Dc(J);
    for (int q = 0; q < Q; ++q) {
        const double r = rq[q];
        zernike_derivs(m, J, r, z);
        const double r2 = r * r;
        for (int j = 0; j < J; ++j) {
            Dc[j] = -(1.0 - r2) * z.d2[j] - z.d1[j] / r + 3.0 * r * z.d1[j] +
                    (static_cast<double>(m) * m / r2) * z.v[j] + c * c * r2 * z.v[j];
        }
        const double wr = wq[q] * r;
        for (int i = 0; i < J; ++i) {
            const double vi = z.v[i] * wr;
            for (int j = 0; j < J; ++j) A.at(i, j) += vi * Dc[j];
        }
    }
    // Symmetrize: the operator is self-adjoint in L2(B).
    for (int i = 0; i < J; ++i)
        for (int j = i + 1; j < J; ++j) {
            const double s = 0.5 * (A.at(i, j) + A.at(j, i));
            A.at(i, j) = s;
            A.at(j, i) = s;
        }
    return A;
}

}  // namespace

Matrix assemble_sturm_liouville(int m, double c, int J) {
    if (m < 0 || J < 1) throw InvalidArgument("assemble_sturm_liouville: bad m or J");
    if (!(c > 0)) throw InvalidArgument("assemble_sturm_liouville: c must be positive");
    const int Q = 2 * (m + 2 * J) + 32;
    Matrix A = assemble_with_rule(m, c, J, Q);
    Matrix B = assemble_with_rule(m, c, J, (3 * Q) / 2 + 8);
    double maxdiff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < A.a.size(); ++i) {
        maxdiff = std::max(maxdiff, std::abs(A.a[i] - B.a[i]));
        scale = std::max(scale, std::abs(B.a[i]));
    }
    // Both rules are exact for these polynomial integrands, so the defect is
    // roundoff and must be judged relative to the matrix scale.
    if (maxdiff > 1e-11 * std::max(scale, 1.0))
        throw AssemblyFailure("assemble_sturm_liouville: quadrature not converged");
    return B;
}

EigResult solve_radial_eigs(const Matrix& A) {
    if (A.rows != A.cols || A.rows < 1)
        throw InvalidArgument("solve_radial_eigs: matrix must be square");
    Eigen::MatrixXd M(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) M(i, j) = A.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success)
        throw NumericFailure("solve_radial_eigs: eigensolver failed");
    EigResult R;
    R.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + A.rows);
    R.vectors.rows = R.vectors.cols = A.rows;
    R.vectors.a.resize(static_cast<std::size_t>(A.rows) * A.cols);
    Eigen::MatrixXd V = es.eigenvectors();
    for (int col = 0; col < A.cols; ++col) {
        // Sign convention: first entry of significant magnitude is positive.
        double flip = 1.0;
        for (int i = 0; i < A.rows; ++i) {
            if (std::abs(V(i, col)) > 1e-12) {
                flip = (V(i, col) > 0) ? 1.0 : -1.0;
                break;
            }
        }
        for (int i = 0; i < A.rows; ++i) R.vectors.at(i, col) = flip * V(i, col);
    }
    return R;
}

std::vector<double> eval_radial(const PswfEntry& e, const std::vector<double>& r) {
    const int J = static_cast<int>(e.coeffs.size());
    std::vector<double> out(r.size(), 0.0);
    std::vector<double> P;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double x = 1.0 - 2.0 * r[i] * r[i];
        jacobi_all(J, e.m, 0, x, P);
        const double rm = std::pow(r[i], e.m);
        double s = 0.0;
        for (int j = 0; j < J; ++j)
            s += e.coeffs[j] * std::sqrt(2.0 * (e.m + 2 * j + 1)) * ((j % 2) ? -1.0 : 1.0) * P[j];
        out[i] = s * rm;
    }
    return out;
}

std::vector<double> eval_pswf(const PswfEntry& e, const std::vector<double>& r,
                              const std::vector<double>& theta) {
    if (r.size() != theta.size()) throw InvalidArgument("eval_pswf: size mismatch");
    std::vector<double> out = eval_radial(e, r);
    if (e.m == 0) {
        const double s = 1.0 / std::sqrt(2.0 * kPi);
        for (auto& v : out) v *= s;
    } else {
        const double s = 1.0 / std::sqrt(kPi);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] *= s * ((e.l == 1) ? std::cos(e.m * theta[i]) : std::sin(e.m * theta[i]));
    }
    return out;
}

RealField rasterize_pswf(const PswfEntry& e, const PixelGrid& grid) {
    std::vector<double> r, th;
    std::vector<std::size_t> idx;
    r.reserve(grid.ncells());
    for (int ix = 0; ix < grid.n; ++ix)
        for (int iy = 0; iy < grid.n; ++iy)
            if (grid.inside(ix, iy)) {
                const double x = grid.center(ix), y = grid.center(iy);
                r.push_back(std::hypot(x, y));
                th.push_back(std::atan2(y, x));
                idx.push_back(grid.index(ix, iy));
            }
    const std::vector<double> vals = eval_pswf(e, r, th);
    RealField f(grid);
    for (std::size_t i = 0; i < idx.size(); ++i) f.v[idx[i]] = vals[i];
    return f;
}

EigenvalueFit prolate_eigenvalue(int m, const std::vector<double>& coeffs, double c,
                                 const PNodeSet& nodes) {
    if (!(c > 0)) throw InvalidArgument("prolate_eigenvalue: c must be positive");
    if (coeffs.empty()) throw InvalidArgument("prolate_eigenvalue: empty coefficients");
    // Jacobi-Anger reduction:
    //   (F psi_{m,n,l})(p) = 2 pi i^m Theta_{m,l}(theta_p) I(|p|),
    //   I(s) = integral_0^1 J_m(c s rho) R_{m,n}(rho) rho d rho.
    // Evaluate I at the distinct node radii with a radial rule resolving
    // bandwidth c, then fit alpha over the full node set.
    PswfEntry tmp;
    tmp.m = m;
    tmp.coeffs = coeffs;
    const int Q = std::max(200, 4 * static_cast<int>(std::ceil(c)) + 60);
    std::vector<double> rq, wq;
    gauss01(Q, rq, wq);
    const std::vector<double> Rq = eval_radial(tmp, rq);
    const int T = nodes.T;
    std::vector<double> I(T, 0.0);
    for (int j = 0; j < T; ++j) {
        const double s = nodes.radii[j];
        double acc = 0.0;
        for (int q = 0; q < Q; ++q) acc += wq[q] * rq[q] * Rq[q] * bessel_j(m, c * s * rq[q]);
        I[j] = acc;
    }
    const std::vector<double> Rnode = eval_radial(tmp, nodes.radii);
    // i^m phase of the 2-D Fourier transform.
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx phase = 2.0 * kPi * ipow[m % 4];
    // The angular factor is common to psi and F psi; the least-squares ratio
    // reduces to radial sums with the angular weight folded in. Work with the
    // full node set anyway to honor the stated fit.
    cplx num = 0.0;
    double den = 0.0;
    for (int j = 0; j < T; ++j) {
        for (int i = 0; i < nodes.M; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * nodes.M + i;
            double ang;
            if (m == 0)
                ang = 1.0 / std::sqrt(2.0 * kPi);
            else
                ang = std::cos(m * nodes.thetas[i]) / std::sqrt(kPi);
            const double psi = Rnode[j] * ang;
            const cplx fpsi = phase * I[j] * ang;
            num += nodes.w[idx] * psi * fpsi;
            den += nodes.w[idx] * psi * psi;
        }
    }
    if (den <= 0.0) throw NumericFailure("prolate_eigenvalue: degenerate fit");
    EigenvalueFit fit;
    fit.alpha = num / den;
    double res2 = 0.0;
    for (int j = 0; j < T; ++j) {
        for (int i = 0; i < nodes.M; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * nodes.M + i;
            double ang;
            if (m == 0)
                ang = 1.0 / std::sqrt(2.0 * kPi);
            else
                ang = std::cos(m * nodes.thetas[i]) / std::sqrt(kPi);
            const cplx diff = phase * I[j] * ang - fit.alpha * Rnode[j] * ang;
            res2 += nodes.w[idx] * std::norm(diff);
        }
    }
    fit.residual = std::sqrt(res2);
    return fit;
}

PswfBasis build_basis(double c, double alpha_tilde, const PNodeSet& nodes, PswfCaps caps,
                      double resid_tol) {
    if (!(c > 0)) throw InvalidArgument("build_basis: c must be positive");
    if (!(alpha_tilde > 0.0) || !(alpha_tilde < 1.0))
        throw InvalidArgument("build_basis: alpha_tilde must lie in (0, 1)");
    const int m_max = caps.m_max > 0 ? caps.m_max : static_cast<int>(std::ceil(c)) + 8;
    const int n_max = caps.n_max > 0 ? caps.n_max : static_cast<int>(std::ceil(c / 2)) + 8;
    const int J = n_max + 16;

    PswfBasis basis;
    basis.c = c;
    basis.alpha_tilde = alpha_tilde;

    double cutoff = 0.0;  // set once alpha_00 is known
    int consecutive_empty = 0;
    for (int m = 0; m <= m_max; ++m) {
        const Matrix A = assemble_sturm_liouville(m, c, J);
        const EigResult eig = solve_radial_eigs(A);
        const int n_resolved = std::min(n_max, (3 * J) / 4 - 1);
        bool retained_any = false;
        for (int n = 0; n <= n_max; ++n) {
            std::vector<double> coeffs(J);
            for (int i = 0; i < J; ++i) coeffs[i] = eig.vectors.at(i, n);
            const EigenvalueFit fit = prolate_eigenvalue(m, coeffs, c, nodes);
            if (m == 0 && n == 0) {
                basis.alpha00 = fit.alpha;
                cutoff = alpha_tilde * std::abs(fit.alpha);
            }
            if (std::abs(fit.alpha) < cutoff) break;  // |alpha| decreases in n
            if (n > n_resolved)
                throw CapTooSmall("build_basis: retained mode beyond resolved spectrum");
            if (fit.residual > resid_tol * std::abs(basis.alpha00))
                throw EigenpairRejected("build_basis: eigen-relation residual too large");
            retained_any = true;
            for (int l = 1; l <= (m == 0 ? 1 : 2); ++l) {
                PswfEntry e;
                e.m = m;
                e.n = n;
                e.l = l;
                e.chi = eig.values[n];
                e.alpha = fit.alpha;
                e.residual = fit.residual;
                e.coeffs = coeffs;
                basis.entries.push_back(std::move(e));
            }
            if (n == n_max)
                throw CapTooSmall("build_basis: n cap reached with retention still firing");
        }
        if (retained_any) {
            consecutive_empty = 0;
            if (m == m_max)
                throw CapTooSmall("build_basis: m cap reached with retention still firing");
        } else {
            if (++consecutive_empty >= 2) break;
        }
    }
    if (basis.entries.empty()) throw NumericFailure("build_basis: no modes retained");
    std::sort(basis.entries.begin(), basis.entries.end(),
              [](const PswfEntry& a, const PswfEntry& b) {
                  const double na = std::abs(a.alpha), nb = std::abs(b.alpha);
                  if (na != nb) return na > nb;
                  if (a.m != b.m) return a.m < b.m;
                  if (a.n != b.n) return a.n < b.n;
                  return a.l < b.l;
              });
    return basis;
}

}  // namespace ibs2

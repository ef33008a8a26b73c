#pragma once

// The reduced operator T_n: its Weyl symbol Phi(xi, n) from the Laguerre
// integral, truncated matrices in the Hermite basis, spectra, moments, and
// the trace-limit comparison.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "landau/potentials.hpp"
#include "landau/radon.hpp"
#include "landau/specfun.hpp"
#include "landau/weyl.hpp"

namespace landau {

struct ClusterMeasure {
    std::vector<double> eigenvalues;  // scaled units (symbol scale)
    std::string provenance;           // "reduced" | "full-2d"
    int basis_size = 0;
    double hbar = 0.0;
};

// Phi(xi, n) = ((-1)^n / hbar) \int_0^infty Vtilde(xi, u) e^{-u/hbar} L_n(2u/hbar) du
// evaluated as (-1)^n sum_i W_i Vtilde(xi, hbar t_i) [e^{-t_i} L_n(2 t_i)].
inline double reduced_symbol_with_rule(const Potential& V, const PhasePoint& xi,
                                       const SemiclassicalPoint& pt, const QuadratureRule& gl) {
    double sum = 0.0;
    for (int i = 0; i < gl.order; ++i) {
        double sw = gl.scaled_weights[i];
        if (sw == 0.0) continue;
        double wl = weighted_laguerre(pt.n, 2.0 * gl.nodes[i]);
        if (wl == 0.0) continue;
        sum += sw * circle_average(V, xi, pt.hbar * gl.nodes[i]) * wl;
    }
    return (pt.n % 2 == 0) ? sum : -sum;
}

inline double reduced_symbol(const Potential& V, const PhasePoint& xi,
                             const SemiclassicalPoint& pt, int order = -1,
                             bool check_convergence = false, double rel_tol = 1e-9) {
    if (order < 1) order = 2 * pt.n + 64;
    QuadratureRule gl = gauss_rule(QuadKind::GaussLaguerre, order);
    double val = reduced_symbol_with_rule(V, xi, pt, gl);
    if (check_convergence) {
        QuadratureRule gl2 = gauss_rule(QuadKind::GaussLaguerre, 2 * order);
        double val2 = reduced_symbol_with_rule(V, xi, pt, gl2);
        if (std::abs(val2 - val) > rel_tol * (1.0 + std::abs(val2)))
            throw std::runtime_error("reduced_symbol: quadrature not converged (" +
                                     std::to_string(val) + " vs " + std::to_string(val2) + ")");
        val = val2;
    }
    return val;
}

// log-log slope of |Phi(xi,n) - Vtilde(xi;E)| against hbar; ~2 expected.
// Returns the slope, or throws the string "converged" marker via flag.
struct ResidualRate {
    std::vector<double> hbars;
    std::vector<double> residuals;
    double slope = 0.0;
    bool converged_below_floor = false;  // residuals too small to fit
};

inline ResidualRate symbol_residual_rate(const Potential& V, const PhasePoint& xi, double E,
                                         const std::vector<int>& n_list) {
    if (n_list.size() < 2)
        throw std::invalid_argument("symbol_residual_rate: need at least 2 indices");
    ResidualRate out;
    double target = circle_average(V, xi, E);
    for (int n : n_list) {
        SemiclassicalPoint pt(E, n);
        out.hbars.push_back(pt.hbar);
        out.residuals.push_back(reduced_symbol(V, xi, pt) - target);
    }
    bool all_tiny = true;
    for (double r : out.residuals)
        if (std::abs(r) > 1e-12) all_tiny = false;
    if (all_tiny) {
        out.converged_below_floor = true;
        return out;
    }
    out.slope = loglog_slope(out.hbars, out.residuals);
    return out;
}

// |contribution to the Laguerre integral from u > M_cut|.
inline double tail_truncation_check(const Potential& V, const PhasePoint& xi,
                                    const SemiclassicalPoint& pt, double M_cut, int order = -1) {
    if (order < 1) order = 2 * pt.n + 64;
    QuadratureRule gl = gauss_rule(QuadKind::GaussLaguerre, order);
    double tcut = M_cut / pt.hbar;
    double sum = 0.0;
    for (int i = 0; i < gl.order; ++i) {
        if (gl.nodes[i] <= tcut) continue;
        double sw = gl.scaled_weights[i];
        if (sw == 0.0) continue;
        double wl = weighted_laguerre(pt.n, 2.0 * gl.nodes[i]);
        sum += sw * circle_average(V, xi, pt.hbar * gl.nodes[i]) * wl;
    }
    return std::abs(sum);
}

// --- Matrices and spectra ----------------------------------------------

// T_n truncated to the first M Hermite basis functions (same hbar).
// Radial potentials make Phi radial in xi, so the matrix is diagonal with
// entries given by the radial eigenvalue formula applied to the profile
// r -> Phi((r,0), n); the grid path handles the general case.
inline Eigen::MatrixXd reduced_matrix(const Potential& V, const SemiclassicalPoint& pt, int M,
                                      int symbol_order = -1, int grid_order = -1,
                                      bool force_grid = false) {
    if (M < 1) throw std::invalid_argument("reduced_matrix: M < 1");
    if (symbol_order < 1) symbol_order = 2 * pt.n + 64;
    QuadratureRule gl_symbol = gauss_rule(QuadKind::GaussLaguerre, symbol_order);

    if (V.radial_about_origin() && !force_grid) {
        // outer Laguerre integral in the xi radius, shared nodes across j
        int outer_order = 2 * M + 64;
        QuadratureRule gl_outer = gauss_rule(QuadKind::GaussLaguerre, outer_order);
        // Phi at the outer radial nodes r = sqrt(hbar t)
        std::vector<double> phi(outer_order);
        for (int i = 0; i < outer_order; ++i) {
            double r = std::sqrt(pt.hbar * gl_outer.nodes[i]);
            phi[i] = reduced_symbol_with_rule(V, PhasePoint{r, 0.0}, pt, gl_symbol);
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(M, M);
        for (int i = 0; i < outer_order; ++i) {
            double sw = gl_outer.scaled_weights[i];
            if (sw == 0.0 || phi[i] == 0.0) continue;
            std::vector<double> wl = weighted_laguerre_all(M - 1, 2.0 * gl_outer.nodes[i]);
            for (int j = 0; j < M; ++j) {
                double sgn = (j % 2 == 0) ? 1.0 : -1.0;
                T(j, j) += sgn * sw * phi[i] * wl[j];
            }
        }
        return T;
    }

    if (grid_order < 1) grid_order = std::max(2 * M + 32, 64);
    auto symbol = [&](double x2, double p2) {
        return reduced_symbol_with_rule(V, PhasePoint{x2, p2}, pt, gl_symbol);
    };
    SymbolGrid grid = make_symbol_grid(symbol, pt.hbar, grid_order);
    Eigen::MatrixXd T = weyl_matrix(grid, M);
    double asym = (T - T.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * (1.0 + T.cwiseAbs().maxCoeff()))
        throw std::runtime_error("reduced_matrix: symmetry violation " + std::to_string(asym));
    return T;
}

inline ClusterMeasure reduced_spectrum(const Potential& V, const SemiclassicalPoint& pt, int M,
                                       int symbol_order = -1, int grid_order = -1) {
    Eigen::MatrixXd T = reduced_matrix(V, pt, M, symbol_order, grid_order);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("reduced_spectrum: eigensolver failed");
    ClusterMeasure cm;
    cm.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + M);
    cm.provenance = "reduced";
    cm.basis_size = M;
    cm.hbar = pt.hbar;
    return cm;
}

// Phase-space integral (1/2pi) \int F(Vtilde(xi;E)) dxi.
inline double symbol_functional_integral(const Potential& V, double E,
                                         const std::function<double(double)>& F,
                                         int radial_order = 400, int angle_points = 128) {
    double wmin = V.min_inverse_width();
    double Rmax = std::numbers::sqrt2 *
                  (V.max_center_norm() + std::sqrt(0.5 * E) + std::sqrt(std::log(1e18) / wmin) + 1.0);
    QuadratureRule gl = gauss_legendre_ab(radial_order, 0.0, Rmax);
    bool radial = V.radial_about_origin();
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        double r = gl.nodes[i];
        double ang;
        if (radial) {
            ang = 2.0 * std::numbers::pi * F(circle_average(V, PhasePoint{r, 0.0}, E));
        } else {
            ang = 0.0;
            for (int k = 0; k < angle_points; ++k) {
                double th = 2.0 * std::numbers::pi * k / angle_points;
                ang += F(circle_average(V, PhasePoint{r * std::cos(th), r * std::sin(th)}, E));
            }
            ang *= 2.0 * std::numbers::pi / angle_points;
        }
        total += gl.weights[i] * r * ang;
    }
    return total / (2.0 * std::numbers::pi);
}

// trace of the ell-th power of the truncated T_n, with the matching
// phase-space integral (1/2pi hbar) \int Vtilde^ell for comparison.
struct MomentPair {
    double trace = 0.0;
    double integral_over_2pihbar = 0.0;
};

inline MomentPair reduced_moments(const Potential& V, const SemiclassicalPoint& pt, int M,
                                  int ell) {
    if (ell < 1) throw std::invalid_argument("reduced_moments: ell < 1");
    ClusterMeasure cm = reduced_spectrum(V, pt, M);
    MomentPair out;
    for (double lam : cm.eigenvalues) out.trace += std::pow(lam, ell);
    out.integral_over_2pihbar =
        symbol_functional_integral(V, pt.energy, [ell](double v) { return std::pow(v, ell); }) /
        pt.hbar;
    return out;
}

// --- Test functions and the trace-limit table ---------------------------

// rho(t) = t^k * bump(t/T): smooth, compactly supported, rho(0) = 0.
struct TestFunction {
    int power = 2;
    double support = 1.0;
    double operator()(double t) const {
        double s = t / support;
        if (std::abs(s) >= 1.0) return 0.0;
        return std::pow(t, power) * std::exp(-1.0 / (1.0 - s * s));
    }
};

// Basis-size rule for the Hermite truncation: either fixed M, or M chosen so
// the basis covers the disc |xi| <= cover_radius at the given hbar (the
// phase-space footprint of the first M states has radius sqrt(hbar(2M+1))).
struct BasisRule {
    enum class Kind { Fixed, Cover } kind = Kind::Fixed;
    int fixed_m = 64;
    double cover_radius = 4.0;

    int size(double hbar) const {
        if (kind == Kind::Fixed) return fixed_m;
        int m = (int)std::ceil((cover_radius * cover_radius / hbar - 1.0) / 2.0);
        return std::max(m, 8);
    }
    static BasisRule fixed(int m) { return {Kind::Fixed, m, 0.0}; }
    static BasisRule cover(double r) { return {Kind::Cover, 0, r}; }
};

struct SzegoRow {
    int n = 0;
    double hbar = 0.0;
    int basis = 0;
    double lhs = 0.0;  // hbar * sum rho(eigenvalues)
    double rhs = 0.0;  // (1/2pi) \int rho(Vtilde(xi;E)) dxi
    double gap = 0.0;
};

inline std::vector<SzegoRow> szego_check(const Potential& V, double E,
                                         const std::function<double(double)>& rho,
                                         const std::vector<int>& n_list,
                                         const BasisRule& rule) {
    double rhs = symbol_functional_integral(V, E, rho);
    std::vector<SzegoRow> rows;
    for (int n : n_list) {
        SemiclassicalPoint pt(E, n);
        int M = rule.size(pt.hbar);
        ClusterMeasure cm = reduced_spectrum(V, pt, M);
        double lhs = 0.0;
        for (double lam : cm.eigenvalues) lhs += rho(lam);
        lhs *= pt.hbar;
        rows.push_back({n, pt.hbar, M, lhs, rhs, lhs - rhs});
    }
    return rows;
}

// --- Taylor remainder oracle --------------------------------------------

// R(t) = \int_0^1 \int_0^1 u f''(u v (t-E) + E) du dv, so that
// f(t) = f(E) + (t-E) f'(E) + (t-E)^2 R(t) identically.
inline double taylor_remainder(const std::function<double(double)>& fpp, double E, double t,
                               int order = 32) {
    QuadratureRule gl = gauss_legendre_ab(order, 0.0, 1.0);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        double u = gl.nodes[i];
        double inner = 0.0;
        for (int j = 0; j < order; ++j) {
            double v = gl.nodes[j];
            inner += gl.weights[j] * fpp(u * v * (t - E) + E);
        }
        total += gl.weights[i] * u * inner;
    }
    return total;
}

}  // namespace landau

#pragma once

// Weyl quantization numerics: eigenvalues of radial symbols through the
// Laguerre integral formula, Wigner cross-transforms of oscillator states,
// and symbol-to-matrix-element evaluation on phase-space grids.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "landau/specfun.hpp"

namespace landau {

struct RadialSymbol {
    std::function<double(double)> profile;  // rho(r), r >= 0
};

// lambda_n = (-1)^n \int_0^infty rho(sqrt(hbar t)) e^{-t} L_n(2t) dt, by
// Gauss-Laguerre after the substitution t = u/hbar.  The integrand is
// assembled from weighted factors: w_i e^{t_i} times e^{-t_i} L_n(2 t_i),
// both finite at every node.
inline double radial_eigenvalue_with_rule(const RadialSymbol& rho, int n, double hbar,
                                          const QuadratureRule& gl) {
    double sum = 0.0;
    for (int i = 0; i < gl.order; ++i) {
        double sw = gl.scaled_weights[i];
        if (sw == 0.0) continue;
        double t = gl.nodes[i];
        double wl = weighted_laguerre(n, 2.0 * t);
        if (wl == 0.0) continue;
        sum += sw * rho.profile(std::sqrt(hbar * t)) * wl;
    }
    return (n % 2 == 0) ? sum : -sum;
}

inline double radial_eigenvalue(const RadialSymbol& rho, int n, double hbar,
                                int order = -1, bool check_convergence = false,
                                double rel_tol = 1e-9) {
    if (n < 0 || hbar <= 0.0) throw std::invalid_argument("radial_eigenvalue: bad arguments");
    if (order < 1) order = 2 * n + 64;
    QuadratureRule gl = gauss_rule(QuadKind::GaussLaguerre, order);
    double val = radial_eigenvalue_with_rule(rho, n, hbar, gl);
    if (check_convergence) {
        QuadratureRule gl2 = gauss_rule(QuadKind::GaussLaguerre, 2 * order);
        double val2 = radial_eigenvalue_with_rule(rho, n, hbar, gl2);
        if (std::abs(val2 - val) > rel_tol * (1.0 + std::abs(val2)))
            throw std::runtime_error("radial_eigenvalue: quadrature not converged (" +
                                     std::to_string(val) + " vs " + std::to_string(val2) + ")");
        val = val2;
    }
    return val;
}

// Residuals lambda_n - rho(sqrt(E)) along a list of indices at fixed E.
inline std::vector<double> radial_eigenvalue_limit_check(const RadialSymbol& rho, double E,
                                                         const std::vector<int>& n_list) {
    std::vector<double> res;
    res.reserve(n_list.size());
    double target = rho.profile(std::sqrt(E));
    for (int n : n_list) {
        SemiclassicalPoint pt(E, n);
        res.push_back(radial_eigenvalue(rho, n, pt.hbar) - target);
    }
    return res;
}

// --- Wigner cross-transform --------------------------------------------

// G(e_m, e_k)(x, p) = (1/pi hbar) \int e^{2 i v p / hbar} e_m(x-v) e_k(x+v) dv,
// evaluated by Gauss-Hermite quadrature in the scaled variable s = v/sqrt(hbar).
inline std::complex<double> wigner_cross(int m, int k, double x, double p, double hbar,
                                         int order = -1) {
    if (m < 0 || k < 0 || hbar <= 0.0) throw std::invalid_argument("wigner_cross: bad arguments");
    if (order < 1) order = m + k + 32;
    QuadratureRule gh = gauss_rule(QuadKind::GaussHermite, order);
    double X = x / std::sqrt(hbar), P = p / std::sqrt(hbar);
    int nmax = std::max(m, k);
    std::complex<double> sum = 0.0;
    for (int i = 0; i < order; ++i) {
        double s = gh.nodes[i];
        double hm = hermite_htilde_all(nmax, X - s)[m];
        double hk = hermite_htilde_all(nmax, X + s)[k];
        double phase = 2.0 * s * P;
        sum += gh.weights[i] * hm * hk * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    // the two half-Gaussians of the states combine to e^{-X^2} e^{-s^2};
    // the s-part is the Gauss-Hermite weight, the X-part stays out front
    return sum * std::exp(-X * X) / (std::numbers::pi * hbar);
}

// Closed form (validated against the quadrature route in the test suite):
// for m <= k,
//   G(e_m,e_k)(x,p) = ((-1)^m / pi hbar) sqrt(m!/k!)
//                     (sqrt(2/hbar)(x+ip))^{k-m} L_m^{(k-m)}(2r^2/hbar) e^{-r^2/hbar}.
// For m > k use G(e_m,e_k) = conj(G(e_k,e_m)).
inline std::complex<double> wigner_cross_closed(int m, int k, double x, double p, double hbar) {
    if (m > k) return std::conj(wigner_cross_closed(k, m, x, p, hbar));
    int a = k - m;
    double t = 2.0 * (x * x + p * p) / hbar;
    // e^{-t/2} L_m^{(a)}(t) by the pre-weighted generalized recurrence
    double lm1 = 0.0, l = std::exp(-0.5 * t);
    for (int j = 0; j < m; ++j) {
        double lp1 = ((a + 2.0 * j + 1.0 - t) * l - (j + a) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    // sqrt(m!/k!) (sqrt(2/hbar) z)^a as a product of a balanced factors
    std::complex<double> z(x, p);
    z *= std::sqrt(2.0 / hbar);
    std::complex<double> pref = 1.0;
    for (int j = 1; j <= a; ++j) pref *= z / std::sqrt((double)(m + j));
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign / (std::numbers::pi * hbar) * pref * l;
}

// Weighted generalized Laguerre table e^{-t/2} L_j^{(a)}(t), j = 0..jmax.
inline std::vector<double> weighted_glaguerre_all(int jmax, int a, double t) {
    std::vector<double> out(jmax + 1);
    double lm1 = 0.0, l = std::exp(-0.5 * t);
    out[0] = l;
    for (int j = 0; j < jmax; ++j) {
        double lp1 = ((a + 2.0 * j + 1.0 - t) * l - (j + a) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
        out[j + 1] = l;
    }
    return out;
}

// Table of G(e_m, e_k)(x, p) for all 0 <= m, k < M (closed-form route).
inline Eigen::MatrixXcd wigner_cross_table(int M, double x, double p, double hbar) {
    Eigen::MatrixXcd G(M, M);
    double t = 2.0 * (x * x + p * p) / hbar;
    std::complex<double> z(x, p);
    z *= std::sqrt(2.0 / hbar);
    double inv_pihbar = 1.0 / (std::numbers::pi * hbar);
    for (int a = 0; a < M; ++a) {
        std::vector<double> L = weighted_glaguerre_all(M - 1 - a, a, t);
        std::complex<double> pref = inv_pihbar;
        for (int m = 0; m + a < M; ++m) {
            if (m > 0) pref = -pref;  // (-1)^m
            std::complex<double> zp = pref;
            // rebuild sqrt(m!/(m+a)!) z^a incrementally is messier than direct:
            std::complex<double> fac = 1.0;
            for (int j = 1; j <= a; ++j) fac *= z / std::sqrt((double)(m + j));
            G(m, m + a) = zp * fac * L[m];
            if (a > 0) G(m + a, m) = std::conj(G(m, m + a));
        }
    }
    return G;
}

// --- Symbol grids and matrix elements -----------------------------------

// Tensor Gauss-Hermite discretization of the phase plane, nodes scaled by
// sqrt(hbar).  comp_weights carry the e^{node^2} compensation so that
// sum_{ij} cw_i cw_j F(x_i, p_j) * hbar approximates \int F dx dp for F with
// Gaussian decay at the grid scale.
struct SymbolGrid {
    int order = 0;
    double hbar = 0.0;
    std::vector<double> axis_nodes;    // scaled: sqrt(hbar) * GH node
    std::vector<double> comp_weights;  // w_i e^{y_i^2}
    Eigen::MatrixXd values;            // symbol at (x_i, p_j)
};

inline SymbolGrid make_symbol_grid(const std::function<double(double, double)>& symbol,
                                   double hbar, int order) {
    if (order < 1 || hbar <= 0.0) throw std::invalid_argument("make_symbol_grid: bad arguments");
    QuadratureRule gh = gauss_rule(QuadKind::GaussHermite, order);
    SymbolGrid g;
    g.order = order;
    g.hbar = hbar;
    g.axis_nodes.resize(order);
    g.comp_weights = gh.scaled_weights;
    double sh = std::sqrt(hbar);
    for (int i = 0; i < order; ++i) g.axis_nodes[i] = sh * gh.nodes[i];
    g.values.resize(order, order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            g.values(i, j) = symbol(g.axis_nodes[i], g.axis_nodes[j]);
    return g;
}

// <Op^W(a) e_m, e_k> = \int\int a(u,p) G(e_m,e_k)(u,p) du dp on the grid.
// Real symbols with real basis functions give a real symmetric matrix; the
// imaginary residual is returned for assertion by the caller.
inline std::complex<double> weyl_matrix_element_c(const SymbolGrid& grid, int m, int k) {
    std::complex<double> sum = 0.0;
    for (int i = 0; i < grid.order; ++i) {
        double x = grid.axis_nodes[i];
        double cwi = grid.comp_weights[i];
        if (cwi == 0.0) continue;
        std::complex<double> row = 0.0;
        for (int j = 0; j < grid.order; ++j) {
            double cwj = grid.comp_weights[j];
            if (cwj == 0.0) continue;
            row += cwj * grid.values(i, j) * wigner_cross_closed(m, k, x, grid.axis_nodes[j], grid.hbar);
        }
        sum += cwi * row;
    }
    return sum * grid.hbar;
}

inline double weyl_matrix_element(const SymbolGrid& grid, int m, int k,
                                  double imag_tol = 1e-8) {
    std::complex<double> v = weyl_matrix_element_c(grid, m, k);
    if (std::abs(v.imag()) > imag_tol * (1.0 + std::abs(v.real())))
        throw std::runtime_error("weyl_matrix_element: imaginary residual " +
                                 std::to_string(v.imag()));
    return v.real();
}

// Full M x M matrix of <Op^W(a) e_m, e_k> over the grid, assembled with the
// per-node Wigner table (one pass over the grid).
inline Eigen::MatrixXd weyl_matrix(const SymbolGrid& grid, int M, double imag_tol = 1e-8) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(M, M);
    for (int i = 0; i < grid.order; ++i) {
        double cwi = grid.comp_weights[i];
        if (cwi == 0.0) continue;
        for (int j = 0; j < grid.order; ++j) {
            double w = cwi * grid.comp_weights[j] * grid.values(i, j);
            if (w == 0.0) continue;
            acc += w * wigner_cross_table(M, grid.axis_nodes[i], grid.axis_nodes[j], grid.hbar);
        }
    }
    acc *= grid.hbar;
    double imax = acc.imag().cwiseAbs().maxCoeff();
    double rmax = acc.real().cwiseAbs().maxCoeff();
    if (imax > imag_tol * (1.0 + rmax))
        throw std::runtime_error("weyl_matrix: imaginary residual " + std::to_string(imax));
    Eigen::MatrixXd out = acc.real();
    return 0.5 * (out + out.transpose());
}

}  // namespace landau

#pragma once

// Inverse-spectral pipeline: from I(r) recover the ring averages of |Vhat|^2
// by regularized deconvolution of the multiplicative convolution with
// K(s) = J0(s)^2, and Sobolev-norm invariants.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "landau/potentials.hpp"
#include "landau/radon.hpp"
#include "landau/specfun.hpp"

namespace landau {

struct LogGrid {
    double rho_min = 0.0, rho_max = 0.0;
    int count = 0;
    std::vector<double> nodes;  // geometric
    double dlog = 0.0;

    LogGrid() = default;
    LogGrid(double rmin, double rmax, int n) : rho_min(rmin), rho_max(rmax), count(n) {
        if (rmin <= 0.0 || rmax <= rmin || n < 2) throw std::invalid_argument("LogGrid: bad spec");
        dlog = std::log(rmax / rmin) / (n - 1);
        nodes.resize(n);
        for (int i = 0; i < n; ++i) nodes[i] = rmin * std::exp(i * dlog);
    }
};

// W(rho) = rho^{-2} \int_0^{2pi} |Vhat(rho^{-1} cos, rho^{-1} sin)|^2 dphi,
// the profile whose multiplicative convolution with K(s) = J0(s)^2 gives I(r).
// (The exponent makes I(r) = \int K(r rho) W(1/rho) drho/rho agree with the
// polar form of \int J0^2 |Vhat|^2 dxi; see the two-route test.)
struct RingProfile {
    LogGrid grid;
    std::vector<double> values;
};

inline RingProfile ring_profile_from_potential(const Potential& V, const LogGrid& grid,
                                               int angle_points = 256) {
    RingProfile W;
    W.grid = grid;
    W.values.resize(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        double rho = grid.nodes[i];
        W.values[i] = ring_average_fhat2(V, 1.0 / rho, angle_points) / (rho * rho);
    }
    return W;
}

inline double kernel_K(double s) {
    double j = bessel_J0(s);
    return j * j;
}

struct ForwardResult {
    std::vector<double> I;
    double boundary_fraction = 0.0;  // largest boundary integrand / peak
};

// I(r) = \int_0^infty K(r rho) W(1/rho) drho/rho, log-grid trapezoid with the
// substitution sigma = 1/rho so the unknowns sit directly on the W grid.
inline ForwardResult forward_convolve(const RingProfile& W, const std::vector<double>& r_nodes) {
    const LogGrid& g = W.grid;
    ForwardResult out;
    out.I.resize(r_nodes.size());
    for (size_t a = 0; a < r_nodes.size(); ++a) {
        double r = r_nodes[a], sum = 0.0, peak = 0.0;
        double first = 0.0, last = 0.0;
        for (int j = 0; j < g.count; ++j) {
            double term = kernel_K(r / g.nodes[j]) * W.values[j];
            if (j == 0) first = term;
            if (j == g.count - 1) last = term;
            peak = std::max(peak, std::abs(term));
            sum += term;
        }
        out.I[a] = sum * g.dlog;
        if (peak > 0.0)
            out.boundary_fraction =
                std::max(out.boundary_fraction, std::max(std::abs(first), std::abs(last)) / peak);
    }
    return out;
}

struct DeconvolveResult {
    RingProfile W;
    double residual_norm = 0.0;
    double lambda = 0.0;
    double clipped_mass_fraction = 0.0;
    double condition_estimate = 0.0;
    std::vector<std::pair<double, double>> regularization_path;  // (lambda, residual)
};

// Discretize I = A w (A from the forward kernel) and solve by ridge-regularized
// least squares with a second-difference smoothness penalty, nonnegativity by
// clipping.  lambda < 0 selects by discrepancy against noise_floor.
inline DeconvolveResult mellin_deconvolve(const std::vector<double>& I_samples,
                                          const std::vector<double>& r_nodes,
                                          const LogGrid& target_grid, double lambda = -1.0,
                                          double noise_floor = -1.0) {
    int nr = (int)r_nodes.size(), nw = target_grid.count;
    if ((int)I_samples.size() != nr)
        throw std::invalid_argument("mellin_deconvolve: I/r size mismatch");
    Eigen::MatrixXd A(nr, nw);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nw; ++j)
            A(i, j) = target_grid.dlog * kernel_K(r_nodes[i] / target_grid.nodes[j]);
    for (int i = 0; i < nr; ++i)
        if (A.row(i).cwiseAbs().maxCoeff() == 0.0)
            throw std::runtime_error("mellin_deconvolve: zero kernel row (grid inadmissible)");

    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(I_samples.data(), nr);
    Eigen::MatrixXd AtA = A.transpose() * A;
    Eigen::VectorXd Atb = A.transpose() * b;

    // second-difference penalty on the log grid
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(nw - 2, nw);
    for (int i = 0; i < nw - 2; ++i) {
        D(i, i) = 1.0;
        D(i, i + 1) = -2.0;
        D(i, i + 2) = 1.0;
    }
    Eigen::MatrixXd DtD = D.transpose() * D;

    double bnorm = b.norm();
    if (noise_floor < 0.0) noise_floor = 1e-7 * bnorm;

    DeconvolveResult out;
    auto solve_for = [&](double lam) {
        Eigen::MatrixXd M = AtA + lam * DtD + (1e-14 + 1e-10 * lam) * Eigen::MatrixXd::Identity(nw, nw);
        Eigen::VectorXd w = M.ldlt().solve(Atb);
        return w;
    };

    Eigen::VectorXd w;
    if (lambda >= 0.0) {
        w = solve_for(lambda);
        out.lambda = lambda;
        out.residual_norm = (A * w - b).norm();
        out.regularization_path.push_back({lambda, out.residual_norm});
    } else {
        // discrepancy principle: largest lambda whose residual is at the floor
        double best_lam = 1e-12;
        Eigen::VectorXd best_w;
        for (double lam = 1e-2; lam >= 1e-13; lam /= 4.0) {
            Eigen::VectorXd wi = solve_for(lam);
            double res = (A * wi - b).norm();
            out.regularization_path.push_back({lam, res});
            best_lam = lam;
            best_w = wi;
            if (res <= std::max(noise_floor, 1e-12 * bnorm)) break;
        }
        w = best_w;
        out.lambda = best_lam;
        out.residual_norm = (A * w - b).norm();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(AtA);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    out.condition_estimate = smin > 0.0 ? svd.singularValues()(0) / smin : 1e300;

    double clipped = 0.0, total = 0.0;
    for (int j = 0; j < nw; ++j) {
        total += std::abs(w[j]);
        if (w[j] < 0.0) {
            clipped += -w[j];
            w[j] = 0.0;
        }
    }
    out.clipped_mass_fraction = total > 0.0 ? clipped / total : 0.0;
    out.W.grid = target_grid;
    out.W.values.assign(w.data(), w.data() + nw);
    return out;
}

// --- Sobolev norms -------------------------------------------------------

enum class SobolevConvention { Paper, Standard };  // weight (1+|xi|^2)^{s/2} vs ^s

inline double sobolev_norm_sq(const Potential& V, double s,
                              SobolevConvention conv = SobolevConvention::Paper,
                              int radial_order = 300, int angle_points = 256) {
    double Rmax = detail::fourier_radius(V) + 2.0;
    QuadratureRule gl = gauss_legendre_ab(radial_order, 0.0, Rmax);
    double pw = (conv == SobolevConvention::Paper) ? 0.5 * s : s;
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        double rho = gl.nodes[i];
        total += gl.weights[i] * rho * std::pow(1.0 + rho * rho, pw) *
                 ring_average_fhat2(V, rho, angle_points);
    }
    return total;
}

struct IsospectralReport {
    std::vector<double> r_nodes;
    std::vector<double> I1, I2;
    double max_rel_I_gap = 0.0;
    double worst_r = 0.0;
    bool i_isospectral = false;
    std::vector<double> s_list;
    std::vector<double> norm1, norm2, norm_gap;
};

inline IsospectralReport isospectral_compare(const Potential& V1, const Potential& V2,
                                             const std::vector<double>& r_nodes,
                                             const std::vector<double>& s_list,
                                             double tolerance = 1e-8) {
    IsospectralReport rep;
    rep.r_nodes = r_nodes;
    rep.s_list = s_list;
    for (double r : r_nodes) {
        double i1 = spectral_invariant_I(V1, r);
        double i2 = spectral_invariant_I(V2, r);
        rep.I1.push_back(i1);
        rep.I2.push_back(i2);
        double rel = std::abs(i1 - i2) / std::max({std::abs(i1), std::abs(i2), 1e-300});
        if (rel > rep.max_rel_I_gap) {
            rep.max_rel_I_gap = rel;
            rep.worst_r = r;
        }
    }
    rep.i_isospectral = rep.max_rel_I_gap <= tolerance;
    if (rep.i_isospectral) {
        for (double s : s_list) {
            double n1 = sobolev_norm_sq(V1, s);
            double n2 = sobolev_norm_sq(V2, s);
            rep.norm1.push_back(n1);
            rep.norm2.push_back(n2);
            rep.norm_gap.push_back(std::abs(n1 - n2) / std::max({n1, n2, 1e-300}));
        }
    }
    return rep;
}

}  // namespace landau

#pragma once

// Desk-scale 2D verification: assemble H1 + hbar^2 K in a tensor oscillator
// basis, extract the eigenvalue cluster near E, and compare with the reduced
// operator route.
//
// A real Weyl symbol gives a complex *Hermitian* matrix over a real basis
// (the Weyl kernel is complex unless the symbol is even in p), so the
// assembly here is complex Hermitian throughout; realness reappears only in
// the projected Landau blocks, where it is asserted.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "landau/potentials.hpp"
#include "landau/radon.hpp"
#include "landau/reduced.hpp"
#include "landau/specfun.hpp"
#include "landau/weyl.hpp"

namespace landau {

// W(x1, x2, p1, p2) = V((x1+p2)/sqrt2, (x2+p1)/sqrt2)
struct RotatedSymbol {
    const Potential* potential;
    double operator()(double x1, double x2, double p1, double p2) const {
        return potential->evaluator((x1 + p2) / std::numbers::sqrt2,
                                    (x2 + p1) / std::numbers::sqrt2);
    }
};

struct TensorBasisSpec {
    int N1 = 24, N2 = 24;
    double hbar = 0.0;
};

namespace detail {

// G tables for one factor: rows indexed by the pair (m,k) -> m*N+k, columns
// by the q x q phase grid (flattened), quadrature weights and the hbar
// factor of du dp folded in.
inline void wigner_factor_tables(int N, int q, double hbar, Eigen::MatrixXd& Gr,
                                 Eigen::MatrixXd& Gi, std::vector<double>& xnodes) {
    QuadratureRule gh = gauss_rule(QuadKind::GaussHermite, q);
    double sh = std::sqrt(hbar);
    xnodes.resize(q);
    for (int i = 0; i < q; ++i) xnodes[i] = sh * gh.nodes[i];
    Gr.resize(N * N, q * q);
    Gi.resize(N * N, q * q);
    for (int i = 0; i < q; ++i) {
        double cwi = gh.scaled_weights[i];
        for (int j = 0; j < q; ++j) {
            double w = hbar * cwi * gh.scaled_weights[j];
            int col = i * q + j;
            if (w == 0.0) {
                Gr.col(col).setZero();
                Gi.col(col).setZero();
                continue;
            }
            Eigen::MatrixXcd G = wigner_cross_table(N, xnodes[i], xnodes[j], hbar);
            for (int m = 0; m < N; ++m)
                for (int k = 0; k < N; ++k) {
                    Gr(m * N + k, col) = w * G(m, k).real();
                    Gi(m * N + k, col) = w * G(m, k).imag();
                }
        }
    }
}

}  // namespace detail

// Matrix elements of K = Op^W(W) over the tensor basis e_{m1} x e_{m2},
// with the pair indexing K[(m1,k1),(m2,k2)] = <K(e_m1 x e_m2), e_k1 x e_k2>
// so the (n,n) Landau block is directly addressable.
struct KAssembly {
    Eigen::MatrixXd KR, KI;      // real and imaginary parts, (N1^2) x (N2^2)
    double hermiticity_defect = 0.0;

    std::complex<double> at(int m1, int k1, int m2, int k2, int N1, int N2) const {
        return {KR(m1 * N1 + k1, m2 * N2 + k2), KI(m1 * N1 + k1, m2 * N2 + k2)};
    }
};

inline size_t assemble_full_bytes_estimate(const TensorBasisSpec& spec, int q) {
    size_t n1 = (size_t)spec.N1 * spec.N1, n2 = (size_t)spec.N2 * spec.N2;
    size_t qq = (size_t)q * q;
    size_t bytes = 0;
    bytes += 2 * n1 * qq * 8;   // factor-1 tables (re, im)
    bytes += 2 * n2 * qq * 8;   // factor-2 tables
    bytes += qq * qq * 8;       // W on the product grid
    bytes += 2 * n1 * qq * 8;   // intermediates
    bytes += 4 * n1 * n2 * 8;   // K parts
    size_t d = (size_t)spec.N1 * spec.N2;
    bytes += 2 * d * d * 16;    // complex H and eigensolver copy
    return bytes;
}

inline KAssembly assemble_K(const Potential& V, const TensorBasisSpec& spec, int q,
                            size_t memory_cap_bytes = (size_t)2 << 30) {
    size_t est = assemble_full_bytes_estimate(spec, q);
    if (est > memory_cap_bytes)
        throw std::runtime_error("assemble_K: estimated memory " + std::to_string(est >> 20) +
                                 " MiB exceeds cap");
    Eigen::MatrixXd G1r, G1i, G2r, G2i;
    std::vector<double> nodes1, nodes2;
    detail::wigner_factor_tables(spec.N1, q, spec.hbar, G1r, G1i, nodes1);
    detail::wigner_factor_tables(spec.N2, q, spec.hbar, G2r, G2i, nodes2);

    // W on the product grid: rows = factor-1 phase node (x1,p1), cols = factor-2
    RotatedSymbol W{&V};
    Eigen::MatrixXd Wgrid(q * q, q * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            int row = i * q + j;
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b)
                    Wgrid(row, a * q + b) = W(nodes1[i], nodes2[a], nodes1[j], nodes2[b]);
        }

    // contract: K = G1 * W * G2^T over the complex tables
    Eigen::MatrixXd Ar = G1r * Wgrid, Ai = G1i * Wgrid;

    KAssembly out;
    out.KR = Ar * G2r.transpose() - Ai * G2i.transpose();
    out.KI = Ar * G2i.transpose() + Ai * G2r.transpose();

    // Hermiticity under the simultaneous pair swaps (m,k) -> (k,m)
    int N1 = spec.N1, N2 = spec.N2;
    double defect = 0.0;
    for (int m1 = 0; m1 < N1; ++m1)
        for (int k1 = 0; k1 <= m1; ++k1)
            for (int m2 = 0; m2 < N2; ++m2)
                for (int k2 = 0; k2 < N2; ++k2) {
                    defect = std::max(defect, std::abs(out.KR(m1 * N1 + k1, m2 * N2 + k2) -
                                                       out.KR(k1 * N1 + m1, k2 * N2 + m2)));
                    defect = std::max(defect, std::abs(out.KI(m1 * N1 + k1, m2 * N2 + k2) +
                                                       out.KI(k1 * N1 + m1, k2 * N2 + m2)));
                }
    out.hermiticity_defect = defect;
    double scale = out.KR.cwiseAbs().maxCoeff();
    if (defect > 1e-8 * (1.0 + scale))
        throw std::runtime_error("assemble_K: hermiticity defect " + std::to_string(defect));
    return out;
}

// Full operator H1 + hbar^2 K as a dense Hermitian matrix over the tensor
// basis, row index m1*N2 + m2.
inline Eigen::MatrixXcd assemble_full(const Potential& V, const SemiclassicalPoint& pt,
                                      const TensorBasisSpec& spec_in, int q,
                                      size_t memory_cap_bytes = (size_t)2 << 30,
                                      double* hermiticity_out = nullptr) {
    TensorBasisSpec spec = spec_in;
    spec.hbar = pt.hbar;
    if (pt.n >= spec.N1)
        throw std::invalid_argument("assemble_full: cluster index n must be below N1");
    KAssembly ka = assemble_K(V, spec, q, memory_cap_bytes);
    if (hermiticity_out) *hermiticity_out = ka.hermiticity_defect;

    int N1 = spec.N1, N2 = spec.N2, D = N1 * N2;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(D, D);
    double h2 = pt.hbar * pt.hbar;
    for (int m1 = 0; m1 < N1; ++m1)
        for (int m2 = 0; m2 < N2; ++m2) {
            int row = m1 * N2 + m2;
            for (int k1 = 0; k1 < N1; ++k1)
                for (int k2 = 0; k2 < N2; ++k2)
                    H(row, k1 * N2 + k2) = h2 * ka.at(m1, k1, m2, k2, N1, N2);
            H(row, row) += pt.hbar * (2.0 * m1 + 1.0);
        }
    // exact Hermitization (defect already asserted small in assemble_K)
    return 0.5 * (H + H.adjoint()).eval();
}

inline std::vector<double> full_spectrum(const Eigen::MatrixXcd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("full_spectrum: eigensolver failed");
    return std::vector<double>(es.eigenvalues().data(),
                               es.eigenvalues().data() + H.rows());
}

// Eigenvalues lambda with |lambda - E| < hbar, shifted and scaled to
// (lambda - E)/hbar^2.
inline ClusterMeasure extract_cluster(const std::vector<double>& spectrum,
                                      const SemiclassicalPoint& pt) {
    ClusterMeasure cm;
    cm.provenance = "full-2d";
    cm.hbar = pt.hbar;
    for (double lam : spectrum)
        if (std::abs(lam - pt.energy) < pt.hbar)
            cm.eigenvalues.push_back((lam - pt.energy) / (pt.hbar * pt.hbar));
    if (cm.eigenvalues.empty())
        throw std::runtime_error("extract_cluster: empty cluster (truncation too small?)");
    return cm;
}

struct TwoRouteReport {
    Eigen::MatrixXcd block_2d;      // <K(e_n x h_l), e_n x h_j>, j,l < M
    Eigen::MatrixXd block_reduced;  // reduced_matrix(V, pt, M)
    double max_entry_gap = 0.0;
    std::vector<double> eig_2d;        // descending
    std::vector<double> eig_reduced;   // descending
    std::vector<double> top_eig_gaps;  // top-10 absolute gaps
};

inline TwoRouteReport two_route_check(const Potential& V, const SemiclassicalPoint& pt,
                                      const TensorBasisSpec& spec_in, int q, int M,
                                      size_t memory_cap_bytes = (size_t)2 << 30) {
    TensorBasisSpec spec = spec_in;
    spec.hbar = pt.hbar;
    if (M > spec.N2) throw std::invalid_argument("two_route_check: M must be <= N2");
    if (pt.n >= spec.N1) throw std::invalid_argument("two_route_check: n must be below N1");
    KAssembly ka = assemble_K(V, spec, q, memory_cap_bytes);

    TwoRouteReport rep;
    rep.block_2d.resize(M, M);
    int n = pt.n, N1 = spec.N1, N2 = spec.N2;
    // B(j,l) = <K psi_l, psi_j>, psi_j = e_n x h_j
    for (int j = 0; j < M; ++j)
        for (int l = 0; l < M; ++l)
            rep.block_2d(j, l) = ka.at(n, n, l, j, N1, N2);
    rep.block_2d = 0.5 * (rep.block_2d + rep.block_2d.adjoint()).eval();

    rep.block_reduced = reduced_matrix(V, pt, M);
    rep.max_entry_gap =
        (rep.block_2d - rep.block_reduced.cast<std::complex<double>>()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(rep.block_2d, Eigen::EigenvaluesOnly);
    rep.eig_2d.assign(es2.eigenvalues().data(), es2.eigenvalues().data() + M);
    std::sort(rep.eig_2d.begin(), rep.eig_2d.end(), std::greater<double>());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esr(rep.block_reduced, Eigen::EigenvaluesOnly);
    rep.eig_reduced.assign(esr.eigenvalues().data(), esr.eigenvalues().data() + M);
    std::sort(rep.eig_reduced.begin(), rep.eig_reduced.end(), std::greater<double>());
    int top = std::min<int>(10, M);
    for (int i = 0; i < top; ++i)
        rep.top_eig_gaps.push_back(std::abs(rep.eig_2d[i] - rep.eig_reduced[i]));
    return rep;
}

}  // namespace landau

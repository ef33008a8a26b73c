#pragma once

// Special functions and Gaussian quadrature: Laguerre polynomials and their
// zeros, scaled Hermite eigenfunctions, Bessel J0/I0, Airy zeros, and the
// weighted Laguerre kernels psi_n.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace landau {

// Energy E, Landau index n and the semiclassical parameter tied by
// hbar*(2n+1) = E.  hbar is always derived, never set independently.
struct SemiclassicalPoint {
    double energy;
    int n;
    double hbar;

    SemiclassicalPoint(double E, int n_) : energy(E), n(n_), hbar(E / (2.0 * n_ + 1.0)) {
        if (E <= 0.0) throw std::invalid_argument("SemiclassicalPoint: energy must be positive");
        if (n_ < 0) throw std::invalid_argument("SemiclassicalPoint: n must be nonnegative");
    }
};

// L_n(x) with the L_n(0)=1 normalization, by the three-term recurrence.
// Overflows for large x; prefer weighted_laguerre there.
inline double laguerre_eval(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre_eval: n < 0");
    double lm1 = 0.0, l = 1.0;
    for (int k = 0; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

namespace detail {

// Running-exponent renormalization for linear recurrences: values are held
// as m * e^c with a shared offset c.  The starting value e^{-t/2} can
// underflow long before the mid-recurrence members become representable
// (h_k grows by e^{+t/2}-scale factors up to the turning point), so the
// offset absorbs the dynamic range instead of losing it to 0.
struct ScaledPair {
    double m = 0.0, mm1 = 0.0, c = 0.0, ec = 1.0;

    void init(double m0, double c0) {
        m = m0;
        mm1 = 0.0;
        c = c0;
        ec = std::exp(c);
    }
    void renorm() {
        double am = std::max(std::abs(m), std::abs(mm1));
        if (am > 1e250) {
            m *= 1e-250;
            mm1 *= 1e-250;
            c += std::log(1e250);
            ec = std::exp(c);
        } else if (am > 0.0 && am < 1e-250) {
            m *= 1e250;
            mm1 *= 1e250;
            c -= std::log(1e250);
            ec = std::exp(c);
        }
    }
    double value() const { return m * ec; }  // underflows cleanly to 0
};

}  // namespace detail

// e^{-t/2} L_n(t).  The recurrence runs on the pre-weighted sequence
// e^{-t/2} L_k(t) with exponent renormalization, so it stays accurate even
// when the e^{-t/2} seed (or L_n(t) alone) leaves the double range.
inline double weighted_laguerre(int n, double t) {
    if (n < 0) throw std::invalid_argument("weighted_laguerre: n < 0");
    if (t < 0.0) throw std::invalid_argument("weighted_laguerre: t < 0");
    detail::ScaledPair sp;
    sp.init(1.0, -0.5 * t);
    for (int k = 0; k < n; ++k) {
        double mp1 = ((2.0 * k + 1.0 - t) * sp.m - k * sp.mm1) / (k + 1.0);
        sp.mm1 = sp.m;
        sp.m = mp1;
        sp.renorm();
    }
    return sp.value();
}

// e^{-t/2} L_k(t) for all k = 0..nmax in one sweep.
inline std::vector<double> weighted_laguerre_all(int nmax, double t) {
    std::vector<double> out(nmax + 1);
    detail::ScaledPair sp;
    sp.init(1.0, -0.5 * t);
    out[0] = sp.value();
    for (int k = 0; k < nmax; ++k) {
        double mp1 = ((2.0 * k + 1.0 - t) * sp.m - k * sp.mm1) / (k + 1.0);
        sp.mm1 = sp.m;
        sp.m = mp1;
        sp.renorm();
        out[k + 1] = sp.value();
    }
    return out;
}

// psi_n(u) = ((-1)^n / hbar) e^{-u/hbar} L_n(2u/hbar).
inline double psi_eval(const SemiclassicalPoint& pt, double u) {
    if (u < 0.0) throw std::invalid_argument("psi_eval: u < 0");
    double sign = (pt.n % 2 == 0) ? 1.0 : -1.0;
    return sign / pt.hbar * weighted_laguerre(pt.n, 2.0 * u / pt.hbar);
}

struct LaguerreZeroSet {
    int n;
    std::vector<double> zeros;  // strictly increasing, in (0, 4n+2)
};

namespace detail {

// Eigen-decomposition of a symmetric tridiagonal Jacobi matrix.
inline void jacobi_eigs(const Eigen::VectorXd& diag, const Eigen::VectorXd& subdiag,
                        bool vectors, Eigen::VectorXd& evals, Eigen::MatrixXd& evecs) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, subdiag,
                              vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("jacobi_eigs: tridiagonal eigensolver failed");
    evals = es.eigenvalues();
    if (vectors) evecs = es.eigenvectors();
}

}  // namespace detail

// Zeros of L_n as eigenvalues of the Jacobi matrix (diag 2k+1, off-diag k).
inline LaguerreZeroSet laguerre_zeros(int n) {
    if (n < 1) throw std::invalid_argument("laguerre_zeros: n < 1");
    Eigen::VectorXd d(n), s(n > 1 ? n - 1 : 0);
    for (int k = 0; k < n; ++k) d[k] = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k) s[k - 1] = k;
    Eigen::VectorXd ev;
    Eigen::MatrixXd dummy;
    detail::jacobi_eigs(d, s, false, ev, dummy);
    LaguerreZeroSet zs{n, std::vector<double>(ev.data(), ev.data() + n)};
    return zs;
}

// Normalized Hermite polynomials against weight e^{-y^2}:
// g_n(y) = htilde_n(y) e^{-y^2/2} are the orthonormal oscillator states.
inline std::vector<double> hermite_htilde_all(int nmax, double y) {
    std::vector<double> h(nmax + 1);
    double pi4 = std::pow(std::numbers::pi, -0.25);
    h[0] = pi4;
    if (nmax >= 1) h[1] = std::numbers::sqrt2 * y * pi4;
    for (int k = 1; k < nmax; ++k)
        h[k + 1] = std::sqrt(2.0 / (k + 1.0)) * y * h[k] - std::sqrt(k / (k + 1.0)) * h[k - 1];
    return h;
}

// g_n(y) with the Gaussian folded into the recurrence; exponent-renormalized
// so far-tail nodes (where e^{-y^2/2} underflows) still evaluate correctly.
inline std::vector<double> hermite_g_all(int nmax, double y) {
    std::vector<double> g(nmax + 1);
    detail::ScaledPair sp;
    sp.init(std::pow(std::numbers::pi, -0.25), -0.5 * y * y);
    g[0] = sp.value();
    for (int k = 0; k < nmax; ++k) {
        double mp1 = (k == 0) ? std::numbers::sqrt2 * y * sp.m
                              : std::sqrt(2.0 / (k + 1.0)) * y * sp.m -
                                    std::sqrt(k / (k + 1.0)) * sp.mm1;
        sp.mm1 = sp.m;
        sp.m = mp1;
        sp.renorm();
        g[k + 1] = sp.value();
    }
    return g;
}

enum class QuadKind { GaussLaguerre, GaussHermite, GaussLegendre };

struct QuadratureRule {
    QuadKind kind;
    int order;
    std::vector<double> nodes;
    std::vector<double> weights;
    // Laguerre: w_i * e^{t_i}; Hermite: w_i * e^{x_i^2}; Legendre: = w_i.
    // Always finite and relatively accurate (see gauss_rule); plain weights
    // below the double range come out 0.
    std::vector<double> scaled_weights;
};

// Nodes are the Jacobi-matrix eigenvalues (Golub-Welsch).  Weights come from
// the Christoffel identity 1/w_i = sum_k p_k(t_i)^2 over the orthonormal
// polynomials, evaluated on the *weighted* functions phi_k = p_k sqrt(weight),
// which are uniformly bounded: this keeps every weight relatively accurate,
// where the eigenvector route only gives absolute accuracy and turns the
// extreme-node weights (and anything scaled by e^{t}) into noise.
inline QuadratureRule gauss_rule(QuadKind kind, int order) {
    if (order < 1) throw std::invalid_argument("gauss_rule: order < 1");
    Eigen::VectorXd d(order), s(order > 1 ? order - 1 : 0);
    switch (kind) {
        case QuadKind::GaussLaguerre:
            for (int k = 0; k < order; ++k) d[k] = 2.0 * k + 1.0;
            for (int k = 1; k < order; ++k) s[k - 1] = k;
            break;
        case QuadKind::GaussHermite:
            d.setZero();
            for (int k = 1; k < order; ++k) s[k - 1] = std::sqrt(0.5 * k);
            break;
        case QuadKind::GaussLegendre:
            d.setZero();
            for (int k = 1; k < order; ++k) s[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
            break;
        default:
            throw std::invalid_argument("gauss_rule: unsupported kind");
    }
    Eigen::VectorXd ev;
    Eigen::MatrixXd dummy;
    detail::jacobi_eigs(d, s, false, ev, dummy);

    QuadratureRule rule;
    rule.kind = kind;
    rule.order = order;
    rule.nodes.assign(ev.data(), ev.data() + order);
    rule.weights.resize(order);
    rule.scaled_weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double t = ev[i];
        double ssq = 0.0, logw = 0.0;
        switch (kind) {
            case QuadKind::GaussLaguerre: {
                // phi_k = e^{-t/2} L_k(t), orthonormal against dt
                for (double p : weighted_laguerre_all(order - 1, t)) ssq += p * p;
                logw = -t;
                break;
            }
            case QuadKind::GaussHermite: {
                for (double p : hermite_g_all(order - 1, t)) ssq += p * p;
                logw = -t * t;
                break;
            }
            case QuadKind::GaussLegendre: {
                // orthonormal Legendre: p0 = 1/sqrt2, recurrence via the
                // same Jacobi coefficients b_k = k/sqrt(4k^2-1)
                double pm1 = 0.0, p = 1.0 / std::numbers::sqrt2;
                ssq = p * p;
                for (int k = 0; k + 1 < order; ++k) {
                    double bk = (k > 0) ? k / std::sqrt(4.0 * k * k - 1.0) : 0.0;
                    double bk1 = (k + 1.0) / std::sqrt(4.0 * (k + 1.0) * (k + 1.0) - 1.0);
                    double pp1 = (t * p - bk * pm1) / bk1;
                    pm1 = p;
                    p = pp1;
                    ssq += p * p;
                }
                break;
            }
        }
        if (ssq == 0.0 || !std::isfinite(1.0 / ssq)) {
            // all weighted orthonormal functions underflowed: the node is so
            // deep in the tail that any admissible integrand's contribution
            // is below the double range; drop it
            rule.scaled_weights[i] = 0.0;
            rule.weights[i] = 0.0;
        } else {
            rule.scaled_weights[i] = 1.0 / ssq;
            rule.weights[i] = std::exp(logw) / ssq;
        }
    }
    return rule;
}

// Gauss-Legendre mapped to [a,b].
inline QuadratureRule gauss_legendre_ab(int order, double a, double b) {
    QuadratureRule r = gauss_rule(QuadKind::GaussLegendre, order);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < order; ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
        r.scaled_weights[i] = r.weights[i];
    }
    return r;
}

// L2-normalized eigenfunction of -hbar^2 d^2/dx^2 + x^2 with eigenvalue
// hbar(2n+1): e_n(x) = hbar^{-1/4} g_n(x/sqrt(hbar)).
inline double hermite_function(int n, double x, double hbar) {
    if (n < 0 || hbar <= 0.0) throw std::invalid_argument("hermite_function: bad arguments");
    double y = x / std::sqrt(hbar);
    return std::pow(hbar, -0.25) * hermite_g_all(n, y)[n];
}

// --- Airy function Ai on the negative axis ------------------------------

namespace detail {

inline double airy_ai_series(double x) {
    // Maclaurin series Ai = c1 f - c2 g, usable for |x| <~ 9.
    double c1 = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    double c2 = 1.0 / (std::pow(3.0, 1.0 / 3.0) * std::tgamma(1.0 / 3.0));
    double f = 1.0, g = x;
    double tf = 1.0, tg = x;
    double x3 = x * x * x;
    for (int k = 1; k < 60; ++k) {
        tf *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
        tg *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
        f += tf;
        g += tg;
        if (std::abs(tf) + std::abs(tg) < 1e-18 * (std::abs(f) + std::abs(g))) break;
    }
    return c1 * f - c2 * g;
}

inline double airy_ai_asym_neg(double x) {
    // DLMF 9.7.9 for Ai(-z), z large.
    double z = -x;
    double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    // u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2))
    double P = 0.0, Q = 0.0;
    double uk = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 20; ++k) {
        double term = uk / std::pow(zeta, k);
        if (std::abs(term) > prev) break;  // divergent tail reached
        prev = std::abs(term);
        int r = k / 2;
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) P += sgn * term;
        else Q += sgn * term;
        uk *= (6.0 * k + 1.0) * (6.0 * k + 5.0) / (72.0 * (k + 1.0));
    }
    double w = zeta - 0.25 * std::numbers::pi;
    return (std::cos(w) * P + std::sin(w) * Q) /
           (std::sqrt(std::numbers::pi) * std::pow(z, 0.25));
}

}  // namespace detail

inline double airy_ai(double x) {
    if (x < -8.0) return detail::airy_ai_asym_neg(x);
    return detail::airy_ai_series(x);
}

// m-th negative zero of Ai, in decreasing order (a_1 ~ -2.338...).
inline double airy_negative_zero(int m) {
    if (m < 1) throw std::invalid_argument("airy_negative_zero: m < 1");
    // asymptotic seed, then bracket and bisect
    double t = 3.0 * std::numbers::pi * (4.0 * m - 1.0) / 8.0;
    double guess = -std::pow(t, 2.0 / 3.0);
    double lo = guess - 0.7, hi = guess + 0.7;
    double flo = airy_ai(lo), fhi = airy_ai(hi);
    int expand = 0;
    while (flo * fhi > 0.0) {
        lo -= 0.3;
        hi += 0.3;
        flo = airy_ai(lo);
        fhi = airy_ai(hi);
        if (++expand > 20) throw std::runtime_error("airy_negative_zero: failed to bracket");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = airy_ai(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) { hi = mid; }
        else { lo = mid; flo = fm; }
        if (hi - lo < 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

// --- Bessel J0 and I0 ---------------------------------------------------

inline double bessel_J0(double s) {
    s = std::abs(s);
    if (s <= 14.0) {
        long double q = (long double)s * s / 4.0L;
        long double sum = 1.0L, term = 1.0L;
        for (int k = 1; k < 80; ++k) {
            term *= -q / ((long double)k * k);
            sum += term;
            if (std::abs((double)term) < 1e-19 * (1.0 + std::abs((double)sum))) break;
        }
        return (double)sum;
    }
    // Hankel asymptotic expansion, truncated at the smallest term.
    double P = 0.0, Q = 0.0;
    double ak = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 30; ++k) {
        double term = ak / std::pow(s, k);
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        int r = k / 2;
        double sgn = (r % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) P += sgn * term;
        else Q += sgn * term;
        double c = 2.0 * k + 1.0;
        ak *= -(c * c) / (8.0 * (k + 1.0));
    }
    double w = s - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * s)) * (std::cos(w) * P - std::sin(w) * Q);
}

inline double bessel_I0(double s) {
    double q = s * s / 4.0;
    double sum = 1.0, term = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= q / ((double)k * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// e^{-|s|} I0(s), finite for all s (I0 alone overflows near s ~ 713).
inline double bessel_I0_scaled(double s) {
    s = std::abs(s);
    if (s < 40.0) return std::exp(-s) * bessel_I0(s);
    // asymptotic: e^{-s} I0(s) ~ (2 pi s)^{-1/2} sum_k a_k, a_0 = 1,
    // a_{k+1} = a_k (2k+1)^2 / (8 (k+1) s); truncated at the smallest term
    double sum = 0.0, term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 30; ++k) {
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        sum += term;
        double c = 2.0 * k + 1.0;
        term *= c * c / (8.0 * (k + 1.0) * s);
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * s);
}

// --- Zero distribution --------------------------------------------------

// Empirical CDF (1/n) #{k : lambda_{n,k} <= 4nx} of the Laguerre zeros.
inline double zero_counting_cdf(const LaguerreZeroSet& zs, double x) {
    double cut = 4.0 * zs.n * x;
    int cnt = 0;
    for (double z : zs.zeros)
        if (z <= cut) ++cnt;
    return (double)cnt / zs.n;
}

// Limit law (2/pi) \int_0^x t^{-1/2} (1-t)^{1/2} dt in closed form.
// Antiderivative via t = sin^2(theta): integral = arcsin(sqrt x) + sqrt(x(1-x)).
inline double zero_counting_limit(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 2.0 / std::numbers::pi * (std::asin(std::sqrt(x)) + std::sqrt(x * (1.0 - x)));
}

// Residual of the Airy edge asymptotics for the m-th largest zero:
// lambda_{n,n-m+1} - [nu + 2^{2/3} a_m nu^{1/3} + (1/5) 2^{4/3} a_m^2 nu^{-1/3}].
// (The 2^{2/3} coefficient is the one the computed zeros actually satisfy,
// matching DLMF 18.16.14; see the regression test.)
inline double edge_zero_check(const LaguerreZeroSet& zs, int m) {
    if (m < 1 || m > zs.n) throw std::invalid_argument("edge_zero_check: bad m");
    double nu = 4.0 * zs.n + 2.0;
    double am = airy_negative_zero(m);
    double pred = nu + std::cbrt(4.0) * am * std::cbrt(nu) +
                  0.2 * std::pow(2.0, 4.0 / 3.0) * am * am / std::cbrt(nu);
    return zs.zeros[zs.n - m] - pred;
}

// Least-squares slope of log|y| against log|x|, skipping entries below floor.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                           double floor_ = 1e-300) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (std::abs(y[i]) < floor_) continue;
        double lx = std::log(std::abs(x[i])), ly = std::log(std::abs(y[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::runtime_error("loglog_slope: not enough usable points");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace landau

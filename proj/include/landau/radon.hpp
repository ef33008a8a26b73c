#pragma once

// Circular Radon transform of potentials, its Fourier-Bessel form, and the
// spectral invariant I(r).
//
// Convention note: the check map xi -> xicheck = (p2, x2)/sqrt(2) is applied
// exactly once, here.  Everything downstream consumes Vtilde(xi; E) as a
// function of xi = (x2, p2).

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "landau/potentials.hpp"
#include "landau/specfun.hpp"

namespace landau {

struct PhasePoint {
    double x2 = 0.0, p2 = 0.0;
};

inline Point check_map(const PhasePoint& xi) {
    return {xi.p2 / std::numbers::sqrt2, xi.x2 / std::numbers::sqrt2};
}

// Average of V over the unit-speed circle of center y and radius r, by
// periodic trapezoid rule with doubling.
inline double circle_average_quadrature(const Potential& V, double cx, double cy, double r,
                                        int m0 = 128, double tol = 1e-12) {
    auto avg = [&](int m) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) {
            double th = 2.0 * std::numbers::pi * k / m;
            s += V.evaluator(cx + r * std::cos(th), cy + r * std::sin(th));
        }
        return s / m;
    };
    double prev = avg(m0);
    for (int m = 2 * m0; m <= 16 * m0; m *= 2) {
        double cur = avg(m);
        if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

// Radius-form Radon transform R_r(V)(y): average over the circle of radius r
// centered at y.
inline double radon_transform(const Potential& V, double yx, double yy, double r) {
    if (V.has_circle_oracle()) return V.circle_average_oracle(yx, yy, r);
    return circle_average_quadrature(V, yx, yy, r);
}

// Vtilde(xi; E): average of V over the circle of radius sqrt(E/2) centered
// at xicheck.
inline double circle_average(const Potential& V, const PhasePoint& xi, double E) {
    if (E <= 0.0) throw std::invalid_argument("circle_average: E must be positive");
    Point y = check_map(xi);
    return radon_transform(V, y.x, y.y, std::sqrt(0.5 * E));
}

namespace detail {

// radial truncation point so the Gaussian factor of |Vhat| is below tol
inline double fourier_radius(const Potential& V, double tol = 1e-15) {
    double wmin = V.min_inverse_width();
    double amp = std::max(V.max_abs_amplitude() * std::numbers::pi / wmin, 1.0) *
                 std::max<double>(V.components.size(), 1);
    // amp * e^{-R^2/(4 wmax)} < tol, conservatively with the widest component
    double wmax = 0.0;
    for (const auto& g : V.components) wmax = std::max(wmax, g.inverse_width);
    return std::sqrt(4.0 * wmax * std::log(amp / tol)) + 2.0;
}

}  // namespace detail

// R_r(V)(y) through the frequency side:
// (2pi)^{-2} \int e^{i y.xi} J0(r|xi|) Vhat(xi) dxi, in polar coordinates.
inline double radon_via_fourier(const Potential& V, double yx, double yy, double r,
                                int radial_order = 200, int angle_points = 256) {
    if (V.components.empty() && !V.has_fourier())
        throw std::invalid_argument("radon_via_fourier: no Fourier transform available");
    double Rmax = detail::fourier_radius(V);
    QuadratureRule gl = gauss_legendre_ab(radial_order, 0.0, Rmax);
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        double rho = gl.nodes[i];
        double ang = 0.0;
        for (int k = 0; k < angle_points; ++k) {
            double phi = 2.0 * std::numbers::pi * k / angle_points;
            double k1 = rho * std::cos(phi), k2 = rho * std::sin(phi);
            std::complex<double> vh = fourier_transform(V, k1, k2);
            double phase = yx * k1 + yy * k2;
            ang += std::cos(phase) * vh.real() - std::sin(phase) * vh.imag();
        }
        ang *= 2.0 * std::numbers::pi / angle_points;
        total += gl.weights[i] * rho * bessel_J0(r * rho) * ang;
    }
    return total / (4.0 * std::numbers::pi * std::numbers::pi);
}

// Ring average of |Vhat|^2 at radius rho: \int_0^{2pi} |Vhat(rho cos, rho sin)|^2 dphi.
inline double ring_average_fhat2(const Potential& V, double rho, int points = 256) {
    if (rho < 0.0) throw std::invalid_argument("ring_average_fhat2: rho < 0");
    double s = 0.0;
    for (int k = 0; k < points; ++k) {
        double phi = 2.0 * std::numbers::pi * k / points;
        std::complex<double> vh = fourier_transform(V, rho * std::cos(phi), rho * std::sin(phi));
        s += std::norm(vh);
    }
    return s * 2.0 * std::numbers::pi / points;
}

// I(r) = \int J0(r|xi|)^2 |Vhat(xi)|^2 dxi, frequency-side polar quadrature.
inline double spectral_invariant_I(const Potential& V, double r, int radial_order = 400,
                                   int angle_points = 256) {
    if (r < 0.0) throw std::invalid_argument("spectral_invariant_I: r < 0");
    double Rmax = detail::fourier_radius(V);
    QuadratureRule gl = gauss_legendre_ab(radial_order, 0.0, Rmax);
    double total = 0.0;
    for (int i = 0; i < radial_order; ++i) {
        double rho = gl.nodes[i];
        double j0 = bessel_J0(r * rho);
        total += gl.weights[i] * rho * j0 * j0 * ring_average_fhat2(V, rho, angle_points);
    }
    return total;
}

// Space-side verification route: (2pi)^2 \int R_r(V)^2(y) dy on a tensor grid.
inline double spectral_invariant_I_space(const Potential& V, double r, int order = 160) {
    double wmin = V.min_inverse_width();
    double L = V.max_center_norm() + r + std::sqrt(std::log(1e18) / wmin) + 1.0;
    QuadratureRule gl = gauss_legendre_ab(order, -L, L);
    double total = 0.0;
    for (int i = 0; i < order; ++i) {
        double row = 0.0;
        for (int j = 0; j < order; ++j) {
            double v = radon_transform(V, gl.nodes[i], gl.nodes[j], r);
            row += gl.weights[j] * v * v;
        }
        total += gl.weights[i] * row;
    }
    return 4.0 * std::numbers::pi * std::numbers::pi * total;
}

}  // namespace landau

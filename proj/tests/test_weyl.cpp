#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "landau/specfun.hpp"
#include "landau/weyl.hpp"

using namespace landau;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

static const double pi = std::numbers::pi;

TEST_CASE("radial eigenvalue closed forms") {
    double E = 3.0;
    SECTION("identity symbol") {
        RadialSymbol one{[](double) { return 1.0; }};
        for (int n : {0, 1, 7, 64, 128}) {
            SemiclassicalPoint pt(E, n);
            CHECK_THAT(radial_eigenvalue(one, n, pt.hbar), WithinAbs(1.0, 1e-10));
        }
    }
    SECTION("harmonic oscillator r^2 -> hbar(2n+1)") {
        RadialSymbol r2{[](double r) { return r * r; }};
        for (int n : {0, 3, 32, 128}) {
            SemiclassicalPoint pt(E, n);
            CHECK_THAT(radial_eigenvalue(r2, n, pt.hbar), WithinRel(pt.hbar * (2.0 * n + 1.0), 1e-8));
        }
    }
    SECTION("gaussian symbol -> (1-hbar)^n / (1+hbar)^{n+1}") {
        RadialSymbol g{[](double r) { return std::exp(-r * r); }};
        for (int n : {0, 5, 32, 128}) {
            SemiclassicalPoint pt(E, n);
            double h = pt.hbar;
            double expect = std::pow(1.0 - h, n) / std::pow(1.0 + h, n + 1);
            CHECK_THAT(radial_eigenvalue(g, n, h), WithinRel(expect, 1e-8));
        }
    }
    SECTION("refinement check passes for smooth symbols") {
        RadialSymbol g{[](double r) { return std::exp(-r * r); }};
        CHECK_NOTHROW(radial_eigenvalue(g, 16, 0.1, -1, true));
    }
}

TEST_CASE("radial eigenvalue limit") {
    double E = 3.0;
    RadialSymbol g{[](double r) { return std::exp(-r * r); }};
    SECTION("residual shrinks from n=16 to n=128") {
        auto res = radial_eigenvalue_limit_check(g, E, {16, 128});
        CHECK(std::abs(res[1]) < std::abs(res[0]));
    }
    SECTION("closed-form residual rate in hbar") {
        // expanding the logs of (1-h)^n (1+h)^{-(n+1)} with nh = (E-h)/2 shows
        // the O(h) terms cancel: the residual is O(h^2), comfortably above
        // the O(h) floor the theorem guarantees
        std::vector<int> ns{16, 32, 64, 128, 256};
        std::vector<double> hb, res;
        for (int n : ns) {
            double h = E / (2.0 * n + 1.0);
            hb.push_back(h);
            res.push_back(std::pow(1.0 - h, n) / std::pow(1.0 + h, n + 1) - std::exp(-E));
        }
        double slope = loglog_slope(hb, res);
        CHECK(slope >= 0.9);
        CHECK_THAT(slope, WithinAbs(2.0, 0.1));
    }
    SECTION("identity symbol: residual exactly 0 to rounding") {
        RadialSymbol one{[](double) { return 1.0; }};
        for (double r : radial_eigenvalue_limit_check(one, E, {8, 64}))
            CHECK_THAT(r, WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("wigner cross-transform") {
    double hbar = 3.0 / 13.0;
    SECTION("ground state: (1/pi hbar) e^{-r^2/hbar}") {
        for (auto [x, p] : std::vector<std::pair<double, double>>{{0, 0}, {0.3, -0.2}, {1, 1}}) {
            auto g = wigner_cross(0, 0, x, p, hbar);
            double expect = std::exp(-(x * x + p * p) / hbar) / (pi * hbar);
            CHECK_THAT(g.real(), WithinRel(expect, 1e-10));
            CHECK_THAT(g.imag(), WithinAbs(0.0, 1e-12));
        }
    }
    SECTION("closed form validated against the quadrature at 20 random points") {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> U(-1.2, 1.2);
        std::uniform_int_distribution<int> I(0, 9);
        for (int trial = 0; trial < 20; ++trial) {
            int m = I(rng), k = I(rng);
            double x = U(rng), p = U(rng);
            auto a = wigner_cross(m, k, x, p, hbar);
            auto b = wigner_cross_closed(m, k, x, p, hbar);
            CHECK_THAT(a.real(), WithinAbs(b.real(), 1e-8));
            CHECK_THAT(a.imag(), WithinAbs(b.imag(), 1e-8));
        }
    }
    SECTION("wigner_cross_table matches the scalar closed form") {
        auto G = wigner_cross_table(8, 0.4, -0.7, hbar);
        for (int m : {0, 3, 7})
            for (int k : {0, 2, 7}) {
                auto v = wigner_cross_closed(m, k, 0.4, -0.7, hbar);
                CHECK_THAT(G(m, k).real(), WithinAbs(v.real(), 1e-12));
                CHECK_THAT(G(m, k).imag(), WithinAbs(v.imag(), 1e-12));
            }
    }
    SECTION("phase-space integrals: <e_m, e_k> from the symbol a = 1") {
        SymbolGrid grid = make_symbol_grid([](double, double) { return 1.0; }, hbar, 48);
        for (auto [m, k] : std::vector<std::pair<int, int>>{{0, 0}, {4, 4}, {9, 9}, {0, 1}, {3, 7}})
            CHECK_THAT(weyl_matrix_element(grid, m, k), WithinAbs(m == k ? 1.0 : 0.0, 1e-9));
    }
}

TEST_CASE("weyl matrix elements") {
    double hbar = 3.0 / 13.0;
    SECTION("a = x^2 + p^2: oscillator diagonal, parity zeros") {
        SymbolGrid grid =
            make_symbol_grid([](double x, double p) { return x * x + p * p; }, hbar, 64);
        for (int n : {0, 2, 5, 11})
            CHECK_THAT(weyl_matrix_element(grid, n, n), WithinRel(hbar * (2.0 * n + 1.0), 1e-9));
        for (int m : {0, 1, 4})
            CHECK_THAT(weyl_matrix_element(grid, m, m + 2), WithinAbs(0.0, 1e-10));
    }
    SECTION("radial symbol: diagonal equals radial_eigenvalue, off-diagonal small") {
        RadialSymbol rho{[](double r) { return std::exp(-r * r); }};
        SymbolGrid grid = make_symbol_grid(
            [&](double x, double p) { return rho.profile(std::hypot(x, p)); }, hbar, 80);
        Eigen::MatrixXd T = weyl_matrix(grid, 25);
        double dmax = T.diagonal().cwiseAbs().maxCoeff();
        for (int n : {0, 6, 20})
            CHECK_THAT(T(n, n), WithinAbs(radial_eigenvalue(rho, n, hbar), 1e-9));
        for (int m = 0; m < 25; ++m)
            for (int k = 0; k < 25; ++k)
                if (m != k) CHECK(std::abs(T(m, k)) <= 1e-8 * dmax);
    }
    SECTION("grid refinement stabilizes elements") {
        auto a = [](double x, double p) { return std::exp(-(x * x + 0.5 * p * p)) + 0.3 * x * p; };
        SymbolGrid g1 = make_symbol_grid(a, hbar, 48);
        SymbolGrid g2 = make_symbol_grid(a, hbar, 96);
        for (auto [m, k] : std::vector<std::pair<int, int>>{{0, 0}, {2, 5}, {7, 7}})
            CHECK_THAT(weyl_matrix_element(g1, m, k), WithinAbs(weyl_matrix_element(g2, m, k), 1e-8));
    }
    SECTION("linearity in the symbol") {
        auto a = [](double x, double p) { return std::exp(-(x * x + p * p)); };
        auto b = [](double x, double p) { return x * x; };
        auto ab = [&](double x, double p) { return 2.0 * a(x, p) - 0.5 * b(x, p); };
        SymbolGrid ga = make_symbol_grid(a, hbar, 48);
        SymbolGrid gb = make_symbol_grid(b, hbar, 48);
        SymbolGrid gab = make_symbol_grid(ab, hbar, 48);
        CHECK_THAT(weyl_matrix_element(gab, 1, 3),
                   WithinAbs(2.0 * weyl_matrix_element(ga, 1, 3) - 0.5 * weyl_matrix_element(gb, 1, 3),
                             1e-12));
    }
    SECTION("trace of the gaussian symbol converges monotonically to 1/(2 hbar)") {
        RadialSymbol rho{[](double r) { return std::exp(-r * r); }};
        double target = 1.0 / (2.0 * hbar);
        double prev = 0.0;
        std::vector<double> partial;
        for (int N : {4, 8, 16, 32}) {
            double s = 0.0;
            for (int n = 0; n < N; ++n) s += radial_eigenvalue(rho, n, hbar);
            CHECK(s > prev);
            CHECK(s < target + 1e-9);
            partial.push_back(s);
            prev = s;
        }
        CHECK(std::abs(partial.back() - target) < std::abs(partial.front() - target));
    }
}

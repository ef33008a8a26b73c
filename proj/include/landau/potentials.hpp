#pragma once

// Catalog of test potentials on the plane: Gaussian mixtures with exact
// Fourier transforms and exact circle averages, used as oracles everywhere
// downstream.  Potentials are immutable after construction.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "landau/specfun.hpp"

namespace landau {

struct Point {
    double x = 0.0, y = 0.0;
};

struct GaussianSpec {
    Point center;
    double inverse_width = 1.0;  // > 0
    double amplitude = 1.0;
};

struct Potential {
    // V(x1, x2), bounded, defined everywhere
    std::function<double(double, double)> evaluator;
    // closed-form Vhat(xi) = \int V(x) e^{-i x.xi} dx, when available
    std::function<std::complex<double>(double, double)> fourier_evaluator;
    // closed-form average of V over the circle of given center and radius
    std::function<double(double, double, double)> circle_average_oracle;
    std::string decay_tag = "Schwartz";

    // component list, empty for non-catalog potentials (e.g. constants)
    std::vector<GaussianSpec> components;

    bool has_fourier() const { return (bool)fourier_evaluator; }
    bool has_circle_oracle() const { return (bool)circle_average_oracle; }

    // true when |V| is a function of |x| only (all components at the origin)
    bool radial_about_origin() const {
        if (components.empty()) return false;
        for (const auto& g : components)
            if (g.center.x != 0.0 || g.center.y != 0.0) return false;
        return true;
    }

    // slowest Gaussian decay rate among components (for truncation radii)
    double min_inverse_width() const {
        double w = std::numeric_limits<double>::infinity();
        for (const auto& g : components) w = std::min(w, g.inverse_width);
        return w;
    }
    double max_center_norm() const {
        double d = 0.0;
        for (const auto& g : components)
            d = std::max(d, std::hypot(g.center.x, g.center.y));
        return d;
    }
    double max_abs_amplitude() const {
        double a = 0.0;
        for (const auto& g : components) a = std::max(a, std::abs(g.amplitude));
        return a;
    }
};

inline Potential make_mixture(const std::vector<GaussianSpec>& specs);

inline Potential make_gaussian(const GaussianSpec& spec) {
    if (spec.inverse_width <= 0.0)
        throw std::invalid_argument("make_gaussian: inverse_width must be positive");
    return make_mixture({spec});
}

inline Potential make_mixture(const std::vector<GaussianSpec>& specs) {
    if (specs.empty()) throw std::invalid_argument("make_mixture: empty component list");
    for (const auto& g : specs)
        if (g.inverse_width <= 0.0)
            throw std::invalid_argument("make_mixture: inverse_width must be positive");

    Potential V;
    V.components = specs;
    V.evaluator = [specs](double x, double y) {
        double s = 0.0;
        for (const auto& g : specs) {
            double dx = x - g.center.x, dy = y - g.center.y;
            s += g.amplitude * std::exp(-g.inverse_width * (dx * dx + dy * dy));
        }
        return s;
    };
    V.fourier_evaluator = [specs](double k1, double k2) {
        std::complex<double> s = 0.0;
        for (const auto& g : specs) {
            double w = g.inverse_width;
            double mag = g.amplitude * std::numbers::pi / w *
                         std::exp(-(k1 * k1 + k2 * k2) / (4.0 * w));
            double phase = -(g.center.x * k1 + g.center.y * k2);
            s += mag * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        return s;
    };
    // average (not integral) of V over the circle |x - c0| = r:
    // per component  a e^{-w (d^2 + r^2)} I0(2 w d r),  d = |c0 - center|
    V.circle_average_oracle = [specs](double cx, double cy, double r) {
        double s = 0.0;
        for (const auto& g : specs) {
            double w = g.inverse_width;
            double d = std::hypot(cx - g.center.x, cy - g.center.y);
            double z = 2.0 * w * d * r;
            // e^{-w(d^2+r^2)} I0(z) with the exponentials combined: I0 grows
            // like e^z, so evaluate e^{-w(d-r)^2} * (e^{-z} I0(z)) for stability.
            s += g.amplitude * std::exp(-w * (d - r) * (d - r)) * bessel_I0_scaled(z);
        }
        return s;
    };
    return V;
}

// Constant potential, for tests (not part of the JSON catalog).
inline Potential make_constant(double c) {
    Potential V;
    V.evaluator = [c](double, double) { return c; };
    V.circle_average_oracle = [c](double, double, double) { return c; };
    V.fourier_evaluator = nullptr;  // not integrable unless c == 0
    if (c == 0.0)
        V.fourier_evaluator = [](double, double) { return std::complex<double>(0.0); };
    return V;
}

// Rigid transforms act on the component list (Gaussians are isotropic).
inline Potential rotated(const Potential& V, double angle) {
    if (V.components.empty()) throw std::invalid_argument("rotated: catalog potentials only");
    double c = std::cos(angle), s = std::sin(angle);
    std::vector<GaussianSpec> specs = V.components;
    for (auto& g : specs) {
        double x = g.center.x, y = g.center.y;
        g.center = {c * x - s * y, s * x + c * y};
    }
    return make_mixture(specs);
}

inline Potential translated(const Potential& V, double dx, double dy) {
    if (V.components.empty()) throw std::invalid_argument("translated: catalog potentials only");
    std::vector<GaussianSpec> specs = V.components;
    for (auto& g : specs) {
        g.center.x += dx;
        g.center.y += dy;
    }
    return make_mixture(specs);
}

inline Potential scaled(const Potential& V, double c) {
    if (V.components.empty()) throw std::invalid_argument("scaled: catalog potentials only");
    std::vector<GaussianSpec> specs = V.components;
    for (auto& g : specs) g.amplitude *= c;
    return make_mixture(specs);
}

// Fourier transform Vhat(xi) = \int V(x) e^{-i x.xi} dx.  Closed form when
// present; otherwise per-component Gauss-Hermite quadrature centered and
// scaled to the component.
inline std::complex<double> fourier_transform(const Potential& V, double k1, double k2,
                                              int order = 48, int* nodes_used = nullptr) {
    if (V.has_fourier()) {
        if (nodes_used) *nodes_used = 0;
        return V.fourier_evaluator(k1, k2);
    }
    if (V.components.empty())
        throw std::invalid_argument("fourier_transform: no closed form and no components");
    QuadratureRule gh = gauss_rule(QuadKind::GaussHermite, order);
    std::complex<double> total = 0.0;
    for (const auto& g : V.components) {
        double sw = 1.0 / std::sqrt(g.inverse_width);
        std::complex<double> s = 0.0;
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j) {
                double x = g.center.x + sw * gh.nodes[i];
                double y = g.center.y + sw * gh.nodes[j];
                double phase = -(x * k1 + y * k2);
                s += gh.weights[i] * gh.weights[j] *
                     std::complex<double>(std::cos(phase), std::sin(phase));
            }
        total += g.amplitude * sw * sw * s;
    }
    if (nodes_used) *nodes_used = order * order;
    return total;
}

// Quadrature-only route (ignores the closed form), used to cross-check it.
inline std::complex<double> fourier_transform_quadrature(const Potential& V, double k1, double k2,
                                                         int order = 48) {
    Potential W = V;
    W.fourier_evaluator = nullptr;
    return fourier_transform(W, k1, k2, order);
}

// --- JSON (de)serialization ---------------------------------------------

inline nlohmann::json to_json(const Potential& V) {
    using nlohmann::json;
    if (V.components.empty())
        throw std::invalid_argument("to_json: only catalog potentials are serializable");
    auto comp_json = [](const GaussianSpec& g) {
        return json{{"type", "gaussian"},
                    {"center", {g.center.x, g.center.y}},
                    {"inverse_width", g.inverse_width},
                    {"amplitude", g.amplitude}};
    };
    if (V.components.size() == 1) return comp_json(V.components[0]);
    json comps = json::array();
    for (const auto& g : V.components) comps.push_back(comp_json(g));
    return json{{"type", "mixture"}, {"components", comps}};
}

inline Potential potential_from_json(const nlohmann::json& j) {
    auto parse_gaussian = [](const nlohmann::json& g) {
        GaussianSpec spec;
        if (g.contains("center"))
            spec.center = {g.at("center").at(0).get<double>(), g.at("center").at(1).get<double>()};
        spec.inverse_width = g.at("inverse_width").get<double>();
        spec.amplitude = g.value("amplitude", 1.0);
        return spec;
    };
    std::string type = j.at("type").get<std::string>();
    if (type == "gaussian") return make_gaussian(parse_gaussian(j));
    if (type == "mixture") {
        std::vector<GaussianSpec> specs;
        for (const auto& c : j.at("components")) specs.push_back(parse_gaussian(c));
        return make_mixture(specs);
    }
    throw std::invalid_argument("potential_from_json: unknown type '" + type + "'");
}

}  // namespace landau

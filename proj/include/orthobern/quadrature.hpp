#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"

namespace orthobern {

struct GaussRule {
    std::vector<double> nodes;   // ascending, on [-1,1]
    std::vector<double> weights; // positive, summing to 2
};

namespace detail {

// (P_n(x), P_n'(x)) by the three-term recurrence
inline std::pair<double, double> legendre_pd(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int l = 2; l <= n; ++l) {
        double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
    }
    double d = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, d};
}

inline GaussRule make_gauss_rule(int points) {
    GaussRule g;
    g.nodes.assign(points, 0.0);
    g.weights.assign(points, 0.0);
    if (points == 1) {
        g.nodes = {0.0};
        g.weights = {2.0};
        return g;
    }
    if (points == 2) {
        const double r = 1.0 / std::sqrt(3.0);
        g.nodes = {-r, r};
        g.weights = {1.0, 1.0};
        return g;
    }
    const double pi = 3.14159265358979323846;
    for (int i = 1; i <= (points + 1) / 2; ++i) {
        // Newton from the Chebyshev-angle guess; i=1 is the largest root
        double z = std::cos(pi * (i - 0.25) / (points + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            auto [p, d] = legendre_pd(points, z);
            pp = d;
            double dz = p / d;
            z -= dz;
            if (std::fabs(dz) < 1e-15) {
                pp = legendre_pd(points, z).second;
                break;
            }
        }
        if (2 * i - 1 == points) { // middle root of an odd rule is exactly zero
            z = 0.0;
            pp = legendre_pd(points, z).second;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        g.nodes[points - i] = z;
        g.nodes[i - 1] = -z;
        g.weights[points - i] = w;
        g.weights[i - 1] = w;
    }
    return g;
}

} // namespace detail

inline const GaussRule& gauss_nodes(int points) {
    if (points < 1 || points > 128)
        throw CapabilityError("gauss_nodes supports 1..128 points, got " + std::to_string(points));
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<const GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(points);
    if (it == cache.end())
        it = cache.emplace(points, std::make_unique<const GaussRule>(detail::make_gauss_rule(points))).first;
    return *it->second;
}

struct QuadratureRule {
    int panels;
    int nodes_per_panel;

    QuadratureRule(int panels_, int nodes_per_panel_) : panels(panels_), nodes_per_panel(nodes_per_panel_) {
        if (panels < 1) throw ConfigError("quadrature needs at least one panel");
        gauss_nodes(nodes_per_panel); // validates the range and warms the cache
    }

    // default for non-polynomial integrands
    static QuadratureRule defaults() { return QuadratureRule(64, 16); }

    // single panel sized to integrate a polynomial of the given degree exactly
    static QuadratureRule for_polynomial_degree(int degree) { return QuadratureRule(1, degree / 2 + 1); }
};

namespace detail {

// Composite abscissae/weights over [a,b] in fixed (panel, node) order.
inline void composite_nodes(const Interval& iv, QuadratureRule rule, std::vector<double>& xs,
                            std::vector<double>& ws) {
    const GaussRule& g = gauss_nodes(rule.nodes_per_panel);
    xs.clear();
    ws.clear();
    xs.reserve(static_cast<std::size_t>(rule.panels) * rule.nodes_per_panel);
    ws.reserve(xs.capacity());
    const double pw = iv.width() / rule.panels;
    for (int p = 0; p < rule.panels; ++p) {
        const double c = iv.a + pw * (p + 0.5);
        const double h = pw / 2.0;
        for (int q = 0; q < rule.nodes_per_panel; ++q) {
            xs.push_back(c + h * g.nodes[q]);
            ws.push_back(h * g.weights[q]);
        }
    }
}

} // namespace detail

template <class F>
double integrate(F&& f, const Interval& iv, QuadratureRule rule) {
    std::vector<double> xs, ws;
    detail::composite_nodes(iv, rule, xs, ws);
    double total = 0.0;
    for (std::size_t q = 0; q < xs.size(); ++q) {
        const double v = f(xs[q]);
        if (!std::isfinite(v)) throw EvaluationError("integrand not finite", xs[q]);
        total += ws[q] * v;
    }
    return total;
}

template <class F>
double integrate2d(F&& f, const Interval& x_iv, const Interval& y_iv, QuadratureRule rule) {
    std::vector<double> xs, wx, ys, wy;
    detail::composite_nodes(x_iv, rule, xs, wx);
    detail::composite_nodes(y_iv, rule, ys, wy);
    double total = 0.0;
    for (std::size_t qx = 0; qx < xs.size(); ++qx) {
        double row = 0.0;
        for (std::size_t qy = 0; qy < ys.size(); ++qy) {
            const double v = f(xs[qx], ys[qy]);
            if (!std::isfinite(v)) throw EvaluationError("integrand not finite", xs[qx], ys[qy]);
            row += wy[qy] * v;
        }
        total += wx[qx] * row;
    }
    return total;
}

} // namespace orthobern

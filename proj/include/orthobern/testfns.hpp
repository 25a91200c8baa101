#pragma once

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"

namespace orthobern {

// x(t) = A sin(a t + delta), y(t) = B sin(b t).  The frequency fields dodge
// the name collision with interval endpoints.
struct LissajousParams {
    double A = 1.0;
    double B = 1.0;
    int a_freq = 4;
    int b_freq = 3;
    double delta = std::numbers::pi / 3.0;
    Interval t_interval{-std::numbers::pi, std::numbers::pi};
};

inline std::pair<double, double> lissajous(const LissajousParams& p, double t) {
    checked_point(p.t_interval, t);
    return {p.A * std::sin(p.a_freq * t + p.delta), p.B * std::sin(p.b_freq * t)};
}

// Radially symmetric sinc; s keeps the origin finite (and makes the value
// there 0 rather than the radial limit 1).
struct SincParams {
    double s = 1e-6;
    Interval domain{-8.0, 8.0}; // both axes
};

inline double sinc_surface(const SincParams& p, double x, double y) {
    checked_point(p.domain, x);
    checked_point(p.domain, y);
    const double r = 1.5 * std::sqrt(x * x + y * y);
    return std::sin(r) / (p.s + r);
}

struct LangermannParams {
    int p = 2;
    std::vector<double> c{1.0, 2.0};
    std::vector<double> q{2.0, 3.0};
    std::vector<double> r{3.0, 2.0};
    Interval domain{1.0, 3.0}; // both axes
};

inline double langermann_surface(const LangermannParams& prm, double x, double y) {
    if (static_cast<int>(prm.c.size()) != prm.p || static_cast<int>(prm.q.size()) != prm.p ||
        static_cast<int>(prm.r.size()) != prm.p)
        throw ConfigError("langermann parameter lists must have length p");
    checked_point(prm.domain, x);
    checked_point(prm.domain, y);
    const double pi = std::numbers::pi;
    double acc = 0.0;
    for (int i = 0; i < prm.p; ++i) {
        const double dx = x - prm.q[i], dy = y - prm.r[i];
        const double ss = dx * dx + dy * dy;
        acc += prm.c[i] * std::exp(-ss / pi) * std::cos(pi * ss);
    }
    return acc;
}

} // namespace orthobern

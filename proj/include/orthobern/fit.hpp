#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "quadrature.hpp"
#include "verify.hpp"

namespace orthobern {

enum class BasisKind { orthonormal, classical_bernstein };

struct ControlVector {
    BasisKind kind;
    BasisSpec spec;
    std::vector<double> values; // P_j, length n+1

    ControlVector(BasisKind k, BasisSpec s, std::vector<double> v)
        : kind(k), spec(s), values(std::move(v)) {
        if (static_cast<int>(values.size()) != spec.size())
            throw ConfigError("control vector length does not match basis size");
    }
};

struct ControlGrid {
    BasisKind kind;
    BasisSpec x_spec, y_spec;
    std::vector<double> values; // row-major (n+1) x (m+1)

    ControlGrid(BasisKind k, BasisSpec xs, BasisSpec ys, std::vector<double> v)
        : kind(k), x_spec(xs), y_spec(ys), values(std::move(v)) {
        if (static_cast<int>(values.size()) != x_spec.size() * y_spec.size())
            throw ConfigError("control grid shape does not match basis sizes");
    }

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * y_spec.size() + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * y_spec.size() + j]; }
};

// Uniform abscissae with both endpoints, used for error scoring and export.
struct SampleGrid {
    Interval interval;
    int N;

    SampleGrid(Interval iv, int N_) : interval(iv), N(N_) {
        if (N < 2) throw ConfigError("sample grid needs at least 2 points");
    }

    double point(int u) const {
        return u == N - 1 ? interval.b : interval.a + interval.width() * u / (N - 1);
    }
};

struct SampleGrid2D {
    Interval x_interval, y_interval;
    int N, M;

    SampleGrid2D(Interval xi, Interval yi, int N_, int M_) : x_interval(xi), y_interval(yi), N(N_), M(M_) {
        if (N < 2 || M < 2) throw ConfigError("sample grid needs at least 2 points per axis");
    }

    double point_x(int u) const {
        return u == N - 1 ? x_interval.b : x_interval.a + x_interval.width() * u / (N - 1);
    }
    double point_y(int v) const {
        return v == M - 1 ? y_interval.b : y_interval.a + y_interval.width() * v / (M - 1);
    }
};

namespace detail {

inline std::vector<double> basis_values(BasisKind kind, const BasisSpec& spec, double x) {
    return kind == BasisKind::orthonormal ? onb_eval_all(spec, x) : bernstein_eval_all(spec, x);
}

template <class F>
inline double checked_sample(F&& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError("sampled function not finite", x);
    return v;
}

template <class F>
inline double checked_sample2(F&& f, double x, double y) {
    const double v = f(x, y);
    if (!std::isfinite(v)) throw EvaluationError("sampled function not finite", x, y);
    return v;
}

// integrals c_j = int_a^b phi_j f dx for all j at once
template <class F>
inline std::vector<double> onb_moment_integrals(F&& f, const BasisSpec& spec, QuadratureRule rule) {
    std::vector<double> xs, ws;
    composite_nodes(spec.interval, rule, xs, ws);
    std::vector<double> c(spec.size(), 0.0);
    for (std::size_t q = 0; q < xs.size(); ++q) {
        const double fv = checked_sample(f, xs[q]);
        const std::vector<double> phi = onb_eval_all(spec, xs[q]);
        const double w = ws[q];
        for (int j = 0; j < spec.size(); ++j) c[j] += w * phi[j] * fv;
    }
    return c;
}

// D_{ij} = int int f phi_i(x) phi_j(y) dx dy for all (i,j)
template <class F>
inline std::vector<double> onb_moment_integrals_2d(F&& f, const BasisSpec& xs_spec, const BasisSpec& ys_spec,
                                                   QuadratureRule rule) {
    std::vector<double> xs, wx, ys, wy;
    composite_nodes(xs_spec.interval, rule, xs, wx);
    composite_nodes(ys_spec.interval, rule, ys, wy);
    const int nx = xs_spec.size(), ny = ys_spec.size();

    std::vector<std::vector<double>> phi_y(ys.size());
    for (std::size_t qy = 0; qy < ys.size(); ++qy) phi_y[qy] = onb_eval_all(ys_spec, ys[qy]);

    std::vector<double> D(static_cast<std::size_t>(nx) * ny, 0.0);
    std::vector<double> row(ny);
    for (std::size_t qx = 0; qx < xs.size(); ++qx) {
        const std::vector<double> phi_x = onb_eval_all(xs_spec, xs[qx]);
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t qy = 0; qy < ys.size(); ++qy) {
            const double fv = checked_sample2(f, xs[qx], ys[qy]);
            const double wyf = wy[qy] * fv;
            const std::vector<double>& py = phi_y[qy];
            for (int j = 0; j < ny; ++j) row[j] += wyf * py[j];
        }
        for (int i = 0; i < nx; ++i) {
            const double wxp = wx[qx] * phi_x[i];
            for (int j = 0; j < ny; ++j) D[static_cast<std::size_t>(i) * ny + j] += wxp * row[j];
        }
    }
    return D;
}

} // namespace detail

// Orthonormal-basis projection: P_j = (1/(b-a)) int phi_j f.
template <class F>
ControlVector fit_curve_onb(F&& f, const BasisSpec& spec, QuadratureRule rule = QuadratureRule::defaults()) {
    std::vector<double> c = detail::onb_moment_integrals(std::forward<F>(f), spec, rule);
    const double inv = 1.0 / spec.interval.width();
    for (double& v : c) v *= inv;
    return ControlVector(BasisKind::orthonormal, spec, std::move(c));
}

template <class F>
ControlGrid fit_surface_onb(F&& f, const BasisSpec& x_spec, const BasisSpec& y_spec,
                            QuadratureRule rule = QuadratureRule::defaults()) {
    std::vector<double> D = detail::onb_moment_integrals_2d(std::forward<F>(f), x_spec, y_spec, rule);
    const double inv = 1.0 / (x_spec.interval.width() * y_spec.interval.width());
    for (double& v : D) v *= inv;
    return ControlGrid(BasisKind::orthonormal, x_spec, y_spec, std::move(D));
}

// Classical Bezier control points via the triangular back-substitution: the
// lower-triangular integrals int phi_i B_j vanish for j < i, so solving from
// i = n down needs only the exact upper-triangle values.
template <class F>
ControlVector bezier_curve_recover(F&& f, const BasisSpec& spec,
                                   QuadratureRule rule = QuadratureRule::defaults()) {
    const int n = spec.n;
    std::vector<double> c = detail::onb_moment_integrals(std::forward<F>(f), spec, rule);

    std::vector<std::vector<double>> I(n + 1, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            PhiBernIntegral pb = phi_bern_integral(n, i, j, spec.interval);
            if (i == j && pb.core == 0) throw SingularityError("zero diagonal in control-point solve");
            I[i][j] = pb.value;
        }
    }

    std::vector<double> P(n + 1, 0.0);
    for (int i = n; i >= 0; --i) {
        double acc = c[i];
        for (int j = i + 1; j <= n; ++j) acc -= P[j] * I[i][j];
        P[i] = acc / I[i][i];
    }
    return ControlVector(BasisKind::classical_bernstein, spec, std::move(P));
}

template <class F>
ControlGrid bezier_surface_recover(F&& f, const BasisSpec& x_spec, const BasisSpec& y_spec,
                                   QuadratureRule rule = QuadratureRule::defaults()) {
    const int n = x_spec.n, m = y_spec.n;
    std::vector<double> D = detail::onb_moment_integrals_2d(std::forward<F>(f), x_spec, y_spec, rule);

    auto tri = [](int deg, const Interval& iv) {
        std::vector<std::vector<double>> I(deg + 1, std::vector<double>(deg + 1, 0.0));
        for (int i = 0; i <= deg; ++i)
            for (int j = i; j <= deg; ++j) {
                PhiBernIntegral pb = phi_bern_integral(deg, i, j, iv);
                if (i == j && pb.core == 0) throw SingularityError("zero diagonal in control-point solve");
                I[i][j] = pb.value;
            }
        return I;
    };
    const std::vector<std::vector<double>> Ix = tri(n, x_spec.interval);
    const std::vector<std::vector<double>> Iy = tri(m, y_spec.interval);

    ControlGrid P(BasisKind::classical_bernstein, x_spec, y_spec,
                  std::vector<double>(static_cast<std::size_t>(n + 1) * (m + 1), 0.0));
    for (int i = n; i >= 0; --i) {
        for (int j = m; j >= 0; --j) {
            double acc = D[static_cast<std::size_t>(i) * (m + 1) + j];
            // already-solved contributions; k < i and l < j drop out exactly
            for (int k = i; k <= n; ++k)
                for (int l = j; l <= m; ++l) {
                    if (k == i && l == j) continue;
                    acc -= P.at(k, l) * Ix[i][k] * Iy[j][l];
                }
            P.at(i, j) = acc / (Ix[i][i] * Iy[j][j]);
        }
    }
    return P;
}

inline double reconstruct_curve(const ControlVector& cv, double x) {
    const std::vector<double> b = detail::basis_values(cv.kind, cv.spec, x);
    double acc = 0.0;
    for (int j = 0; j < cv.spec.size(); ++j) acc += b[j] * cv.values[j];
    return acc;
}

inline double reconstruct_surface(const ControlGrid& cg, double x, double y) {
    const std::vector<double> bx = detail::basis_values(cg.kind, cg.x_spec, x);
    const std::vector<double> by = detail::basis_values(cg.kind, cg.y_spec, y);
    double acc = 0.0;
    for (int i = 0; i < cg.x_spec.size(); ++i) {
        double row = 0.0;
        for (int j = 0; j < cg.y_spec.size(); ++j) row += by[j] * cg.at(i, j);
        acc += bx[i] * row;
    }
    return acc;
}

// Parametric mean squared error over the grid: mean of squared 2D deviation.
template <class FX, class FY>
double mse_curve(FX&& fx, FY&& fy, const ControlVector& gx, const ControlVector& gy, const SampleGrid& grid) {
    double acc = 0.0;
    for (int u = 0; u < grid.N; ++u) {
        const double t = grid.point(u);
        const double dx = detail::checked_sample(fx, t) - reconstruct_curve(gx, t);
        const double dy = detail::checked_sample(fy, t) - reconstruct_curve(gy, t);
        acc += dx * dx + dy * dy;
    }
    return acc / grid.N;
}

// Scalar variant for single-component fits.
template <class F>
double mse_scalar(F&& f, const ControlVector& g, const SampleGrid& grid) {
    double acc = 0.0;
    for (int u = 0; u < grid.N; ++u) {
        const double t = grid.point(u);
        const double d = detail::checked_sample(f, t) - reconstruct_curve(g, t);
        acc += d * d;
    }
    return acc / grid.N;
}

template <class F>
double mse_surface(F&& f, const ControlGrid& g, const SampleGrid2D& grid) {
    // cache the per-axis basis rows; identical values to point-by-point calls
    std::vector<std::vector<double>> bx(grid.N), by(grid.M);
    for (int u = 0; u < grid.N; ++u) bx[u] = detail::basis_values(g.kind, g.x_spec, grid.point_x(u));
    for (int v = 0; v < grid.M; ++v) by[v] = detail::basis_values(g.kind, g.y_spec, grid.point_y(v));

    double acc = 0.0;
    for (int u = 0; u < grid.N; ++u) {
        for (int v = 0; v < grid.M; ++v) {
            double rec = 0.0;
            for (int i = 0; i < g.x_spec.size(); ++i) {
                double row = 0.0;
                for (int j = 0; j < g.y_spec.size(); ++j) row += by[v][j] * g.at(i, j);
                rec += bx[u][i] * row;
            }
            const double d = detail::checked_sample2(f, grid.point_x(u), grid.point_y(v)) - rec;
            acc += d * d;
        }
    }
    return acc / (static_cast<double>(grid.N) * grid.M);
}

// One fit summary per degree; the caller picks the minimum-error entry.
struct FitReport {
    BasisKind kind;
    int n;
    std::optional<int> m;
    std::optional<ControlVector> curve_x, curve_y;
    std::optional<ControlGrid> surface;
    double error = 0.0;
    int N = 0;
    std::optional<int> M;
};

template <class F>
std::vector<FitReport> degree_sweep(F&& f, const Interval& iv, int n_lo, int n_hi, BasisKind kind,
                                    QuadratureRule rule = QuadratureRule::defaults(), int grid_n = 1001) {
    if (n_lo < 0 || n_hi < n_lo) throw ConfigError("degree sweep needs 0 <= lo <= hi");
    std::vector<FitReport> out;
    const SampleGrid grid(iv, grid_n);
    for (int n = n_lo; n <= n_hi; ++n) {
        const BasisSpec spec(n, iv);
        ControlVector cv = kind == BasisKind::orthonormal ? fit_curve_onb(f, spec, rule)
                                                          : bezier_curve_recover(f, spec, rule);
        FitReport r{kind, n, std::nullopt, cv, std::nullopt, std::nullopt, mse_scalar(f, cv, grid), grid_n,
                    std::nullopt};
        out.push_back(std::move(r));
    }
    return out;
}

template <class FX, class FY>
std::vector<FitReport> degree_sweep(FX&& fx, FY&& fy, const Interval& iv, int n_lo, int n_hi, BasisKind kind,
                                    QuadratureRule rule = QuadratureRule::defaults(), int grid_n = 1001) {
    if (n_lo < 0 || n_hi < n_lo) throw ConfigError("degree sweep needs 0 <= lo <= hi");
    std::vector<FitReport> out;
    const SampleGrid grid(iv, grid_n);
    for (int n = n_lo; n <= n_hi; ++n) {
        const BasisSpec spec(n, iv);
        ControlVector cx = kind == BasisKind::orthonormal ? fit_curve_onb(fx, spec, rule)
                                                          : bezier_curve_recover(fx, spec, rule);
        ControlVector cy = kind == BasisKind::orthonormal ? fit_curve_onb(fy, spec, rule)
                                                          : bezier_curve_recover(fy, spec, rule);
        const double e = mse_curve(fx, fy, cx, cy, grid);
        FitReport r{kind, n, std::nullopt, std::move(cx), std::move(cy), std::nullopt, e, grid_n, std::nullopt};
        out.push_back(std::move(r));
    }
    return out;
}

template <class F>
std::vector<FitReport> degree_sweep_surface(F&& f, const Interval& x_iv, const Interval& y_iv, int lo, int hi,
                                            BasisKind kind, QuadratureRule rule = QuadratureRule::defaults(),
                                            int grid_n = 201, int grid_m = 201) {
    if (lo < 0 || hi < lo) throw ConfigError("degree sweep needs 0 <= lo <= hi");
    std::vector<FitReport> out;
    const SampleGrid2D grid(x_iv, y_iv, grid_n, grid_m);
    for (int n = lo; n <= hi; ++n) {
        const BasisSpec xs(n, x_iv), ys(n, y_iv);
        ControlGrid cg = kind == BasisKind::orthonormal ? fit_surface_onb(f, xs, ys, rule)
                                                        : bezier_surface_recover(f, xs, ys, rule);
        FitReport r{kind, n, n, std::nullopt, std::nullopt, std::move(cg), 0.0, grid_n, grid_m};
        r.error = mse_surface(f, *r.surface, grid);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace orthobern

#include <catch2/catch_amalgamated.hpp>

#include <orthobern/fit.hpp>
#include <orthobern/testfns.hpp>

#include <cmath>
#include <limits>
#include <random>

using namespace orthobern;

namespace {
const Interval kUnit(0.0, 1.0);
}

TEST_CASE("sample grids include both endpoints exactly") {
    SampleGrid g(Interval(-2.0, 3.0), 7);
    CHECK(g.point(0) == -2.0);
    CHECK(g.point(6) == 3.0);
    for (int u = 1; u < 6; ++u) CHECK(g.point(u) > g.point(u - 1));
    CHECK_THROWS_AS(SampleGrid(kUnit, 1), ConfigError);

    SampleGrid2D g2(kUnit, Interval(1.0, 3.0), 5, 9);
    CHECK(g2.point_x(4) == 1.0);
    CHECK(g2.point_y(0) == 1.0);
    CHECK(g2.point_y(8) == 3.0);
    CHECK_THROWS_AS(SampleGrid2D(kUnit, kUnit, 5, 1), ConfigError);
}

TEST_CASE("control containers validate their shape") {
    BasisSpec s3(3, kUnit), s2(2, kUnit);
    CHECK_THROWS_AS(ControlVector(BasisKind::orthonormal, s3, {1.0, 2.0}), ConfigError);
    CHECK_THROWS_AS(ControlGrid(BasisKind::orthonormal, s3, s2, std::vector<double>(5, 0.0)), ConfigError);
    ControlGrid cg(BasisKind::classical_bernstein, s3, s2, std::vector<double>(12, 0.0));
    cg.at(3, 2) = 7.0;
    CHECK(cg.at(3, 2) == 7.0);
    CHECK(cg.values[11] == 7.0); // row-major layout
}

TEST_CASE("projection recovers a single basis function") {
    BasisSpec spec(6, kUnit);
    auto f = [&](double x) { return onb_eval(spec, 2, x); };
    ControlVector cv = fit_curve_onb(f, spec);
    for (int j = 0; j <= 6; ++j) REQUIRE(std::fabs(cv.values[j] - (j == 2 ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("projection of a constant reconstructs it everywhere") {
    BasisSpec spec(5, Interval(-1.0, 2.0));
    ControlVector cv = fit_curve_onb([](double) { return 4.25; }, spec);
    SampleGrid grid(spec.interval, 50);
    for (int u = 0; u < grid.N; ++u)
        REQUIRE_THAT(reconstruct_curve(cv, grid.point(u)), Catch::Matchers::WithinRel(4.25, 1e-11));
}

TEST_CASE("projection is exact on polynomials of fitting degree") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int n : {3, 7, 10}) {
        for (const Interval& iv : {Interval(0.0, 1.0), Interval(-1.0, 1.5)}) {
            std::vector<double> c(n + 1);
            for (auto& ci : c) ci = coef(rng);
            c[n] += 1;
            auto f = [&](double x) {
                double acc = 0.0;
                for (int i = n; i >= 0; --i) acc = acc * x + c[i];
                return acc;
            };
            BasisSpec spec(n, iv);
            ControlVector cv = fit_curve_onb(f, spec);
            for (int N : {101, 517}) REQUIRE(mse_scalar(f, cv, SampleGrid(iv, N)) <= 1e-18);
        }
    }
}

TEST_CASE("surface projection recovers a tensor basis function") {
    BasisSpec xs(4, kUnit), ys(4, Interval(-1.0, 1.0));
    auto f = [&](double x, double y) { return onb_eval(xs, 1, x) * onb_eval(ys, 2, y); };
    ControlGrid cg = fit_surface_onb(f, xs, ys);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            REQUIRE(std::fabs(cg.at(i, j) - (i == 1 && j == 2 ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("control-point recovery inverts reconstruction") {
    std::mt19937 rng(1986);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    BasisSpec spec(8, Interval(0.0, 2.0));
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<double> q(9);
        for (auto& v : q) v = dist(rng);
        ControlVector truth(BasisKind::classical_bernstein, spec, q);
        auto f = [&](double x) { return reconstruct_curve(truth, x); };
        ControlVector rec = bezier_curve_recover(f, spec);
        REQUIRE(rec.kind == BasisKind::classical_bernstein);
        for (int j = 0; j <= 8; ++j) REQUIRE(std::fabs(rec.values[j] - q[j]) <= 1e-9);
    }
}

TEST_CASE("control-point recovery of an endpoint bump") {
    BasisSpec spec(8, kUnit);
    auto f = [&](double x) { return bernstein_eval(spec, 8, x); };
    ControlVector rec = bezier_curve_recover(f, spec);
    for (int j = 0; j <= 8; ++j) REQUIRE(std::fabs(rec.values[j] - (j == 8 ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("surface control-point recovery round-trip") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    BasisSpec xs(3, kUnit), ys(3, Interval(1.0, 2.0));
    std::vector<double> q(16);
    for (auto& v : q) v = dist(rng);
    ControlGrid truth(BasisKind::classical_bernstein, xs, ys, q);
    auto f = [&](double x, double y) { return reconstruct_surface(truth, x, y); };
    ControlGrid rec = bezier_surface_recover(f, xs, ys);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) REQUIRE(std::fabs(rec.at(i, j) - truth.at(i, j)) <= 1e-9);

    BasisSpec s4(4, kUnit);
    auto corner = [&](double x, double y) { return bernstein_eval(s4, 4, x) * bernstein_eval(s4, 4, y); };
    ControlGrid cg = bezier_surface_recover(corner, s4, s4);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            REQUIRE(std::fabs(cg.at(i, j) - (i == 4 && j == 4 ? 1.0 : 0.0)) <= 1e-9);
}

TEST_CASE("both bases reconstruct the same fit") {
    BasisSpec spec(10, kUnit);
    auto f = [](double x) { return std::sin(3.0 * x); };
    ControlVector ortho = fit_curve_onb(f, spec);
    ControlVector classical = bezier_curve_recover(f, spec);
    for (int u = 0; u <= 20; ++u) {
        double x = u / 20.0;
        REQUIRE(std::fabs(reconstruct_curve(ortho, x) - reconstruct_curve(classical, x)) <= 1e-9);
    }
}

TEST_CASE("fit coefficients are insensitive to a finer quadrature rule") {
    BasisSpec spec(7, kUnit);
    auto f = [](double x) { return std::sin(3.0 * x); };
    ControlVector a = fit_curve_onb(f, spec, QuadratureRule::defaults());
    ControlVector b = fit_curve_onb(f, spec, QuadratureRule(96, 20));
    for (int j = 0; j <= 7; ++j) REQUIRE(std::fabs(a.values[j] - b.values[j]) <= 1e-12);
}

TEST_CASE("mean squared error of a uniform offset") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    BasisSpec spec(6, Interval(-1.0, 1.0));
    std::vector<double> q(7);
    for (auto& v : q) v = dist(rng);
    ControlVector base(BasisKind::classical_bernstein, spec, q);
    auto f = [&](double x) { return reconstruct_curve(base, x); };

    std::vector<double> shifted = q;
    for (auto& v : shifted) v += 0.25; // partition of unity: reconstruction shifts by 0.25
    ControlVector off(BasisKind::classical_bernstein, spec, shifted);
    CHECK_THAT(mse_scalar(f, off, SampleGrid(spec.interval, 101)), Catch::Matchers::WithinRel(0.0625, 1e-12));

    std::vector<double> sx = q, sy = q;
    for (auto& v : sx) v += 0.3;
    for (auto& v : sy) v -= 0.4;
    ControlVector offx(BasisKind::classical_bernstein, spec, sx);
    ControlVector offy(BasisKind::classical_bernstein, spec, sy);
    CHECK_THAT(mse_curve(f, f, offx, offy, SampleGrid(spec.interval, 101)),
               Catch::Matchers::WithinRel(0.25, 1e-12));
}

TEST_CASE("surface mean squared error of a uniform offset") {
    std::mt19937 rng(60601);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    BasisSpec xs(3, kUnit), ys(4, kUnit);
    std::vector<double> q(20);
    for (auto& v : q) v = dist(rng);
    ControlGrid base(BasisKind::classical_bernstein, xs, ys, q);
    auto f = [&](double x, double y) { return reconstruct_surface(base, x, y); };

    std::vector<double> shifted = q;
    for (auto& v : shifted) v += 0.5;
    ControlGrid off(BasisKind::classical_bernstein, xs, ys, shifted);
    CHECK_THAT(mse_surface(f, off, SampleGrid2D(kUnit, kUnit, 21, 31)),
               Catch::Matchers::WithinRel(0.25, 1e-12));
}

TEST_CASE("projection is idempotent") {
    BasisSpec spec(9, kUnit);
    auto f = [](double x) { return std::sin(5.0 * x) + 0.3 * std::cos(2.0 * x); };
    ControlVector first = fit_curve_onb(f, spec);
    auto g = [&](double x) { return reconstruct_curve(first, x); };
    ControlVector second = fit_curve_onb(g, spec);
    for (int j = 0; j <= 9; ++j) REQUIRE(std::fabs(first.values[j] - second.values[j]) <= 1e-11);
}

TEST_CASE("degree sweep over a cubic") {
    auto f = [](double x) { return 2.0 - x + 0.5 * x * x * x; };
    std::vector<FitReport> sweep = degree_sweep(f, kUnit, 0, 4, BasisKind::orthonormal);
    REQUIRE(sweep.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(sweep[i].n == i);
        CHECK(sweep[i].N == 1001);
        CHECK(sweep[i].curve_x.has_value());
        CHECK_FALSE(sweep[i].surface.has_value());
    }
    CHECK(sweep[0].error > 1e-4);
    CHECK(sweep[1].error > 1e-4);
    CHECK(sweep[2].error > 1e-6);
    CHECK(sweep[3].error <= 1e-20);
    CHECK(sweep[4].error <= 1e-20);
    CHECK_THROWS_AS(degree_sweep(f, kUnit, 3, 1, BasisKind::orthonormal), ConfigError);
}

TEST_CASE("parametric degree sweep near the featured degrees") {
    LissajousParams lp;
    auto fx = [&](double t) { return lissajous(lp, t).first; };
    auto fy = [&](double t) { return lissajous(lp, t).second; };
    std::vector<FitReport> sweep = degree_sweep(fx, fy, lp.t_interval, 19, 21, BasisKind::orthonormal);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[1].error <= 1e-6);         // featured degree sits inside the band
    CHECK(sweep[2].error <= sweep[0].error); // error keeps shrinking here
    CHECK(sweep[0].curve_y.has_value());
}

TEST_CASE("small surface fit runs end to end") {
    LangermannParams gp;
    BasisSpec xs(6, Interval(gp.domain.a, gp.domain.b)), ys(6, Interval(gp.domain.a, gp.domain.b));
    auto f = [&](double x, double y) { return langermann_surface(gp, x, y); };
    ControlGrid cg = fit_surface_onb(f, xs, ys);
    double e = mse_surface(f, cg, SampleGrid2D(xs.interval, ys.interval, 41, 41));
    CHECK(e > 0.0);
    CHECK(e < 0.5); // coarse degree, loose band; the pinned bands live in the acceptance run
}

TEST_CASE("non-finite samples surface as evaluation errors") {
    BasisSpec spec(4, kUnit);
    auto bad = [](double x) { return x < 0.7 ? 1.0 : std::numeric_limits<double>::quiet_NaN(); };
    CHECK_THROWS_AS(fit_curve_onb(bad, spec), EvaluationError);
    ControlVector cv = fit_curve_onb([](double) { return 1.0; }, spec);
    CHECK_THROWS_AS(mse_scalar(bad, cv, SampleGrid(kUnit, 11)), EvaluationError);
    auto bad2 = [](double, double) { return std::numeric_limits<double>::infinity(); };
    CHECK_THROWS_AS(fit_surface_onb(bad2, spec, spec), EvaluationError);
}

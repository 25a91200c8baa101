#include <catch2/catch_amalgamated.hpp>

#include <orthobern/basis.hpp>
#include <orthobern/quadrature.hpp>
#include <orthobern/verify.hpp>

#include <cmath>
#include <random>

using namespace orthobern;

TEST_CASE("tiny gauss rules are exact literals") {
    const GaussRule& g1 = gauss_nodes(1);
    CHECK(g1.nodes == std::vector<double>{0.0});
    CHECK(g1.weights == std::vector<double>{2.0});

    const GaussRule& g2 = gauss_nodes(2);
    const double r = 1.0 / std::sqrt(3.0);
    CHECK(g2.nodes == std::vector<double>{-r, r});
    CHECK(g2.weights == std::vector<double>{1.0, 1.0});

    const GaussRule& g3 = gauss_nodes(3);
    CHECK(g3.nodes[1] == 0.0); // middle root pinned, not Newton residue
    CHECK_THAT(g3.nodes[2], Catch::Matchers::WithinRel(std::sqrt(0.6), 1e-15));
    CHECK_THAT(g3.weights[1], Catch::Matchers::WithinRel(8.0 / 9.0, 1e-15));
    CHECK_THAT(g3.weights[2], Catch::Matchers::WithinRel(5.0 / 9.0, 1e-15));
}

TEST_CASE("gauss rule structure across sizes") {
    for (int m : {3, 5, 8, 16, 32, 64, 128}) {
        const GaussRule& g = gauss_nodes(m);
        REQUIRE(g.nodes.size() == static_cast<std::size_t>(m));
        double wsum = 0.0;
        for (int i = 0; i < m; ++i) {
            REQUIRE(g.weights[i] > 0.0);
            REQUIRE(g.nodes[i] > -1.0);
            REQUIRE(g.nodes[i] < 1.0);
            if (i) REQUIRE(g.nodes[i] > g.nodes[i - 1]);
            // mirror symmetry is assigned, not recomputed
            REQUIRE(g.nodes[i] == -g.nodes[m - 1 - i]);
            REQUIRE(g.weights[i] == g.weights[m - 1 - i]);
            wsum += g.weights[i];
        }
        REQUIRE(std::fabs(wsum - 2.0) <= 1e-14);
        if (m % 2) REQUIRE(g.nodes[m / 2] == 0.0);
    }
}

TEST_CASE("gauss rule capability range") {
    CHECK_THROWS_AS(gauss_nodes(0), CapabilityError);
    CHECK_THROWS_AS(gauss_nodes(-3), CapabilityError);
    CHECK_THROWS_AS(gauss_nodes(129), CapabilityError);
    CHECK_NOTHROW(gauss_nodes(128));
}

TEST_CASE("raw rules integrate monomials to machine precision") {
    for (int m : {4, 16, 64}) {
        const GaussRule& g = gauss_nodes(m);
        for (int d = 0; d <= 2 * m - 1; ++d) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) s += g.weights[i] * std::pow(g.nodes[i], d);
            if (d % 2)
                REQUIRE(std::fabs(s) <= 1e-14);
            else
                REQUIRE_THAT(s, Catch::Matchers::WithinRel(2.0 / (d + 1), 1e-13));
        }
    }
}

TEST_CASE("quadrature rule construction") {
    CHECK_THROWS_AS(QuadratureRule(0, 8), ConfigError);
    CHECK_THROWS_AS(QuadratureRule(4, 129), CapabilityError);
    QuadratureRule d = QuadratureRule::defaults();
    CHECK(d.panels == 64);
    CHECK(d.nodes_per_panel == 16);
    CHECK(QuadratureRule::for_polynomial_degree(0).nodes_per_panel == 1);
    CHECK(QuadratureRule::for_polynomial_degree(9).nodes_per_panel == 5); // 2*5-1 = 9
    CHECK(QuadratureRule::for_polynomial_degree(10).nodes_per_panel == 6);
    CHECK(QuadratureRule::for_polynomial_degree(10).panels == 1);
}

TEST_CASE("integrate: constants and smooth functions") {
    CHECK_THAT(integrate([](double) { return 1.0; }, Interval(-2.0, 3.0), QuadratureRule(3, 4)),
               Catch::Matchers::WithinRel(5.0, 1e-14));
    const double pi = 3.14159265358979323846;
    CHECK_THAT(integrate([](double x) { return std::sin(x); }, Interval(0.0, pi), QuadratureRule::defaults()),
               Catch::Matchers::WithinRel(2.0, 1e-13));
    double e2 = std::exp(2.0) - 1.0;
    CHECK_THAT(integrate([](double x) { return std::exp(x); }, Interval(0.0, 2.0), QuadratureRule(32, 16)),
               Catch::Matchers::WithinRel(e2, 1e-13));
    CHECK_THAT(integrate([](double x) { return std::exp(x); }, Interval(0.0, 2.0), QuadratureRule(64, 16)),
               Catch::Matchers::WithinRel(e2, 1e-13));
}

TEST_CASE("integrate: bernstein products hit the closed form") {
    BasisSpec spec(4, Interval(0.0, 1.0));
    double q = integrate([&](double x) { return bernstein_eval(spec, 2, x) * bernstein_eval(spec, 1, x); },
                         Interval(0.0, 1.0), QuadratureRule::for_polynomial_degree(8));
    double expected = bernstein_pair_integral(2, 4, 1, 4).convert_to<double>(); // 1/21
    CHECK_THAT(q, Catch::Matchers::WithinAbs(expected, 1e-15));
}

TEST_CASE("integrate: orthonormal functions have unit norm") {
    BasisSpec spec(8, Interval(0.0, 1.0));
    double q = integrate([&](double x) { double v = onb_eval(spec, 3, x); return v * v; },
                         Interval(0.0, 1.0), QuadratureRule::defaults());
    CHECK_THAT(q, Catch::Matchers::WithinRel(1.0, 1e-12));
}

TEST_CASE("single-panel polynomial exactness against rational integrals") {
    std::mt19937 rng(90125);
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int d : {1, 4, 7, 12}) {
        std::vector<Rational> c(d + 1);
        for (auto& ci : c) ci = coef(rng);
        c[d] += 10; // keep the degree honest
        RationalPoly p(c);
        double exact = p.integral01().convert_to<double>();
        auto horner = [&](double x) {
            double acc = 0.0;
            for (int i = d; i >= 0; --i) acc = acc * x + c[i].convert_to<double>();
            return acc;
        };
        double q = integrate(horner, Interval(0.0, 1.0), QuadratureRule::for_polynomial_degree(d));
        REQUIRE(std::fabs(q - exact) <= 1e-14 * std::max(1.0, std::fabs(exact)));
    }
}

TEST_CASE("integrate reports the offending abscissa") {
    try {
        integrate([](double x) { return std::sqrt(x); }, Interval(-1.0, 1.0), QuadratureRule(2, 4));
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK_FALSE(e.is_2d());
        CHECK(e.x() < 0.0);
    }
}

TEST_CASE("integrate2d: constants, separability, normalization") {
    QuadratureRule rule(8, 8);
    CHECK_THAT(integrate2d([](double, double) { return 1.0; }, Interval(0.0, 1.0), Interval(0.0, 1.0), rule),
               Catch::Matchers::WithinRel(1.0, 1e-13));

    auto g = [](double x) { return 1.0 + x * x; };
    auto h = [](double y) { return 2.0 + std::sin(y); };
    double prod = integrate2d([&](double x, double y) { return g(x) * h(y); }, Interval(0.0, 2.0),
                              Interval(-1.0, 1.0), rule);
    double gi = integrate(g, Interval(0.0, 2.0), rule);
    double hi = integrate(h, Interval(-1.0, 1.0), rule);
    CHECK_THAT(prod, Catch::Matchers::WithinRel(gi * hi, 1e-12));

    BasisSpec spec(5, Interval(0.0, 1.0));
    double nrm = integrate2d(
        [&](double x, double y) {
            double v = onb_eval(spec, 2, x) * onb_eval(spec, 2, y);
            return v * v;
        },
        Interval(0.0, 1.0), Interval(0.0, 1.0), QuadratureRule::defaults());
    CHECK_THAT(nrm, Catch::Matchers::WithinRel(1.0, 1e-11));
}

TEST_CASE("integrate2d reports the offending point") {
    try {
        integrate2d([](double x, double y) { return std::sqrt(y - x); }, Interval(0.0, 1.0),
                    Interval(0.0, 1.0), QuadratureRule(2, 4));
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.is_2d());
        CHECK(e.y() < e.x());
    }
}

TEST_CASE("quadrature gram matrix is the identity") {
    const int n = 8;
    BasisSpec spec(n, Interval(-1.0, 4.0));
    QuadratureRule rule = QuadratureRule::for_polynomial_degree(2 * n);
    double worst = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            double g = integrate([&](double x) { return onb_eval(spec, i, x) * onb_eval(spec, j, x); },
                                 spec.interval, rule) /
                       spec.interval.width();
            worst = std::max(worst, std::fabs(g - (i == j ? 1.0 : 0.0)));
        }
    CHECK(worst <= 1e-10);
}

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "exact.hpp"

namespace orthobern {

// Exact double-sum and Gram-Schmidt paths are O(n^2) big-rational terms per
// entry; the guard keeps full verification sweeps fast.
inline constexpr int kMaxExactDegree = 15;

// B_{j,n}(t) on [0,1] as an exact polynomial.
inline RationalPoly bernstein_poly_exact(int j, int n) {
    if (j < 0 || n < 0 || j > n) throw IndexError("bernstein_poly_exact: need 0 <= j <= n");
    RationalPoly tj = RationalPoly::t().pow(j);
    RationalPoly one_minus_t({Rational(1), Rational(-1)});
    return (tj * one_minus_t.pow(n - j)).scaled(Rational(binomial(n, j)));
}

// The radical-free part of phi_{j,n} from the explicit expansion.
inline RationalPoly onb_power_poly(int n, int j) {
    const OrthoCoeffs& oc = onb_coeffs(n, j);
    std::vector<Rational> c(oc.power.size());
    for (std::size_t i = 0; i < oc.power.size(); ++i) c[i] = Rational(oc.power[i]);
    return RationalPoly(std::move(c));
}

// int_0^1 B_{p,q} B_{r,s} dt, closed form.
inline Rational bernstein_pair_integral(int p, int q, int r, int s) {
    if (p < 0 || r < 0 || p > q || r > s)
        throw IndexError("bernstein_pair_integral: need 0 <= p <= q and 0 <= r <= s");
    return Rational(binomial(q, p) * binomial(s, r), Int(q + s + 1) * binomial(q + s, p + r));
}

// The orthonormality double sum with the square-root prefactor stripped:
// equals 0 off the diagonal and 1/(2(n-i)+1) on it.
inline Rational ortho_double_sum(int n, int i, int j) {
    if (n < 0 || i < 0 || j < 0 || i > n || j > n)
        throw IndexError("ortho_double_sum: need 0 <= i, j <= n");
    Rational acc = 0;
    for (int k = 0; k <= i; ++k) {
        for (int l = 0; l <= j; ++l) {
            Int num = binomial(2L * n + 1 - k, i - k) * binomial(i, k) *
                      binomial(2L * n + 1 - l, j - l) * binomial(j, l);
            Int den = Int(2L * n + 1 - k - l) * binomial(2L * n - k - l, i + j - k - l);
            Rational term(num, den);
            if ((k + l) % 2)
                acc -= term;
            else
                acc += term;
        }
    }
    return acc;
}

// int_a^b phi_{i,n} B_{j,n} dx: exactly zero below the diagonal, otherwise an
// exact rational core times sqrt(2(n-i)+1) times the interval width.
struct PhiBernIntegral {
    long radicand;  // 2(n-i)+1
    Rational core;  // exact [0,1] value divided by the radical
    double value;   // full floating value on [a,b]
};

inline PhiBernIntegral phi_bern_integral(int n, int i, int j, const Interval& iv) {
    if (n < 0 || i < 0 || j < 0 || i > n || j > n)
        throw IndexError("phi_bern_integral: need 0 <= i, j <= n");
    PhiBernIntegral out{2L * (n - i) + 1, Rational(0), 0.0};
    if (j < i) return out;
    for (int k = 0; k <= i; ++k) {
        Int num = binomial(2L * n + 1 - k, i - k) * binomial(i, k) * binomial(n, j);
        Int den = Int(2L * n + 1 - k) * binomial(2L * n - k, i + j - k);
        Rational term(num, den);
        if (k % 2)
            out.core -= term;
        else
            out.core += term;
    }
    out.value = iv.width() * std::sqrt(static_cast<double>(out.radicand)) * out.core.convert_to<double>();
    return out;
}

// Entry j spans the same line as phi_{j,n}; normalized so its squared
// L^2[0,1] norm is exactly 1/(2(n-j)+1), which makes it coincide with the
// radical-free explicit polynomial when the two constructions agree.
struct GramSchmidtResult {
    int n;
    std::vector<RationalPoly> entries;
    std::vector<Rational> norms_sq; // recomputed from the entries, not assumed
};

inline GramSchmidtResult gram_schmidt_oracle(int n) {
    if (n < 0) throw IndexError("gram_schmidt_oracle: negative degree");
    if (n > kMaxExactDegree)
        throw CapabilityError("gram_schmidt_oracle guards exact arithmetic at n <= " +
                              std::to_string(kMaxExactDegree));

    const int sz = n + 1;
    std::vector<std::vector<Rational>> G(sz, std::vector<Rational>(sz));
    for (int a = 0; a < sz; ++a)
        for (int b = 0; b < sz; ++b) G[a][b] = bernstein_pair_integral(a, n, b, n);

    // classical Gram-Schmidt in Bernstein coordinates, ascending j
    std::vector<std::vector<Rational>> v(sz, std::vector<Rational>(sz, Rational(0)));
    std::vector<std::vector<Rational>> Gv(sz); // G * v_i, kept for cheap projections
    std::vector<Rational> raw_nsq(sz);
    for (int j = 0; j < sz; ++j) {
        v[j][j] = 1;
        for (int i = 0; i < j; ++i) {
            Rational c = Gv[i][j] / raw_nsq[i]; // <B_j, v_i> / <v_i, v_i>
            for (int b = 0; b < sz; ++b) v[j][b] -= c * v[i][b];
        }
        Gv[j].assign(sz, Rational(0));
        for (int a = 0; a < sz; ++a)
            for (int b = 0; b < sz; ++b) Gv[j][a] += G[a][b] * v[j][b];
        raw_nsq[j] = 0;
        for (int a = 0; a < sz; ++a) raw_nsq[j] += v[j][a] * Gv[j][a];
    }

    GramSchmidtResult out{n, {}, {}};
    for (int j = 0; j < sz; ++j) {
        RationalPoly poly;
        for (int b = 0; b < sz; ++b)
            if (v[j][b] != 0) poly = poly + bernstein_poly_exact(b, n).scaled(v[j][b]);
        // rescale to squared norm 1/(2(n-j)+1); the factor is rational because
        // the target polynomial has rational coefficients on the same line
        Rational f2 = Rational(1, 2L * (n - j) + 1) / raw_nsq[j];
        poly = poly.scaled(rational_sqrt_exact(f2));
        out.norms_sq.push_back((poly * poly).integral01());
        out.entries.push_back(std::move(poly));
    }
    return out;
}

struct SturmLiouvilleData {
    int n, j;
    RationalPoly p_poly; // x(1-x)^2
    RationalPoly q_poly; // n(n+2)(1-x)
    Rational w;          // 1
    Rational lambda;     // (n-j+1)(j-n)
};

inline SturmLiouvilleData sturm_data(int n, int j) {
    if (n < 0 || j < 0 || j > n) throw IndexError("sturm_data: need 0 <= j <= n");
    RationalPoly x = RationalPoly::t();
    RationalPoly one_minus_x({Rational(1), Rational(-1)});
    SturmLiouvilleData d{n,
                         j,
                         x * one_minus_x.pow(2),
                         one_minus_x.scaled(Rational(static_cast<long>(n) * (n + 2))),
                         Rational(1),
                         Rational(static_cast<long>(n) - j + 1) * Rational(static_cast<long>(j) - n)};
    return d;
}

// d/dx[p phi'] + q phi + lambda phi on the radical-free phi; identically zero
// when lambda is the matching eigenvalue.  The lambda overload exists so the
// contrapositive (wrong eigenvalue, nonzero residual) can be exercised.
inline RationalPoly sturm_residual(int n, int j, const Rational& lambda) {
    if (n > kMaxExactDegree)
        throw CapabilityError("sturm_residual guards exact arithmetic at n <= " +
                              std::to_string(kMaxExactDegree));
    SturmLiouvilleData d = sturm_data(n, j);
    RationalPoly phi = onb_power_poly(n, j);
    RationalPoly lead = (d.p_poly * phi.derivative()).derivative();
    return lead + d.q_poly * phi + phi.scaled(lambda * d.w);
}

inline RationalPoly sturm_residual(int n, int j) {
    if (n > kMaxExactDegree)
        throw CapabilityError("sturm_residual guards exact arithmetic at n <= " +
                              std::to_string(kMaxExactDegree));
    return sturm_residual(n, j, sturm_data(n, j).lambda);
}

} // namespace orthobern

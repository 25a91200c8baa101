#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"

namespace orthobern {

// Exact integer paths stay fast up to here; larger degrees are refused.
inline constexpr int kMaxDegree = 64;

struct Interval {
    double a, b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!(a < b)) throw DomainError("interval requires a < b");
    }

    double width() const { return b - a; }
    bool contains(double x) const { return x >= a && x <= b; }
    double to_unit(double x) const { return (x - a) / (b - a); }
};

struct BasisSpec {
    int n;
    Interval interval;

    BasisSpec(int n_, Interval iv) : n(n_), interval(iv) {
        if (n < 0) throw IndexError("basis degree must be nonnegative");
        if (n > kMaxDegree)
            throw CapabilityError("basis degree " + std::to_string(n) + " exceeds the supported cap of " +
                                  std::to_string(kMaxDegree));
    }

    int size() const { return n + 1; }
};

struct BernsteinIndex {
    int j;
};

inline int checked_index(const BasisSpec& spec, int j) {
    if (j < 0 || j > spec.n)
        throw IndexError("index " + std::to_string(j) + " outside 0.." + std::to_string(spec.n));
    return j;
}

inline double checked_point(const Interval& iv, double x) {
    if (!iv.contains(x))
        throw DomainError("x outside interval [" + std::to_string(iv.a) + ", " + std::to_string(iv.b) + "]");
    return x;
}

// All n+1 Bernstein values B_{j,n}(x) by the de Casteljau-style recurrence:
// one pass, no explicit binomials, every intermediate nonnegative on [a,b].
inline std::vector<double> bernstein_eval_all(const BasisSpec& spec, double x) {
    checked_point(spec.interval, x);
    const double t = spec.interval.to_unit(x);
    const double u = 1.0 - t;
    std::vector<double> row(spec.size(), 0.0);
    row[0] = 1.0;
    for (int m = 1; m <= spec.n; ++m) {
        row[m] = t * row[m - 1];
        for (int i = m - 1; i >= 1; --i) row[i] = t * row[i - 1] + u * row[i];
        row[0] = u * row[0];
    }
    return row;
}

inline double bernstein_eval(const BasisSpec& spec, int j, double x) {
    checked_index(spec, j);
    return bernstein_eval_all(spec, x)[j];
}

inline double bernstein_eval(const BasisSpec& spec, BernsteinIndex j, double x) {
    return bernstein_eval(spec, j.j, x);
}

// Exact data behind one orthonormal basis function: the combination weights
// over classical Bernstein polynomials and the expanded power form of the
// radical-free polynomial (phi divided by its sqrt scale).
struct OrthoCoeffs {
    int n = 0;
    int j = 0;
    long radicand = 1; // 2(n-j)+1
    double scale = 1.0;
    std::vector<std::pair<int, Rational>> combo; // (k, weight w_k), k = 0..j; phi = scale * sum w_k B_{j-k,n-k}
    std::vector<Int> power;                      // ascending coefficients, integer-valued
};

namespace detail {

inline OrthoCoeffs make_ortho_coeffs(int n, int j) {
    OrthoCoeffs oc;
    oc.n = n;
    oc.j = j;
    oc.radicand = 2L * (n - j) + 1;
    oc.scale = std::sqrt(static_cast<double>(oc.radicand));

    std::vector<Int> inner(j + 1, Int(0)); // sum_k (-1)^k C(2n+1-k, j-k) C(j,k) t^{j-k}
    for (int k = 0; k <= j; ++k) {
        Int a = binomial(2L * n + 1 - k, j - k) * binomial(j, k);
        if (k % 2) a = -a;
        inner[j - k] += a;
        oc.combo.emplace_back(k, Rational(a, binomial(n - k, j - k)));
    }

    std::vector<Int> base(n - j + 1); // (1-t)^{n-j}
    for (int i = 0; i <= n - j; ++i) {
        base[i] = binomial(n - j, i);
        if (i % 2) base[i] = -base[i];
    }

    oc.power.assign(n + 1, Int(0));
    for (int ai = 0; ai <= j; ++ai)
        for (int bi = 0; bi <= n - j; ++bi) oc.power[ai + bi] += inner[ai] * base[bi];
    return oc;
}

struct OrthoTable {
    int n;
    std::vector<OrthoCoeffs> per_j;
};

inline const OrthoTable& onb_table(int n) {
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<const OrthoTable>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto tab = std::make_unique<OrthoTable>();
        tab->n = n;
        tab->per_j.reserve(n + 1);
        for (int j = 0; j <= n; ++j) tab->per_j.push_back(make_ortho_coeffs(n, j));
        it = cache.emplace(n, std::move(tab)).first;
    }
    return *it->second;
}

// Combination weights converted once per floating type.
template <class T>
inline const std::vector<std::vector<T>>& onb_weights(int n) {
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<const std::vector<std::vector<T>>>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) {
        const OrthoTable& tab = onb_table(n);
        auto w = std::make_unique<std::vector<std::vector<T>>>(n + 1);
        for (int j = 0; j <= n; ++j) {
            (*w)[j].reserve(j + 1);
            for (const auto& [k, wk] : tab.per_j[j].combo) (*w)[j].push_back(wk.template convert_to<T>());
        }
        it = cache.emplace(n, std::move(w)).first;
    }
    return *it->second;
}

// One evaluation pass in precision T.  Returns phi (scaled) and, per index, a
// running bound on the alternating-sum magnitude for conditioning checks.
template <class T>
inline void onb_pass(int n, const T& t, std::vector<T>& phi, std::vector<T>& cond) {
    using std::abs;
    using std::sqrt;
    const auto& w = onb_weights<T>(n);
    const OrthoTable& tab = onb_table(n);

    // full triangle of B_{i,m}(t) for m = 0..n
    std::vector<std::vector<T>> tri(n + 1);
    const T u = T(1) - t;
    tri[0] = {T(1)};
    for (int m = 1; m <= n; ++m) {
        tri[m].assign(m + 1, T(0));
        for (int i = 0; i < m; ++i) {
            tri[m][i] += u * tri[m - 1][i];
            tri[m][i + 1] += t * tri[m - 1][i];
        }
    }

    phi.assign(n + 1, T(0));
    cond.assign(n + 1, T(0));
    for (int j = 0; j <= n; ++j) {
        T acc = T(0), mag = T(0);
        for (int k = 0; k <= j; ++k) {
            const T& b = tri[n - k][j - k]; // nonnegative on [0,1]
            acc += w[j][k] * b;
            mag += abs(w[j][k]) * b;
        }
        const T s = sqrt(T(tab.per_j[j].radicand));
        phi[j] = s * acc;
        cond[j] = s * mag;
    }
}

using quad_float = boost::multiprecision::cpp_bin_float_quad;
using mp100_float = boost::multiprecision::cpp_bin_float_100;

// Relative accuracy demanded of every basis value.
inline constexpr double kEvalTol = 1e-13;

} // namespace detail

// All n+1 orthonormal values phi_{j,n}((x-a)/(b-a)) via the Bernstein
// combination.  The alternating weights cancel violently for j near n once n
// gets large (the double-precision worst case is ~1e-2 relative at n=20), so
// each evaluation carries a conditioning bound and re-runs in 113-bit, then
// 100-digit arithmetic for exactly the indices whose bound is too loose.
inline std::vector<double> onb_eval_all(const BasisSpec& spec, double x) {
    checked_point(spec.interval, x);
    const int n = spec.n;
    const double t = spec.interval.to_unit(x);

    std::vector<double> phi, cond;
    detail::onb_pass<double>(n, t, phi, cond);

    const double eps_d = std::numeric_limits<double>::epsilon();
    const double growth = 3.0 * n + 6.0;
    std::vector<int> redo;
    for (int j = 0; j <= n; ++j) {
        const double bound = cond[j] * eps_d * growth;
        if (bound > detail::kEvalTol * std::max(1.0, std::fabs(phi[j]))) redo.push_back(j);
    }
    if (redo.empty()) return phi;

    using detail::quad_float;
    using std::abs;
    using std::max;
    std::vector<quad_float> phi_q, cond_q;
    detail::onb_pass<quad_float>(n, quad_float(t), phi_q, cond_q);
    const quad_float eps_q = std::numeric_limits<quad_float>::epsilon();
    std::vector<int> redo2;
    for (int j : redo) {
        const quad_float bound = cond_q[j] * eps_q * growth;
        if (bound > detail::kEvalTol * max(quad_float(1), quad_float(abs(phi_q[j]))))
            redo2.push_back(j);
        else
            phi[j] = phi_q[j].convert_to<double>();
    }
    if (redo2.empty()) return phi;

    using detail::mp100_float;
    std::vector<mp100_float> phi_m, cond_m;
    detail::onb_pass<mp100_float>(n, mp100_float(t), phi_m, cond_m);
    for (int j : redo2) phi[j] = phi_m[j].convert_to<double>();
    return phi;
}

inline double onb_eval(const BasisSpec& spec, int j, double x) {
    checked_index(spec, j);
    return onb_eval_all(spec, x)[j];
}

inline const OrthoCoeffs& onb_coeffs(int n, int j) {
    if (n < 0 || j < 0 || j > n) throw IndexError("onb_coeffs: need 0 <= j <= n");
    if (n > kMaxDegree)
        throw CapabilityError("basis degree " + std::to_string(n) + " exceeds the supported cap of " +
                              std::to_string(kMaxDegree));
    return detail::onb_table(n).per_j[j];
}

// Reference evaluator for the explicit product form: sqrt scale times
// (1-t)^{n-j} times the alternating binomial sum.  Same escalation scheme;
// exists so the two published forms can be checked against each other.
inline double onb_eval_explicit(int n, int j, double t) {
    if (n < 0 || j < 0 || j > n) throw IndexError("onb_eval_explicit: need 0 <= j <= n");
    if (n > kMaxDegree) throw CapabilityError("degree exceeds cap");
    if (t < 0.0 || t > 1.0) throw DomainError("t outside [0,1]");

    const double growth = 3.0 * n + 6.0;
    std::vector<Int> a(j + 1); // a_k = C(2n+1-k, j-k) C(j,k), sign (-1)^k applied in the loop
    for (int k = 0; k <= j; ++k) a[k] = binomial(2L * n + 1 - k, j - k) * binomial(j, k);

    auto pass = [&](auto zero) -> std::pair<double, bool> {
        using T = decltype(zero);
        using std::abs;
        using std::max;
        using std::sqrt;
        const T tt(t);
        T acc = T(0), mag = T(0), tp = T(1); // tp = t^{j-k} built from k = j downward
        for (int k = j; k >= 0; --k) {
            T term = T(a[k]) * tp;
            acc += (k % 2) ? -term : term;
            mag += term;
            tp *= tt;
        }
        T fac = T(1);
        const T u = T(1) - tt;
        for (int i = 0; i < n - j; ++i) fac *= u;
        const T s = sqrt(T(2L * (n - j) + 1));
        const T val = s * fac * acc;
        const T bound = s * fac * mag * std::numeric_limits<T>::epsilon() * T(growth);
        const bool ok = !(bound > T(detail::kEvalTol) * max(T(1), T(abs(val))));
        return {val.template convert_to<double>(), ok};
    };

    // plain double first (hand-rolled: the lambda above needs the mp interface)
    {
        double acc = 0, mag = 0, tp = 1;
        for (int k = j; k >= 0; --k) {
            const double term = a[k].convert_to<double>() * tp;
            acc += (k % 2) ? -term : term;
            mag += term;
            tp *= t;
        }
        double fac = 1;
        for (int i = 0; i < n - j; ++i) fac *= 1.0 - t;
        const double s = std::sqrt(2.0 * (n - j) + 1.0);
        const double val = s * fac * acc;
        const double bound = s * fac * mag * std::numeric_limits<double>::epsilon() * growth;
        if (!(bound > detail::kEvalTol * std::max(1.0, std::fabs(val)))) return val;
    }
    auto [vq, okq] = pass(detail::quad_float(0));
    if (okq) return vq;
    return pass(detail::mp100_float(0)).first;
}

inline std::vector<double> onb_eval_all_unit(int n, double t) {
    return onb_eval_all(BasisSpec(n, Interval(0.0, 1.0)), t);
}

} // namespace orthobern

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace orthobern {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact binomial coefficient; 0 outside the triangle.  Arbitrary precision so
// the C(2n+1-k, j-k) weights stay exact past the 64-bit overflow point.
inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // exact at every step: r is C(n-k+i, i)
    }
    return r;
}

// Integer square root that insists on exactness.
inline Int isqrt_exact(const Int& v) {
    if (v < 0) throw DomainError("isqrt_exact: negative argument");
    Int r = boost::multiprecision::sqrt(v);
    if (r * r != v) throw DomainError("isqrt_exact: not a perfect square");
    return r;
}

// Rational square root of a nonnegative rational whose numerator and
// denominator are perfect squares.
inline Rational rational_sqrt_exact(const Rational& v) {
    return Rational(isqrt_exact(numerator(v)), isqrt_exact(denominator(v)));
}

// Univariate polynomial with exact rational coefficients, ascending powers.
// Canonical form: trailing zeros trimmed, zero polynomial == empty list.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RationalPoly constant(const Rational& v) { return RationalPoly({v}); }

    // t, as a building block
    static RationalPoly t() { return RationalPoly({Rational(0), Rational(1)}); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational eval(const Rational& t) const {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    RationalPoly operator+(const RationalPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return RationalPoly(std::move(r));
    }

    RationalPoly operator-(const RationalPoly& o) const {
        std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return RationalPoly(std::move(r));
    }

    RationalPoly operator*(const RationalPoly& o) const {
        if (c_.empty() || o.c_.empty()) return RationalPoly();
        std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return RationalPoly(std::move(r));
    }

    RationalPoly scaled(const Rational& s) const {
        if (s == 0) return RationalPoly();
        std::vector<Rational> r(c_);
        for (auto& v : r) v *= s;
        return RationalPoly(std::move(r));
    }

    RationalPoly derivative() const {
        if (c_.size() <= 1) return RationalPoly();
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return RationalPoly(std::move(r));
    }

    // definite integral over [0,1]
    Rational integral01() const {
        Rational acc = 0;
        for (std::size_t i = 0; i < c_.size(); ++i) acc += c_[i] / Rational(static_cast<long>(i + 1));
        return acc;
    }

    bool operator==(const RationalPoly& o) const { return c_ == o.c_; }
    bool operator!=(const RationalPoly& o) const { return c_ != o.c_; }

    // integer power, for (1-t)^m and friends
    RationalPoly pow(int m) const {
        RationalPoly acc = constant(1);
        for (int i = 0; i < m; ++i) acc = acc * (*this);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

} // namespace orthobern

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "qharness/poly.hpp"
#include "qharness/rational.hpp"

namespace qharness {

/// Truncated formal power series sum_k a_k z^k. Only the first `order()`
/// coefficients are meaningful; every operation returns a result whose order
/// is the largest prefix determined by its operands.
class PowerSeries {
public:
    PowerSeries() = default;
    PowerSeries(std::vector<Rational> coeffs, std::size_t order) : coeffs_(std::move(coeffs)) {
        coeffs_.resize(order);
    }
    explicit PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

    /// A polynomial viewed as a series known exactly through `order` terms.
    static PowerSeries from_poly(const Poly& p, std::size_t order) { return {p.coeffs(), order}; }

    std::size_t order() const noexcept { return coeffs_.size(); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    const Rational& operator[](std::size_t k) const {
        if (k >= coeffs_.size())
            throw Error(ErrorCode::InsufficientOrder, "coefficient beyond valid order", k);
        return coeffs_[k];
    }

    PowerSeries truncated(std::size_t order) const {
        std::vector<Rational> v(coeffs_.begin(), coeffs_.begin() + std::min(order, coeffs_.size()));
        return PowerSeries(std::move(v));
    }

    /// Index of the first nonzero coefficient, or order() if all are zero.
    std::size_t valuation() const {
        std::size_t k = 0;
        while (k < coeffs_.size() && coeffs_[k].is_zero()) ++k;
        return k;
    }

    /// Multiplication by z^k; the valid order grows by k.
    PowerSeries shifted(std::size_t k) const {
        std::vector<Rational> v(k);
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return PowerSeries(std::move(v));
    }

    /// Division by z^k; the dropped coefficients must be exactly zero.
    PowerSeries unshifted(std::size_t k) const {
        if (k > coeffs_.size())
            throw Error(ErrorCode::InsufficientOrder, "cannot divide by z^k beyond valid order", k);
        for (std::size_t i = 0; i < k; ++i)
            if (!coeffs_[i].is_zero())
                throw Error(ErrorCode::DegenerateDenominator, "nonzero coefficient below z^k", i);
        return PowerSeries(std::vector<Rational>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
    }

    PowerSeries scaled(const Rational& c) const {
        std::vector<Rational> v(coeffs_);
        for (auto& a : v) a *= c;
        return PowerSeries(std::move(v));
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<Rational> v(n);
        for (std::size_t k = 0; k < n; ++k) v[k] = a.coeffs_[k] + b.coeffs_[k];
        return PowerSeries(std::move(v));
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + b.scaled(Rational(-1)); }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        std::vector<Rational> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j < n; ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return PowerSeries(std::move(v));
    }
    friend PowerSeries operator*(const Rational& c, const PowerSeries& s) { return s.scaled(c); }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

/// num / den through the common valid order.
inline PowerSeries series_div(const PowerSeries& num, const PowerSeries& den) {
    if (den.order() == 0 || den[0].is_zero())
        throw Error(ErrorCode::ZeroConstantTerm, "denominator has zero constant term");
    const std::size_t n = std::min(num.order(), den.order());
    const Rational inv0 = den[0].inverse();
    std::vector<Rational> r(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rational acc = num[k];
        for (std::size_t j = 1; j <= k; ++j) acc -= den[j] * r[k - j];
        r[k] = acc * inv0;
    }
    return PowerSeries(std::move(r));
}

/// Square root with positive constant term, by Newton iteration r <- (r + s/r)/2
/// with the working order doubled at each step.
inline PowerSeries series_sqrt(const PowerSeries& s) {
    if (s.order() == 0 || s[0].is_zero())
        throw Error(ErrorCode::ZeroConstantTerm, "square root of a series with zero constant term");
    Rational root;
    if (!exact_sqrt(s[0], root))
        throw Error(ErrorCode::NonSquareConstant, "constant term " + s[0].str() + " has no rational square root");

    const std::size_t target = s.order();
    PowerSeries r(std::vector<Rational>{root});
    const Rational half(1, 2);
    for (std::size_t prec = 1; prec < target;) {
        prec = std::min(2 * prec, target);
        PowerSeries rp(r.coeffs(), prec);
        r = (rp + series_div(s.truncated(prec), rp)).scaled(half);
    }
    return r;
}

/// Laurent-style quotient: strips the common power of z shared by numerator
/// and denominator before dividing. Used for transforms written in w = 1/z.
inline PowerSeries series_div_laurent(const PowerSeries& num, const PowerSeries& den) {
    const std::size_t v = den.valuation();
    if (v >= den.order())
        throw Error(ErrorCode::DegenerateDenominator, "denominator vanishes through its valid order");
    return series_div(num.unshifted(v), den.unshifted(v));
}

} // namespace qharness

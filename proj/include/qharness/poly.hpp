#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "qharness/rational.hpp"

namespace qharness {

/// Dense univariate polynomial in x over the rationals. Coefficient i is the
/// coefficient of x^i; trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients and degree() == -1 (standing in for -inf).
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
    static Poly monomial(std::size_t n, const Rational& c = Rational(1)) {
        std::vector<Rational> v(n + 1);
        v[n] = c;
        return Poly(std::move(v));
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of x^i; zero beyond the degree.
    Rational operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational eval(const Rational& x) const {
        Rational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
        return Poly(std::move(d));
    }

    /// Multiplication by x^k.
    Poly shift_mul_x(std::size_t k = 1) const {
        if (is_zero()) return {};
        std::vector<Rational> v(k);
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return Poly(std::move(v));
    }

    Poly scaled(const Rational& c) const {
        if (c.is_zero()) return {};
        std::vector<Rational> v(coeffs_);
        for (auto& a : v) a *= c;
        return Poly(std::move(v));
    }

    Poly& operator+=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    /// this += c * o, without materializing the scaled copy.
    Poly& add_scaled(const Poly& o, const Rational& c) {
        if (c.is_zero() || o.is_zero()) return *this;
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += c * o.coeffs_[i];
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return a.scaled(Rational(-1)); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
        if (p.is_zero()) return os << "0";
        bool first = true;
        for (std::size_t i = p.coeffs_.size(); i-- > 0;) {
            if (p.coeffs_[i].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << p.coeffs_[i] << ")";
            if (i > 0) os << "x^" << i;
        }
        return os;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

} // namespace qharness

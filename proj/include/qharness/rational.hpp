#pragma once

// Exact rational scalar backed by GMP. Values are always canonical: the
// denominator is positive and coprime to the numerator.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "qharness/error.hpp"

namespace qharness {

class Rational {
public:
    Rational() = default;
    Rational(long n) : value_(n) {}                 // NOLINT(google-explicit-constructor)
    Rational(int n) : value_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den) {
        if (den == 0) throw Error(ErrorCode::InvalidParameter, "zero denominator");
        value_ = mpq_class(mpz_class(num), mpz_class(den));
        value_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw Error(ErrorCode::InvalidParameter, "zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Parses "p/q" or an integer "p". Decimal and exponent notation are rejected.
    static Rational parse(std::string_view text) {
        auto is_int = [](std::string_view s) {
            if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
            if (s.empty()) return false;
            for (char c : s)
                if (c < '0' || c > '9') return false;
            return true;
        };
        const auto slash = text.find('/');
        std::string_view num = text.substr(0, slash);
        std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        if (!is_int(num) || den.empty() || !is_int(den) || den.front() == '-' || den.front() == '+')
            throw Error(ErrorCode::ParseError, "not a rational of the form p/q: '" + std::string(text) + "'");
        std::string n(num);
        if (n.front() == '+') n.erase(0, 1);
        mpz_class zn(n, 10), zd(std::string(den), 10);
        if (zd == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        return Rational(zn, zd);
    }

    /// Canonical "num/den"; integers keep the "/1" suffix.
    std::string str() const { return value_.get_num().get_str() + "/" + value_.get_den().get_str(); }

    const mpq_class& get() const noexcept { return value_; }
    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }

    int sign() const noexcept { return sgn(value_); }
    bool is_zero() const noexcept { return sign() == 0; }
    double to_double() const { return value_.get_d(); }

    Rational abs() const { return Rational(mpq_class(::abs(value_))); }
    Rational inverse() const {
        if (is_zero()) throw Error(ErrorCode::InvalidParameter, "inverse of zero");
        return Rational(mpq_class(1 / value_));
    }
    Rational pow(unsigned k) const {
        Rational r(1);
        for (unsigned i = 0; i < k; ++i) r *= *this;
        return r;
    }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw Error(ErrorCode::InvalidParameter, "division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

inline Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f, mpz_class(1));
}

/// Rational square root when one exists (numerator and denominator are both
/// perfect squares); the nonnegative root is returned.
inline bool exact_sqrt(const Rational& q, Rational& root) {
    if (q.sign() < 0) return false;
    const mpz_class num = q.numerator(), den = q.denominator();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(rn, rd);
    return true;
}

} // namespace qharness

#pragma once

// The algebra of polynomial sequences. A sequence (p_0, p_1, ...) stands for
// the linear map on polynomials sending x^n to p_n; the product below is
// composition of those maps, with the left factor applied last.
//
// Values are truncated: a PolySeq holds the first `length()` entries and a
// declared degree excess d with deg(p_n) <= n + d. Composition needs the left
// factor to cover every index the right factor can reach, and refuses to
// truncate silently.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qharness/error.hpp"
#include "qharness/poly.hpp"
#include "qharness/power_series.hpp"
#include "qharness/rational.hpp"

namespace qharness {

class PolySeq {
public:
    PolySeq() = default;

    /// Validates deg(entries[n]) <= n + excess for every stored entry.
    PolySeq(std::vector<Poly> entries, int excess) : entries_(std::move(entries)), excess_(excess) {
        for (std::size_t n = 0; n < entries_.size(); ++n)
            if (!entries_[n].is_zero() && entries_[n].degree() > static_cast<int>(n) + excess_)
                throw Error(ErrorCode::ExcessViolation,
                            "entry " + std::to_string(n) + " has degree " + std::to_string(entries_[n].degree()) +
                                " above declared excess " + std::to_string(excess_),
                            n);
    }

    static PolySeq zero(std::size_t n, int excess = 0) { return {std::vector<Poly>(n), excess}; }

    std::size_t length() const noexcept { return entries_.size(); }
    int excess() const noexcept { return excess_; }
    const std::vector<Poly>& entries() const noexcept { return entries_; }
    const Poly& operator[](std::size_t n) const {
        if (n >= entries_.size())
            throw Error(ErrorCode::InsufficientLength, "entry beyond truncation length", n);
        return entries_[n];
    }

    PolySeq truncated(std::size_t n) const {
        if (n > entries_.size())
            throw Error(ErrorCode::InsufficientLength,
                        "cannot extend a sequence of length " + std::to_string(entries_.size()) + " to " +
                            std::to_string(n));
        return {std::vector<Poly>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)), excess_};
    }

    /// Same entries under a larger declared excess.
    PolySeq with_excess(int excess) const { return {entries_, excess}; }

    PolySeq scaled(const Rational& c) const {
        std::vector<Poly> e;
        e.reserve(entries_.size());
        for (const auto& p : entries_) e.push_back(p.scaled(c));
        return {std::move(e), excess_};
    }

    /// Entrywise sum over the common prefix.
    friend PolySeq operator+(const PolySeq& a, const PolySeq& b) {
        const std::size_t n = std::min(a.length(), b.length());
        std::vector<Poly> e(n);
        for (std::size_t k = 0; k < n; ++k) e[k] = a.entries_[k] + b.entries_[k];
        return {std::move(e), std::max(a.excess_, b.excess_)};
    }
    friend PolySeq operator-(const PolySeq& a, const PolySeq& b) {
        const std::size_t n = std::min(a.length(), b.length());
        std::vector<Poly> e(n);
        for (std::size_t k = 0; k < n; ++k) e[k] = a.entries_[k] - b.entries_[k];
        return {std::move(e), std::max(a.excess_, b.excess_)};
    }
    friend PolySeq operator*(const Rational& c, const PolySeq& p) { return p.scaled(c); }

    /// Equality of the stored entries; the declared excess is only a bound and
    /// does not take part.
    friend bool operator==(const PolySeq& a, const PolySeq& b) { return a.entries_ == b.entries_; }

    friend std::ostream& operator<<(std::ostream& os, const PolySeq& p) {
        os << "[";
        for (std::size_t n = 0; n < p.entries_.size(); ++n) os << (n ? ", " : "") << p.entries_[n];
        return os << "]";
    }

private:
    std::vector<Poly> entries_;
    int excess_ = 0;
};

enum class Builder { E, F, D, D1 };

/// First n entries of the identity E = (1, x, x^2, ...), F = (x, x^2, ...),
/// D = (0, 1, x, ...) or the derivative D1 = (0, 1, 2x, 3x^2, ...).
inline PolySeq build(Builder kind, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "builder length must be positive");
    std::vector<Poly> e(n);
    int excess = 0;
    for (std::size_t k = 0; k < n; ++k) {
        switch (kind) {
        case Builder::E: e[k] = Poly::monomial(k); break;
        case Builder::F: e[k] = Poly::monomial(k + 1); break;
        case Builder::D:
            if (k > 0) e[k] = Poly::monomial(k - 1);
            break;
        case Builder::D1:
            if (k > 0) e[k] = Poly::monomial(k - 1, Rational(static_cast<long>(k)));
            break;
        }
    }
    switch (kind) {
    case Builder::E: excess = 0; break;
    case Builder::F: excess = 1; break;
    case Builder::D:
    case Builder::D1: excess = -1; break;
    }
    return {std::move(e), excess};
}

/// Sequence of the operator "multiply by q": (q, xq, x^2 q, ...).
inline PolySeq multiplication_by(const Poly& q, std::size_t n) {
    std::vector<Poly> e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = q.shift_mul_x(k);
    return {std::move(e), std::max(q.degree(), 0)};
}

/// Length the left factor must have for compose(P, q).
inline std::size_t required_left_length(const PolySeq& q) {
    const long need = static_cast<long>(q.length()) + std::max(q.excess(), 0);
    return static_cast<std::size_t>(need);
}

/// Linear action sum_j [p]_j P_j.
inline Poly apply(const PolySeq& op, const Poly& p) {
    if (p.degree() >= static_cast<int>(op.length()))
        throw Error(ErrorCode::InsufficientLength,
                    "polynomial of degree " + std::to_string(p.degree()) + " needs " +
                        std::to_string(p.degree() + 1) + " entries, sequence has " + std::to_string(op.length()));
    Poly r;
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) r.add_scaled(op.entries()[j], p.coeffs()[j]);
    return r;
}

/// Product P∘Q: entry k is P applied to q_k. Result has Q's length and excess
/// excess(P) + excess(Q).
inline PolySeq compose(const PolySeq& p, const PolySeq& q) {
    if (p.length() < required_left_length(q))
        throw Error(ErrorCode::InsufficientLength,
                    "left factor has length " + std::to_string(p.length()) + ", right factor of length " +
                        std::to_string(q.length()) + " and excess " + std::to_string(q.excess()) + " needs " +
                        std::to_string(required_left_length(q)));
    std::vector<Poly> e;
    e.reserve(q.length());
    for (const auto& qk : q.entries()) e.push_back(apply(p, qk));
    return {std::move(e), p.excess() + q.excess()};
}

/// compose(P, Q) after cutting Q down to the longest prefix P can serve.
inline PolySeq compose_fitted(const PolySeq& p, const PolySeq& q) {
    const long room = static_cast<long>(p.length()) - std::max(q.excess(), 0);
    if (room <= 0)
        throw Error(ErrorCode::InsufficientLength, "left factor too short for any entry of the right factor");
    return compose(p, q.truncated(std::min(q.length(), static_cast<std::size_t>(room))));
}

/// k-fold product. Positive excess shortens the valid length by the excess at
/// every step; power(P, 0) is the identity at P's length.
inline PolySeq power(const PolySeq& p, unsigned k) {
    if (p.length() == 0) throw Error(ErrorCode::InsufficientLength, "power of an empty sequence");
    if (k == 0) return build(Builder::E, p.length());
    PolySeq result = p;
    for (unsigned i = 1; i < k; ++i) {
        if (p.excess() <= 0) {
            result = compose(p, result);
        } else {
            const long next = static_cast<long>(result.length()) - p.excess();
            if (next <= 0)
                throw Error(ErrorCode::InsufficientLength,
                            "length " + std::to_string(p.length()) + " exhausted after " + std::to_string(i) +
                                " factors of excess " + std::to_string(p.excess()));
            result = compose(result, p.truncated(static_cast<std::size_t>(next)));
        }
    }
    return result;
}

/// Two-sided inverse of a degree-preserving sequence, from
/// q_n = (x^n - sum_{j<n} a_{n,j} q_j) / a_{n,n}.
inline PolySeq invert(const PolySeq& p) {
    if (p.excess() != 0)
        throw Error(ErrorCode::NotDegreePreserving, "inverse needs declared excess 0, got " + std::to_string(p.excess()));
    std::vector<Poly> q(p.length());
    for (std::size_t n = 0; n < p.length(); ++n) {
        const Poly& pn = p[n];
        if (pn.degree() != static_cast<int>(n))
            throw Error(ErrorCode::NotDegreePreserving, "entry " + std::to_string(n) + " is not of exact degree n", n);
        Poly acc = Poly::monomial(n);
        for (std::size_t j = 0; j < n; ++j) acc.add_scaled(q[j], -pn[j]);
        q[n] = acc.scaled(pn[n].inverse());
    }
    return {std::move(q), 0};
}

/// phi(D) = (c0, c0 x + c1, c0 x^2 + c1 x + c2, ...).
inline PolySeq phi_of_D(const PowerSeries& c, std::size_t n) {
    if (c.order() < n)
        throw Error(ErrorCode::InsufficientOrder,
                    "series of order " + std::to_string(c.order()) + " cannot fill " + std::to_string(n) + " entries");
    std::vector<Poly> e(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> v(k + 1);
        for (std::size_t j = 0; j <= k; ++j) v[k - j] = c[j];
        e[k] = Poly(std::move(v));
    }
    return {std::move(e), 0};
}

struct Mismatch {
    std::size_t entry;
    std::size_t coeff_index;
};

/// First differing coefficient of a and b among the first `n` entries.
inline std::optional<Mismatch> first_mismatch(const PolySeq& a, const PolySeq& b, std::size_t n) {
    if (a.length() < n || b.length() < n)
        throw Error(ErrorCode::InsufficientLength, "comparison beyond truncation length");
    for (std::size_t k = 0; k < n; ++k) {
        const Poly& pa = a[k];
        const Poly& pb = b[k];
        if (pa == pb) continue;
        const std::size_t m = static_cast<std::size_t>(std::max(pa.degree(), pb.degree())) + 1;
        for (std::size_t i = 0; i < m; ++i)
            if (pa[i] != pb[i]) return Mismatch{k, i};
    }
    return std::nullopt;
}

inline bool equal_prefix(const PolySeq& a, const PolySeq& b, std::size_t n) { return !first_mismatch(a, b, n); }

/// Largest absolute coefficient over the first n entries.
inline Rational max_norm(const PolySeq& p, std::size_t n) {
    Rational m;
    for (std::size_t k = 0; k < std::min(n, p.length()); ++k)
        for (const auto& c : p[k].coeffs()) m = std::max(m, c.abs());
    return m;
}

/// Checks D1^{m+1} F - F D1^{m+1} = (m+1) D1^m through the valid length.
inline bool check_D1_identity(unsigned m, std::size_t n) {
    if (n < m + 3) throw Error(ErrorCode::InvalidParameter, "identity check needs n >= m + 3");
    const PolySeq d1 = build(Builder::D1, n);
    const PolySeq lhs_power = power(d1, m + 1);
    const PolySeq f = build(Builder::F, n + 1);
    const PolySeq left = compose_fitted(lhs_power, f);
    const PolySeq right = compose_fitted(f, lhs_power);
    const PolySeq rhs = power(d1, m).scaled(Rational(static_cast<long>(m + 1)));
    const std::size_t len = std::min({left.length(), right.length(), rhs.length()});
    return equal_prefix(left - right, rhs, len);
}

} // namespace qharness

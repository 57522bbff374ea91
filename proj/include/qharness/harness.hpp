#pragma once

// Generic quadratic-harness pipeline. For fixed parameters and time t > 0 the
// commutator H_t = A_t F - F A_t is the unique solution with h_0 = 0 of
//
//   H F - gamma F H = E + theta H + eta (F - tH) + tau H^2 + sigma (F - tH)^2
//                     + (1 - gamma) t H^2,
//
// solved here entry by entry. Everything else (generator, martingale
// polynomials, transition operators, the harness element X) is derived from H.

#include <cstddef>
#include <string>
#include <vector>

#include "qharness/error.hpp"
#include "qharness/poly.hpp"
#include "qharness/poly_seq.hpp"
#include "qharness/rational.hpp"

namespace qharness {

struct HarnessParams {
    Rational eta;
    Rational theta;
    Rational sigma;
    Rational tau;
    Rational gamma;

    /// Outside sigma, tau >= 0 and sigma*tau != 1 the recurrence still runs, but
    /// uniqueness of its solution is not guaranteed.
    bool out_of_hypothesis() const {
        return sigma.sign() < 0 || tau.sign() < 0 || sigma * tau == Rational(1);
    }

    /// True unless gamma <= 1 + 2 sqrt(sigma tau) can be certified exactly.
    bool gamma_warning() const {
        if (gamma <= Rational(1)) return false;
        const Rational g1 = gamma - Rational(1);
        return !(g1 * g1 <= Rational(4) * sigma * tau);
    }
};

namespace detail {

/// Runs the H recurrence at any t >= 0. At t = 0 it reduces entrywise to the
/// quadratic harness equation for X.
inline PolySeq harness_recurrence(const HarnessParams& p, const Rational& t, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "depth must be positive");
    const Rational quad = p.sigma * t * t + (Rational(1) - p.gamma) * t + p.tau;
    const Rational base_pivot = Rational(1) + p.sigma * t;
    const Rational lin = p.theta - t * p.eta;
    const Rational cross = p.gamma - p.sigma * t;

    std::vector<Poly> h(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Poly& hk = h[k];
        const Rational pivot = base_pivot - hk[k + 1] * quad;
        if (pivot.is_zero())
            throw Error(ErrorCode::ZeroPivot, "coefficient of h_" + std::to_string(k + 1) + " vanishes", k + 1);

        // x^k + eta x^{k+1} + sigma x^{k+2}
        std::vector<Rational> lead(k + 3);
        lead[k] = Rational(1);
        lead[k + 1] = p.eta;
        lead[k + 2] = p.sigma;
        Poly rhs(std::move(lead));
        rhs.add_scaled(hk, lin);
        rhs.add_scaled(hk.shift_mul_x(), cross);
        if (!quad.is_zero())
            for (std::size_t j = 0; j <= k; ++j) rhs.add_scaled(h[j], quad * hk[j]);
        h[k + 1] = rhs.scaled(pivot.inverse());
    }
    return {std::move(h), 1};
}

inline void require_positive_time(const Rational& t) {
    if (t.sign() <= 0) throw Error(ErrorCode::InvalidParameter, "time must be positive, got " + t.str());
}

} // namespace detail

/// H_t = (h_0, ..., h_{n-1}) with h_0 = 0 and deg h_k <= k + 1.
inline PolySeq solve_H(const HarnessParams& p, const Rational& t, std::size_t n) {
    detail::require_positive_time(t);
    return detail::harness_recurrence(p, t, n);
}

/// The harness element X obtained directly from the quadratic harness equation
/// (the H recurrence at t = 0).
inline PolySeq solve_X(const HarnessParams& p, std::size_t n) { return detail::harness_recurrence(p, Rational(0), n); }

/// A_t = sum_k F^k H D^{k+1}, i.e. a_n = sum_{k<n} x^k h_{n-1-k}. The result is
/// one entry longer than H since a_n only reads h_0..h_{n-1}.
inline PolySeq generator_from_H(const PolySeq& h) {
    if (h.excess() > 1) throw Error(ErrorCode::ExcessViolation, "H must have excess at most 1");
    const std::size_t n = h.length() + 1;
    std::vector<Poly> a(n);
    for (std::size_t k = 1; k < n; ++k) a[k] = a[k - 1].shift_mul_x() + h[k - 1];
    return {std::move(a), 0};
}

/// m_n = (F - tH)^n applied to 1; each m_n must have exact degree n.
inline PolySeq martingale_polys(const PolySeq& h, const Rational& t, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "depth must be positive");
    if (h.length() + 1 < n)
        throw Error(ErrorCode::InsufficientLength,
                    "H of length " + std::to_string(h.length()) + " yields at most " +
                        std::to_string(h.length() + 1) + " martingale polynomials");
    std::vector<Poly> m(n);
    m[0] = Poly::constant(Rational(1));
    for (std::size_t k = 1; k < n; ++k) {
        m[k] = m[k - 1].shift_mul_x();
        m[k].add_scaled(apply(h, m[k - 1]), -t);
        if (m[k].degree() != static_cast<int>(k))
            throw Error(ErrorCode::DegenerateLeadingCoefficient,
                        "m_" + std::to_string(k) + " lost its leading coefficient at t = " + t.str(), k);
    }
    return {std::move(m), 0};
}

/// M_t from the parameters; M_0 is the identity.
inline PolySeq martingale_polys(const HarnessParams& p, const Rational& t, std::size_t n) {
    if (t.is_zero()) return build(Builder::E, n);
    return martingale_polys(solve_H(p, t, n), t, n);
}

/// P_{s,t} = M_s M_t^{-1} for 0 <= s <= t.
inline PolySeq transition(const HarnessParams& p, const Rational& s, const Rational& t, std::size_t n) {
    detail::require_positive_time(t);
    if (s.sign() < 0 || s > t)
        throw Error(ErrorCode::InvalidParameter, "transition needs 0 <= s <= t, got s = " + s.str() + ", t = " + t.str());
    if (s == t) return build(Builder::E, n);
    return compose(martingale_polys(p, s, n), invert(martingale_polys(p, t, n)));
}

/// X = M_t^{-1} H_t M_t. One entry shorter than its inputs because H has
/// excess 1.
inline PolySeq recover_X(const PolySeq& h, const PolySeq& m) {
    return compose_fitted(invert(m), compose_fitted(h, m));
}

} // namespace qharness

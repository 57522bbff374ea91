#pragma once

// Closed forms expressed as power series in the derivative D1. D1 lowers the
// degree by one, so entry n of any such series only sees the terms k <= n and
// every truncated exponential below is exact.

#include <cstddef>
#include <vector>

#include "qharness/error.hpp"
#include "qharness/poly_seq.hpp"
#include "qharness/rational.hpp"

namespace qharness {

/// H = sum_{k>=1} c_k / k! D1^k, stored as c_1, c_2, ...; coefficients past the
/// end are zero.
struct D1Series {
    std::vector<Rational> coeffs;

    Rational at(std::size_t k) const { return k >= 1 && k <= coeffs.size() ? coeffs[k - 1] : Rational(0); }
};

namespace detail {

/// sum_k w(k) D1^k for k in [k0, n), entrywise exact. Declared excess -k0 for k0 >= 1.
template <typename Weight>
PolySeq d1_series(std::size_t n, std::size_t k0, Weight&& weight) {
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "length must be positive");
    const PolySeq d1 = build(Builder::D1, n);
    PolySeq acc = PolySeq::zero(n, k0 == 0 ? 0 : -static_cast<int>(k0));
    PolySeq pw = power(d1, static_cast<unsigned>(k0));
    for (std::size_t k = k0; k < n; ++k) {
        const Rational w = weight(k);
        if (!w.is_zero()) acc = (acc + w * pw).with_excess(acc.excess());
        pw = compose(d1, pw);
    }
    return acc;
}

} // namespace detail

/// Realizes sum c_k / k! D1^k on n entries.
inline PolySeq realize(const D1Series& s, std::size_t n) {
    return detail::d1_series(n, 1, [&](std::size_t k) { return s.at(k) / factorial(static_cast<unsigned>(k)); });
}

enum class ExpDrop { None, E, EAndLinear };

/// e^{c D1} with the first 0, 1 or 2 terms of the exponential removed.
inline PolySeq exp_D1(const Rational& c, std::size_t n, ExpDrop drop) {
    const std::size_t k0 = drop == ExpDrop::None ? 0 : drop == ExpDrop::E ? 1 : 2;
    return detail::d1_series(n, k0, [&](std::size_t k) {
        return c.pow(static_cast<unsigned>(k)) / factorial(static_cast<unsigned>(k));
    });
}

/// A = sum_m c_m / (m+1)! D1^{m+1}, the generator whose commutator with F is
/// the series H.
inline PolySeq generator_from_D1Series(const D1Series& s, std::size_t n) {
    return detail::d1_series(n, 2, [&](std::size_t k) { return s.at(k - 1) / factorial(static_cast<unsigned>(k)); });
}

struct ClosedForm {
    PolySeq H;
    PolySeq A;
};

/// Centered Poisson harness (gamma = 1, eta = sigma = tau = 0):
///   H = (e^{theta D1} - E)/theta,  A = (e^{theta D1} - E - theta D1)/theta^2.
inline ClosedForm poisson(const Rational& theta, std::size_t n) {
    if (theta.is_zero()) throw Error(ErrorCode::InvalidParameter, "Poisson closed form needs theta != 0");
    return {exp_D1(theta, n, ExpDrop::E).scaled(theta.inverse()),
            exp_D1(theta, n, ExpDrop::EAndLinear).scaled((theta * theta).inverse())};
}

/// H series of the Poisson harness, c_k = theta^{k-1}.
inline D1Series poisson_series(const Rational& theta, std::size_t n) {
    D1Series s;
    for (std::size_t k = 1; k <= n; ++k) s.coeffs.push_back(theta.pow(static_cast<unsigned>(k - 1)));
    return s;
}

/// Quantum Bessel (classical bi-Poisson) harness (gamma = 1, sigma = tau = 0) at
/// time t, with lambda = theta - t eta:
///   H = (E + eta F)(e^{lambda D1} - E)/lambda,
///   A = (E + eta F)(e^{lambda D1} - E - lambda D1)/lambda^2.
inline ClosedForm quantum_bessel(const Rational& eta, const Rational& theta, const Rational& t, std::size_t n) {
    if (t.sign() <= 0) throw Error(ErrorCode::InvalidParameter, "time must be positive, got " + t.str());
    const Rational lambda = theta - t * eta;
    if (lambda.is_zero())
        throw Error(ErrorCode::ResonantTime, "theta = t * eta at t = " + t.str() + "; closed form is undefined");
    const PolySeq weight = multiplication_by(Poly{Rational(1), eta}, n).with_excess(1);
    return {compose(weight, exp_D1(lambda, n, ExpDrop::E)).scaled(lambda.inverse()),
            compose(weight, exp_D1(lambda, n, ExpDrop::EAndLinear)).scaled((lambda * lambda).inverse())};
}

} // namespace qharness

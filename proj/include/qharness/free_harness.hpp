#pragma once

// Free quadratic harnesses (gamma = -sigma tau). The commutator is
//
//   H_t = (E + eta F + sigma F^2) phi_t(D) D / (1 + sigma t),
//
// where phi_t(z) = sum_{k>=1} c_k z^{k-1} is the root with phi_t(0) = 1 of
//
//   (z^2 + eta z + sigma)(t + tau) phi^2
//     + ((theta - t eta) z - 2 t sigma - sigma tau - 1) phi + t sigma + 1 = 0.
//
// Under sigma tau < 1 and 1 + alpha beta > 0 the c_k are the moments of a
// probability measure nu_t; the transform layer relates it to the law pi of X_t.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qharness/error.hpp"
#include "qharness/harness.hpp"
#include "qharness/poly.hpp"
#include "qharness/poly_seq.hpp"
#include "qharness/power_series.hpp"
#include "qharness/rational.hpp"

namespace qharness {

class FreeParams {
public:
    FreeParams(Rational eta, Rational theta, Rational sigma, Rational tau)
        : eta_(std::move(eta)), theta_(std::move(theta)), sigma_(std::move(sigma)), tau_(std::move(tau)) {
        if (sigma_.sign() < 0 || tau_.sign() < 0)
            throw Error(ErrorCode::InvalidParameter, "sigma and tau must be nonnegative");
        if (sigma_ * tau_ == Rational(1)) throw Error(ErrorCode::InvalidParameter, "sigma * tau must differ from 1");
        const Rational d = Rational(1) - sigma_ * tau_;
        alpha_ = (eta_ + theta_ * sigma_) / d;
        beta_ = (eta_ * tau_ + theta_) / d;
    }

    const Rational& eta() const noexcept { return eta_; }
    const Rational& theta() const noexcept { return theta_; }
    const Rational& sigma() const noexcept { return sigma_; }
    const Rational& tau() const noexcept { return tau_; }
    const Rational& alpha() const noexcept { return alpha_; }
    const Rational& beta() const noexcept { return beta_; }
    Rational gamma() const { return -(sigma_ * tau_); }

    HarnessParams harness() const { return {eta_, theta_, sigma_, tau_, gamma()}; }

    /// sigma tau < 1 and 1 + alpha beta > 0.
    bool measure_hypotheses() const {
        return sigma_ * tau_ < Rational(1) && (Rational(1) + alpha_ * beta_).sign() > 0;
    }

private:
    Rational eta_, theta_, sigma_, tau_;
    Rational alpha_, beta_;
};

struct MomentSequence {
    std::vector<Rational> moments;

    friend bool operator==(const MomentSequence&, const MomentSequence&) = default;
};

namespace detail {

inline void require_measure_hypotheses(const FreeParams& fp) {
    if (!fp.measure_hypotheses())
        throw Error(ErrorCode::HypothesisViolation, "measure layer needs sigma*tau < 1 and 1 + alpha*beta > 0");
}

/// 1 + eta x + sigma x^2
inline Poly weight_poly(const FreeParams& fp) { return Poly{Rational(1), fp.eta(), fp.sigma()}; }

} // namespace detail

/// Coefficients c_1..c_n of phi_t as a series of order n (index k holds c_{k+1}).
/// The recursion contains c_{k+1} on both sides through the sigma-sum; it is
/// solved for c_{k+1}, which leaves the factor (1 - sigma tau)/(1 + sigma t).
inline PowerSeries free_coeffs(const FreeParams& fp, const Rational& t, std::size_t n) {
    detail::require_positive_time(t);
    if (n == 0) throw Error(ErrorCode::InvalidParameter, "order must be positive");
    const Rational lin = fp.theta() - fp.eta() * t;
    const Rational quad = t + fp.tau();
    const Rational denom_inv = (Rational(1) - fp.sigma() * fp.tau()).inverse();

    std::vector<Rational> c(n + 1); // 1-based
    c[1] = Rational(1);
    if (n >= 2) c[2] = fp.beta();
    for (std::size_t k = 2; k + 1 <= n; ++k) {
        Rational s1, s2, s3;
        for (std::size_t j = 1; j + 1 <= k; ++j) s1 += c[j] * c[k - j];
        for (std::size_t j = 0; j + 1 <= k; ++j) s2 += c[j + 1] * c[k - j];
        for (std::size_t j = 0; j + 2 <= k; ++j) s3 += c[j + 2] * c[k - j];
        c[k + 1] = (lin * c[k] + quad * (s1 + fp.eta() * s2 + fp.sigma() * s3)) * denom_inv;
    }
    return PowerSeries(std::vector<Rational>(c.begin() + 1, c.end()));
}

/// Coefficients of the quadratic whose root is phi_t, as polynomials in z:
/// qa phi^2 + qb phi + qc = 0.
struct PhiQuadratic {
    Poly qa, qb, qc;
};

inline PhiQuadratic phi_quadratic(const FreeParams& fp, const Rational& t) {
    const Rational tp = t + fp.tau();
    return {Poly{fp.sigma() * tp, fp.eta() * tp, tp},
            Poly{-(Rational(2) * t * fp.sigma() + fp.sigma() * fp.tau() + Rational(1)), fp.theta() - t * fp.eta()},
            Poly{t * fp.sigma() + Rational(1)}};
}

/// Residual series qa phi^2 + qb phi + qc for a truncated phi.
inline PowerSeries phi_residual(const FreeParams& fp, const Rational& t, const PowerSeries& phi) {
    const auto q = phi_quadratic(fp, t);
    const std::size_t n = phi.order();
    return PowerSeries::from_poly(q.qa, n) * phi * phi + PowerSeries::from_poly(q.qb, n) * phi +
           PowerSeries::from_poly(q.qc, n);
}

/// Closed-form root with phi_t(0) = 1 for sigma tau < 1, expanded through order n.
/// Written as 2(1 + t sigma) / (A + sqrt(A^2 - 4B)), the same root as the
/// minus-sign form but without dividing by z^2 + eta z + sigma, which vanishes
/// at z = 0 when sigma = 0.
inline PowerSeries phi_closed_form(const FreeParams& fp, const Rational& t, std::size_t n) {
    detail::require_positive_time(t);
    if (!(fp.sigma() * fp.tau() < Rational(1)))
        throw Error(ErrorCode::HypothesisViolation, "closed form is expanded on the sigma*tau < 1 branch only");
    const Rational st1 = Rational(1) + t * fp.sigma();
    const Poly a{Rational(2) * t * fp.sigma() + fp.sigma() * fp.tau() + Rational(1), t * fp.eta() - fp.theta()};
    const Poly b = (Poly{fp.sigma(), fp.eta(), Rational(1)}).scaled(st1 * (t + fp.tau()));
    const Poly disc = a * a - b.scaled(Rational(4));
    const PowerSeries root = series_sqrt(PowerSeries::from_poly(disc, n));
    const PowerSeries den = PowerSeries::from_poly(a, n) + root;
    return series_div(PowerSeries::from_poly(Poly::constant(Rational(2) * st1), n), den);
}

/// H_t from the closed form, with h_0 = 0 and excess 1.
inline PolySeq free_H(const FreeParams& fp, const Rational& t, std::size_t n) {
    const PowerSeries c = free_coeffs(fp, t, n);
    const PolySeq phid = compose(phi_of_D(c, n), build(Builder::D, n));
    const Rational scale = (Rational(1) + fp.sigma() * t).inverse();
    const PolySeq weight = multiplication_by(detail::weight_poly(fp).scaled(scale), n);
    return compose(weight.with_excess(2), phid);
}

/// A_t = (E + eta F + sigma F^2) D1 phi_t(D) D / (1 + sigma t).
inline PolySeq free_generator(const FreeParams& fp, const Rational& t, std::size_t n) {
    const PowerSeries c = free_coeffs(fp, t, n);
    const PolySeq phid = compose(phi_of_D(c, n), build(Builder::D, n));
    const PolySeq inner = compose(build(Builder::D1, n), phid);
    const Rational scale = (Rational(1) + fp.sigma() * t).inverse();
    const PolySeq weight = multiplication_by(detail::weight_poly(fp).scaled(scale), n);
    return compose(weight.with_excess(2), inner);
}

/// Moments m_0..m_k of nu_t: m_{j-1} = c_j(t).
inline MomentSequence measure_moments(const FreeParams& fp, const Rational& t, std::size_t k) {
    detail::require_measure_hypotheses(fp);
    return {free_coeffs(fp, t, k + 1).coeffs()};
}

/// Leading principal Hankel determinants det[m_{i+j}]_{0<=i,j<=L}, L = 0..floor(K/2).
inline std::vector<Rational> hankel_check(const MomentSequence& ms) {
    const auto& m = ms.moments;
    if (m.size() < 3) throw Error(ErrorCode::InvalidParameter, "Hankel check needs at least three moments");
    std::vector<Rational> dets;
    const std::size_t top = (m.size() - 1) / 2;
    for (std::size_t l = 0; l <= top; ++l) {
        const std::size_t sz = l + 1;
        std::vector<std::vector<Rational>> a(sz, std::vector<Rational>(sz));
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = 0; j < sz; ++j) a[i][j] = m[i + j];
        Rational det(1);
        for (std::size_t col = 0; col < sz && !det.is_zero(); ++col) {
            std::size_t piv = col;
            while (piv < sz && a[piv][col].is_zero()) ++piv;
            if (piv == sz) {
                det = Rational(0);
                break;
            }
            if (piv != col) {
                std::swap(a[piv], a[col]);
                det = -det;
            }
            det *= a[col][col];
            const Rational inv = a[col][col].inverse();
            for (std::size_t r = col + 1; r < sz; ++r) {
                if (a[r][col].is_zero()) continue;
                const Rational f = a[r][col] * inv;
                for (std::size_t cc = col; cc < sz; ++cc) a[r][cc] -= f * a[col][cc];
            }
        }
        dets.push_back(det);
    }
    return dets;
}

/// Cauchy-Stieltjes transforms as series in w = 1/z: coefficient k+1 of each
/// series is the k-th moment.
struct TransformLayer {
    PowerSeries g_nu;
    PowerSeries g_pi;        // division route from G_nu
    PowerSeries g_pi_direct; // closed form through the square root
    MomentSequence pi_moments;
    Rational a, b, c;        // nu(dx) = (a x^2 + b x + c) pi(dx)
    bool routes_agree = false;
    bool weight_relation = false;
};

inline TransformLayer transform_layer(const FreeParams& fp, const Rational& t, std::size_t k) {
    detail::require_positive_time(t);
    detail::require_measure_hypotheses(fp);
    const Rational& eta = fp.eta();
    const Rational& theta = fp.theta();
    const Rational& sigma = fp.sigma();
    const Rational& tau = fp.tau();
    const Rational tp = t + tau;

    TransformLayer out;
    out.a = tau / (t * tp);
    out.b = theta / tp;
    out.c = t / tp;

    // G_nu(w) = w phi(w); enough terms that pi's moments reach index k.
    const std::size_t order = k + 4;
    const PowerSeries phi = free_coeffs(fp, t, order);
    out.g_nu = phi.shifted(1);

    // G_pi = (G_nu + a z + b) / (a z^2 + b z + c); times w^2 over w^2:
    //      = (w^2 G_nu + a w + b w^2) / (a + b w + c w^2).
    const std::size_t big = order + 3;
    const PowerSeries num = out.g_nu.shifted(2) + PowerSeries::from_poly(Poly{Rational(0), out.a, out.b}, big);
    const PowerSeries den = PowerSeries::from_poly(Poly{out.a, out.b, out.c}, big);
    out.g_pi = series_div_laurent(num, den);

    // Direct route. With Q1 = sigma + eta w + w^2, Q2 = tau + theta t w + t^2 w^2,
    // L = (1 + sigma tau + 2 sigma t) + (t eta - theta) w and S = sqrt(w^2 Delta(1/w)):
    //   G_pi = [2 w (tau + theta t w) Q1 + t w^3 (L - S)] / (2 Q1 Q2).
    const Rational alpha = fp.alpha(), beta = fp.beta();
    const Rational shift = (alpha + sigma * beta) * t + beta + alpha * tau;
    const Poly lin{Rational(1) - sigma * tau, -shift};
    const Rational c0 = Rational(4) * (Rational(1) + sigma * t) * tp * (Rational(1) + alpha * beta);
    const Poly disc = lin * lin - Poly::monomial(2, c0);
    const PowerSeries s = series_sqrt(PowerSeries::from_poly(disc, big));
    const Poly q1{sigma, eta, Rational(1)};
    const Poly q2{tau, theta * t, t * t};
    const Poly l{Rational(1) + sigma * tau + Rational(2) * sigma * t, t * eta - theta};
    const PowerSeries lead = PowerSeries::from_poly((Poly{Rational(0), tau, theta * t} * q1).scaled(Rational(2)), big);
    const PowerSeries tail = (PowerSeries::from_poly(l, big) - s).shifted(3).scaled(t);
    const PowerSeries dnum = lead + tail.truncated(big);
    const PowerSeries dden = PowerSeries::from_poly((q1 * q2).scaled(Rational(2)), big);
    out.g_pi_direct = series_div_laurent(dnum, dden);

    const std::size_t common = std::min(out.g_pi.order(), out.g_pi_direct.order());
    if (common < k + 2)
        throw Error(ErrorCode::InsufficientOrder, "transform expansion too short for the requested moments");
    out.routes_agree = out.g_pi.truncated(common) == out.g_pi_direct.truncated(common);

    std::vector<Rational> pm(k + 1);
    for (std::size_t j = 0; j <= k; ++j) pm[j] = out.g_pi[j + 1];
    out.pi_moments = {std::move(pm)};

    out.weight_relation = true;
    for (std::size_t j = 0; j + 2 <= k; ++j) {
        const auto& m = out.pi_moments.moments;
        if (out.a * m[j + 2] + out.b * m[j + 1] + out.c * m[j] != phi[j]) out.weight_relation = false;
    }
    return out;
}

struct GrowthBound {
    Rational M;
    bool holds = false;
    std::size_t first_violation = 0; // 0 when the bound holds
};

/// Smallest integer M >= 1 with M^e >= r.
inline Rational integer_root_ceiling(const Rational& r, unsigned e) {
    if (r <= Rational(1)) return Rational(1);
    mpz_class n = r.numerator(), d = r.denominator();
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    mpz_class root;
    mpz_root(root.get_mpz_t(), q.get_mpz_t(), e);
    Rational m(root, mpz_class(1));
    while (m.pow(e) < r) m += Rational(1);
    return m;
}

/// |c_k| k^2 <= M^{k-2} for 3 <= k <= coeffs.size(), with coeffs[i] = c_{i+1}.
/// M is the larger of `floor`, 1, and the least integer meeting the bound at
/// k = 3..6.
inline GrowthBound check_growth_bound(std::span<const Rational> coeffs, const Rational& floor) {
    if (coeffs.size() < 7) throw Error(ErrorCode::InvalidParameter, "growth bound needs at least c_1..c_7");
    GrowthBound g;
    g.M = std::max(Rational(1), floor);
    for (std::size_t k = 3; k <= 6; ++k) {
        const Rational need = coeffs[k - 1].abs() * Rational(static_cast<long>(k * k));
        g.M = std::max(g.M, integer_root_ceiling(need, static_cast<unsigned>(k - 2)));
    }
    g.holds = true;
    Rational mp = g.M; // M^{k-2}
    for (std::size_t k = 3; k <= coeffs.size(); ++k, mp *= g.M) {
        if (coeffs[k - 1].abs() * Rational(static_cast<long>(k * k)) > mp) {
            g.holds = false;
            g.first_violation = k;
            break;
        }
    }
    return g;
}

/// Bound on |c_k| with M at least 4A + (24|c_2| + 175)B, where
/// A = |theta - eta t| / |1 - sigma tau| and
/// B = (t + tau)(1 + |eta| + sigma) / |1 - sigma tau|.
inline GrowthBound growth_bound(const FreeParams& fp, const Rational& t, std::size_t n) {
    if (n < 7) throw Error(ErrorCode::InvalidParameter, "growth bound needs n >= 7");
    const PowerSeries c = free_coeffs(fp, t, n);
    const Rational d = (Rational(1) - fp.sigma() * fp.tau()).abs();
    const Rational a = (fp.theta() - fp.eta() * t).abs() / d;
    const Rational b = (t + fp.tau()) * (Rational(1) + fp.eta().abs() + fp.sigma()) / d;
    const Rational floor = Rational(4) * a + (Rational(24) * c[1].abs() + Rational(175)) * b;
    return check_growth_bound(c.coeffs(), floor);
}

} // namespace qharness

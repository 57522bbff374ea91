#pragma once

// Exact verification of the polynomial-process and quadratic-harness axioms
// for the objects produced by harness.hpp. Every check compares two sequences
// coefficient by coefficient over the prefix where both are fully determined
// by the truncated inputs, and records that prefix length.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qharness/harness.hpp"
#include "qharness/poly_seq.hpp"

namespace qharness {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::size_t verified_length = 0;
    std::optional<Mismatch> first_failure;
    std::string context; // which time or time triple failed first
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool out_of_hypothesis = false;
    bool gamma_warning = false;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline CheckResult compare_sequences(std::string name, const PolySeq& a, const PolySeq& b, std::size_t len,
                                     std::string context = {}) {
    CheckResult r{std::move(name), true, len, std::nullopt, {}};
    if (auto mm = first_mismatch(a, b, len)) {
        r.pass = false;
        r.first_failure = mm;
        r.context = std::move(context);
    }
    return r;
}

/// Folds several instances of one check: fails on the first failing instance,
/// and the verified length is the shortest among them.
inline void merge_into(CheckResult& acc, const CheckResult& r, bool first) {
    if (first) {
        acc = r;
        return;
    }
    acc.verified_length = std::min(acc.verified_length, r.verified_length);
    if (acc.pass && !r.pass) {
        acc.pass = false;
        acc.first_failure = r.first_failure;
        acc.context = r.context;
    }
}

inline std::size_t common_length(std::initializer_list<std::size_t> lens) { return std::min(lens); }

} // namespace detail

/// LHS - RHS of  H T - gamma T H = E + theta H + eta T + tau H^2 + sigma T^2,
/// with T = F - tH.
inline PolySeq residual_commutation(const HarnessParams& p, const Rational& t, const PolySeq& h) {
    const std::size_t n = h.length();
    const PolySeq f = build(Builder::F, n);
    const PolySeq tt = f - t * h;
    const PolySeq ht = compose_fitted(h, tt);
    const PolySeq th = compose_fitted(tt, h);
    const PolySeq hh = compose_fitted(h, h);
    const PolySeq t2 = compose_fitted(tt, tt);
    const PolySeq lhs = ht - p.gamma * th;
    const PolySeq rhs = build(Builder::E, n) + p.theta * h + p.eta * tt + p.tau * hh + p.sigma * t2;
    return lhs - rhs;
}

/// LHS - RHS of the form with T eliminated:
///   H F - gamma F H = E + theta H + eta (F - tH) + tau H^2 + sigma (F - tH)^2
///                     + (1 - gamma) t H^2.
inline PolySeq residual_equivalent(const HarnessParams& p, const Rational& t, const PolySeq& h) {
    const std::size_t n = h.length();
    const PolySeq f = build(Builder::F, n + 1);
    const PolySeq hf = compose_fitted(h, f);
    const PolySeq fh = compose(f, h);
    const PolySeq hh = compose_fitted(h, h);
    const PolySeq ft = f.truncated(n) - t * h;
    const PolySeq ft2 = compose_fitted(ft, ft);
    const PolySeq lhs = hf - p.gamma * fh;
    const PolySeq rhs = build(Builder::E, n) + p.theta * h + p.eta * ft + p.tau * hh + p.sigma * ft2 +
                        ((Rational(1) - p.gamma) * t) * hh;
    return lhs - rhs;
}

/// LHS - RHS of  X F - gamma F X = E + eta F + theta X + sigma F^2 + tau X^2.
inline PolySeq residual_quadratic_harness(const HarnessParams& p, const PolySeq& x) {
    const std::size_t n = x.length();
    const PolySeq f = build(Builder::F, n + 2);
    const PolySeq xf = compose_fitted(x, f);
    const PolySeq fx = compose(f, x);
    const PolySeq xx = compose_fitted(x, x);
    const PolySeq f2 = power(f, 2);
    const PolySeq lhs = xf - p.gamma * fx;
    const PolySeq rhs = build(Builder::E, n) + p.eta * f + p.theta * x + p.sigma * f2 + p.tau * xx;
    return lhs - rhs;
}

/// A F - F A - H, which must vanish for A = generator_from_H(H).
inline PolySeq residual_generator_commutator(const PolySeq& a, const PolySeq& h) {
    const PolySeq f = build(Builder::F, a.length());
    return compose_fitted(a, f) - compose(f, a) - h;
}

/// sum_k (F + tX)^k (E - FD) D^k, entry n being (F + tX)^n applied to 1.
inline PolySeq transition_from_X(const PolySeq& x, const Rational& t) {
    const std::size_t n = x.length() + 1;
    std::vector<Poly> e(n);
    e[0] = Poly::constant(Rational(1));
    for (std::size_t k = 1; k < n; ++k) {
        e[k] = e[k - 1].shift_mul_x();
        e[k].add_scaled(apply(x, e[k - 1]), t);
    }
    return {std::move(e), 0};
}

inline CheckResult check_zero(std::string name, const PolySeq& residual, std::string context = {}) {
    return detail::compare_sequences(std::move(name), residual, PolySeq::zero(residual.length()),
                                     residual.length(), std::move(context));
}

/// Commutation check for a given H, exposed so that a perturbed H can be fed in.
inline CheckResult check_commutation(const HarnessParams& p, const Rational& t, const PolySeq& h) {
    return check_zero("commutation", residual_commutation(p, t, h), "t=" + t.str());
}

/// ||(P_{t-h,t} - E)/h - A_t|| at step h, exact max-norm over n entries.
inline Rational generator_limit_residual(const HarnessParams& p, const Rational& t, const Rational& step,
                                         std::size_t n) {
    const PolySeq pt = transition(p, t - step, t, n);
    const PolySeq a = generator_from_H(solve_H(p, t, n));
    const PolySeq r = step.inverse() * (pt - build(Builder::E, n)) - a;
    return max_norm(r, n);
}

/// Runs every check for the given times (strictly positive) at depth n.
inline VerificationReport verify(const HarnessParams& p, const std::vector<Rational>& times, std::size_t n) {
    if (n < 3) throw Error(ErrorCode::InvalidParameter, "verification needs depth >= 3");
    std::set<Rational> ts;
    for (const auto& t : times) {
        detail::require_positive_time(t);
        ts.insert(t);
    }
    if (ts.empty()) throw Error(ErrorCode::InvalidParameter, "verification needs at least one time");

    struct AtTime {
        PolySeq h, m, minv, a, x;
    };
    std::map<Rational, AtTime> at;
    for (const auto& t : ts) {
        AtTime s;
        s.h = solve_H(p, t, n);
        s.m = martingale_polys(s.h, t, n);
        s.minv = invert(s.m);
        s.a = generator_from_H(s.h);
        s.x = recover_X(s.h, s.m);
        at.emplace(t, std::move(s));
    }

    std::vector<Rational> grid{Rational(0)};
    grid.insert(grid.end(), ts.begin(), ts.end());
    auto m_at = [&](const Rational& s) { return s.is_zero() ? build(Builder::E, n) : at.at(s).m; };
    std::map<std::pair<std::size_t, std::size_t>, PolySeq> trans;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
            trans.emplace(std::pair{i, j}, compose(m_at(grid[i]), at.at(grid[j]).minv));

    auto pair_ctx = [&](std::size_t i, std::size_t j) { return "s=" + grid[i].str() + ",t=" + grid[j].str(); };

    VerificationReport report;
    report.out_of_hypothesis = p.out_of_hypothesis();
    report.gamma_warning = p.gamma_warning();

    CheckResult unit, mart, semi, mpol;
    bool first = true;
    for (const auto& [ij, pst] : trans) {
        const auto [i, j] = ij;
        const PolySeq one{{Poly::constant(Rational(1))}, 0};
        const PolySeq ident{{Poly::constant(Rational(1)), Poly::monomial(1)}, 0};
        detail::merge_into(unit, detail::compare_sequences("unit", pst, one, 1, pair_ctx(i, j)), first);
        detail::merge_into(mart, detail::compare_sequences("martingale", pst, ident, 2, pair_ctx(i, j)), first);
        const PolySeq lhs = compose(pst, at.at(grid[j]).m);
        detail::merge_into(mpol, detail::compare_sequences("martingale_polynomials", m_at(grid[i]), lhs, n,
                                                           pair_ctx(i, j)),
                           first);
        first = false;
    }

    first = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j)
            for (std::size_t k = j + 1; k < grid.size(); ++k) {
                const PolySeq lhs = compose(trans.at({i, j}), trans.at({j, k}));
                detail::merge_into(semi,
                                   detail::compare_sequences("semigroup", lhs, trans.at({i, k}), n,
                                                             "s=" + grid[i].str() + ",t=" + grid[j].str() +
                                                                 ",u=" + grid[k].str()),
                                   first);
                first = false;
            }
    if (first) semi = CheckResult{"semigroup", true, n, std::nullopt, "fewer than three time points"};

    CheckResult comm, equiv, harness, quad, x2p, h2g, xind, limit;
    first = true;
    const PolySeq x_direct = solve_X(p, n - 1);
    for (const auto& [t, s] : at) {
        const std::string ctx = "t=" + t.str();
        detail::merge_into(comm, check_commutation(p, t, s.h), first);
        detail::merge_into(equiv, check_zero("commutation_equivalent", residual_equivalent(p, t, s.h), ctx), first);

        // P_{0,t} F = (F + tX) P_{0,t}
        const PolySeq p0t = s.minv;
        const PolySeq f = build(Builder::F, n);
        const PolySeq lhs = compose_fitted(p0t, f);
        const PolySeq rhs = compose_fitted(f.truncated(s.x.length()) + t * s.x, p0t);
        detail::merge_into(harness,
                           detail::compare_sequences("harness", lhs, rhs, std::min(lhs.length(), rhs.length()), ctx),
                           first);

        detail::merge_into(quad, check_zero("quadratic_harness", residual_quadratic_harness(p, s.x), ctx), first);

        const PolySeq rebuilt = transition_from_X(s.x, t);
        detail::merge_into(x2p, detail::compare_sequences("x_to_transition", rebuilt, s.minv, n, ctx), first);

        detail::merge_into(h2g, check_zero("generator_commutator", residual_generator_commutator(s.a, s.h), ctx),
                           first);

        detail::merge_into(xind,
                           detail::compare_sequences("x_time_independence", s.x, x_direct, x_direct.length(), ctx),
                           first);
        first = false;
    }

    // Generator limit: the residual must shrink at first order when the step halves.
    const Rational h0(1, 16), h1(1, 32), ratio(3, 5);
    first = true;
    for (const auto& t : ts) {
        if (t < h0) continue;
        const Rational r0 = generator_limit_residual(p, t, h0, n);
        const Rational r1 = generator_limit_residual(p, t, h1, n);
        CheckResult r{"generator_limit", r1 <= ratio * r0, n, std::nullopt, {}};
        if (!r.pass) {
            r.first_failure = Mismatch{0, 0};
            r.context = "t=" + t.str() + ": |R(1/32)| = " + r1.str() + " > 3/5 |R(1/16)| = " + (ratio * r0).str();
        }
        detail::merge_into(limit, r, first);
        first = false;
    }
    if (first) limit = CheckResult{"generator_limit", true, 0, std::nullopt, "no time >= 1/16"};

    report.checks = {unit, mart, semi, comm, equiv, harness, quad, mpol, x2p, limit, h2g, xind};
    return report;
}

} // namespace qharness

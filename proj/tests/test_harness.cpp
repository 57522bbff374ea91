#include <gtest/gtest.h>

#include "test_support.hpp"

namespace qharness {
namespace {

using testing::catalan;
using testing::free_bm;

// h_n = sum_j C_j t^j x^{n-1-2j} for free Brownian motion.
Poly free_bm_h(const Rational& t, std::size_t n) {
    Poly h;
    for (std::size_t j = 0; n >= 1 && 2 * j <= n - 1; ++j)
        h = h + Poly::monomial(n - 1 - 2 * j, catalan(static_cast<unsigned>(j)) * t.pow(static_cast<unsigned>(j)));
    return h;
}

// E[K^j] for K ~ Poisson(lambda), through Stirling numbers of the second kind.
std::vector<Rational> poisson_raw_moments(const Rational& lambda, std::size_t n) {
    std::vector<std::vector<Rational>> s(n, std::vector<Rational>(n));
    s[0][0] = Rational(1);
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = 1; i <= j; ++i)
            s[j][i] = Rational(static_cast<long>(i)) * s[j - 1][i] + s[j - 1][i - 1];
    std::vector<Rational> out(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) out[j] += s[j][i] * lambda.pow(static_cast<unsigned>(i));
    return out;
}

Rational binom(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b, mpz_class(1));
}

// E[f(x + theta K - (t - s)/theta)] with K ~ Poisson((t - s)/theta^2), as a
// polynomial in x.
Poly poisson_expectation(const Poly& f, const Rational& theta, const Rational& s, const Rational& t) {
    const Rational lambda = (t - s) / (theta * theta);
    const Rational drift = (t - s) / theta;
    const auto mom = poisson_raw_moments(lambda, f.coeffs().size() + 1);
    const Poly base{-drift, Rational(1)};
    Poly out;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        Poly bp = Poly::constant(Rational(1));
        std::vector<Poly> pw{bp};
        for (std::size_t k = 1; k <= i; ++k) pw.push_back(pw.back() * base);
        for (std::size_t j = 0; j <= i; ++j) {
            const Rational w = f[i] * binom(static_cast<unsigned>(i), static_cast<unsigned>(j)) *
                               theta.pow(static_cast<unsigned>(j)) * mom[j];
            out.add_scaled(pw[i - j], w);
        }
    }
    return out;
}

HarnessParams reference() { return testing::reference_free().harness(); }

TEST(SolveH, FreeBrownianMotion) {
    const std::size_t n = 12;
    for (const Rational& t : {Rational(1), Rational(1, 3), Rational(5, 2)}) {
        const PolySeq h = solve_H(free_bm(), t, n);
        EXPECT_EQ(h.excess(), 1);
        for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(h[k], free_bm_h(t, k)) << "t=" << t << " k=" << k;
    }
    const PolySeq h = solve_H(free_bm(), Rational(1), 6);
    EXPECT_EQ(h[5], (Poly{Rational(2), Rational(0), Rational(1), Rational(0), Rational(1)}));
}

TEST(SolveH, FirstEntry) {
    const HarnessParams p = reference();
    for (const Rational& t : {Rational(1, 3), Rational(2)}) {
        const PolySeq h = solve_H(p, t, 4);
        EXPECT_TRUE(h[0].is_zero());
        const Poly expect = (Poly{Rational(1), p.eta, p.sigma}).scaled((Rational(1) + p.sigma * t).inverse());
        EXPECT_EQ(h[1], expect);
        for (std::size_t k = 1; k < 4; ++k) EXPECT_LE(h[k].degree(), static_cast<int>(k) + 1);
    }
}

TEST(SolveH, Errors) {
    try {
        solve_H(HarnessParams{0, 0, Rational(-1), 0, 0}, Rational(1), 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroPivot);
        ASSERT_TRUE(e.index());
        EXPECT_EQ(*e.index(), 1u);
    }
    EXPECT_THROW(solve_H(free_bm(), Rational(0), 4), Error);
    EXPECT_THROW(solve_H(free_bm(), Rational(-1, 2), 4), Error);
}

TEST(Generator, FreeBrownianMotion) {
    const PolySeq a = generator_from_H(solve_H(free_bm(), Rational(1), 6));
    ASSERT_EQ(a.length(), 7u);
    EXPECT_TRUE(a[0].is_zero());
    EXPECT_TRUE(a[1].is_zero());
    EXPECT_EQ(a[2], Poly::constant(Rational(1)));
    EXPECT_EQ(a[3], Poly::monomial(1, Rational(2)));
    EXPECT_EQ(a[4], (Poly{Rational(1), Rational(0), Rational(3)}));
}

TEST(Generator, CommutatorWithMultiplication) {
    const HarnessParams p = reference();
    const PolySeq h = solve_H(p, Rational(1, 2), 10);
    const PolySeq a = generator_from_H(h);
    const PolySeq f = build(Builder::F, a.length());
    const PolySeq comm = compose_fitted(a, f) - compose(f, a);
    EXPECT_TRUE(equal_prefix(comm, h, h.length()));
}

TEST(Martingale, FreeBrownianMotionMatchesChebyshevRecurrence) {
    const std::size_t n = 10;
    for (const Rational& t : {Rational(1, 3), Rational(2)}) {
        const PolySeq m = martingale_polys(free_bm(), t, n);
        const auto oracle = testing::free_bm_martingale_oracle(t, n);
        for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(m[k], oracle[k]) << k;
    }
    EXPECT_EQ(martingale_polys(free_bm(), Rational(0), 5), build(Builder::E, 5));
}

TEST(Martingale, PoissonExpectationOracle) {
    const std::size_t n = 8;
    for (const Rational& theta : {Rational(1), Rational(1, 2), Rational(-3, 2)}) {
        const HarnessParams p{0, theta, 0, 0, 1};
        const Rational s(1, 3), t(5, 4);
        const PolySeq ms = martingale_polys(p, s, n);
        const PolySeq mt = martingale_polys(p, t, n);
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_EQ(poisson_expectation(mt[k], theta, s, t), ms[k]) << "theta=" << theta << " k=" << k;
        // from time 0, starting at x
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_EQ(poisson_expectation(mt[k], theta, Rational(0), t), Poly::monomial(k)) << k;
    }
}

TEST(Transition, FreeBrownianMotion) {
    const Rational s(1, 4), t(1);
    const PolySeq pst = transition(free_bm(), s, t, 5);
    EXPECT_EQ(pst[0], Poly::constant(Rational(1)));
    EXPECT_EQ(pst[1], Poly::monomial(1));
    EXPECT_EQ(pst[2], (Poly{t - s, Rational(0), Rational(1)}));
    EXPECT_EQ(pst[3], (Poly{Rational(0), Rational(2) * (t - s), Rational(0), Rational(1)}));
    EXPECT_EQ(transition(free_bm(), t, t, 5), build(Builder::E, 5));
    EXPECT_THROW(transition(free_bm(), t, s, 5), Error);
}

TEST(Transition, Semigroup) {
    const HarnessParams p = reference();
    const std::size_t n = 8;
    const Rational r(1, 5), s(1, 2), t(3, 2);
    EXPECT_EQ(compose(transition(p, r, s, n), transition(p, s, t, n)), transition(p, r, t, n));
    EXPECT_EQ(compose(transition(p, Rational(0), s, n), transition(p, s, t, n)), transition(p, Rational(0), t, n));
}

TEST(RecoverX, IndependentOfTimeAndEqualToDirectSolve) {
    const std::size_t n = 9;
    for (const HarnessParams& p : {reference(), free_bm(), HarnessParams{Rational(1, 3), Rational(-1, 2), 0, 0, 1}}) {
        const PolySeq direct = solve_X(p, n - 1);
        for (const Rational& t : {Rational(1, 3), Rational(1), Rational(7, 4)}) {
            const PolySeq x = recover_X(solve_H(p, t, n), martingale_polys(p, t, n));
            ASSERT_EQ(x.length(), n - 1);
            EXPECT_EQ(x, direct) << "t=" << t;
        }
    }
    // free Brownian motion: X is H at t = 0, i.e. (0, 1, x, x^2, ...)
    const PolySeq x = solve_X(free_bm(), 5);
    EXPECT_EQ(x[3], Poly::monomial(2));
}

TEST(Verify, AllChecksPass) {
    const std::vector<Rational> times{Rational(1, 3), Rational(1, 2), Rational(1)};
    for (const HarnessParams& p : {reference(), free_bm()}) {
        const auto report = verify(p, times, 10);
        ASSERT_EQ(report.checks.size(), 12u);
        for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.context;
        EXPECT_TRUE(report.all_pass());
        EXPECT_FALSE(report.out_of_hypothesis);
        EXPECT_FALSE(report.gamma_warning);
        ASSERT_NE(report.find("commutation"), nullptr);
        EXPECT_GE(report.find("commutation")->verified_length, 8u);
    }
}

TEST(Verify, CorruptedHIsLocated) {
    const HarnessParams p = reference();
    const Rational t(1, 2);
    const PolySeq h = solve_H(p, t, 10);
    ASSERT_TRUE(check_commutation(p, t, h).pass);

    std::vector<Poly> e = h.entries();
    e[4] = e[4] + Poly::monomial(1, Rational(1, 1000));
    const CheckResult r = check_commutation(p, t, PolySeq(e, 1));
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.first_failure);
    EXPECT_LE(r.first_failure->entry, 5u);
    EXPECT_GE(r.first_failure->entry, 3u);
}

TEST(Verify, FlagsParametersOutsideHypotheses) {
    const HarnessParams p{Rational(1, 2), Rational(1, 3), Rational(-1, 4), Rational(1, 5), Rational(1, 20)};
    const auto report = verify(p, {Rational(1, 2), Rational(1)}, 6);
    EXPECT_TRUE(report.out_of_hypothesis);
    EXPECT_TRUE(HarnessParams({0, 0, Rational(2), Rational(1, 2), 0}).out_of_hypothesis());
    EXPECT_TRUE(HarnessParams({0, 0, 0, 0, Rational(3)}).gamma_warning());
    EXPECT_FALSE(HarnessParams({0, 0, Rational(1), Rational(1), Rational(3)}).gamma_warning());
}

TEST(Verify, GeneratorLimitShrinks) {
    const HarnessParams p = reference();
    const Rational r0 = generator_limit_residual(p, Rational(1), Rational(1, 16), 8);
    const Rational r1 = generator_limit_residual(p, Rational(1), Rational(1, 32), 8);
    EXPECT_GT(r0, Rational(0));
    EXPECT_LE(r1, Rational(3, 5) * r0);
}

} // namespace
} // namespace qharness

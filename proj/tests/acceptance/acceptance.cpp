// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qharness/qharness.hpp"
#include "test_support.hpp"

using namespace qharness;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

bool all_zero(const PolySeq& p) {
    for (const auto& e : p.entries())
        if (!e.is_zero()) return false;
    return true;
}

const FreeParams kRef = testing::reference_free();
const HarnessParams kRefH = kRef.harness();
const FreeParams kBm(0, 0, 0, 0);
const HarnessParams kBmH = kBm.harness();

Outcome semigroup_exactness() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = 12;
    const Rational s(1, 3), t(1, 2), u(1);
    const PolySeq lhs = compose(transition(kRefH, s, t, n), transition(kRefH, t, u, n));
    const bool eq = lhs == transition(kRefH, s, u, n);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {eq && secs < 10.0, "exact equality " + std::string(eq ? "yes" : "no") + ", " + std::to_string(secs) + " s"};
}

Outcome commutation_residuals() {
    const std::size_t n = 12;
    std::size_t shortest = n;
    for (const HarnessParams* p : {&kRefH, &kBmH})
        for (const Rational& t : {Rational(1, 2), Rational(1)}) {
            const PolySeq h = solve_H(*p, t, n);
            const PolySeq r1 = residual_equivalent(*p, t, h);
            const PolySeq r2 = residual_commutation(*p, t, h);
            if (!all_zero(r1) || !all_zero(r2)) return {false, "nonzero residual at t=" + t.str()};
            shortest = std::min({shortest, r1.length(), r2.length()});
        }
    return {true, "residuals zero through length " + std::to_string(shortest)};
}

Outcome dual_derivation() {
    const std::size_t n = 10;
    const FreeParams second(Rational(-2, 3), Rational(1, 4), Rational(3, 2), 0);
    for (const FreeParams* fp : {&kRef, &second})
        for (const Rational& t : {Rational(1, 2), Rational(1)}) {
            const PolySeq h = free_H(*fp, t, n);
            if (!(h == solve_H(fp->harness(), t, n))) return {false, "free_H differs at t=" + t.str()};
            if (!equal_prefix(free_generator(*fp, t, n), generator_from_H(h), n))
                return {false, "free_generator differs at t=" + t.str()};
        }
    return {true, "two parameter sets, t in {1/2, 1}"};
}

Outcome triple_agreement() {
    const std::size_t n = 16;
    for (const FreeParams* fp : {&kRef, &kBm})
        for (const Rational& t : {Rational(1, 3), Rational(1)}) {
            const PowerSeries c = free_coeffs(*fp, t, n);
            if (!(phi_closed_form(*fp, t, n) == c)) return {false, "closed form differs at t=" + t.str()};
            const PowerSeries res = phi_residual(*fp, t, c);
            for (std::size_t k = 0; k + 1 < n; ++k)
                if (!res[k].is_zero()) return {false, "residual coefficient " + std::to_string(k) + " nonzero"};
        }
    return {true, "N = 16, residual zero through z^14"};
}

Outcome free_brownian_oracle() {
    for (const Rational& t : {Rational(1), Rational(1, 3)}) {
        const std::vector<Rational> expect{1, 0, t, 0, Rational(2) * t * t, 0, Rational(5) * t.pow(3), 0,
                                           Rational(14) * t.pow(4)};
        if (free_coeffs(kBm, t, 9).coeffs() != expect) return {false, "c-sequence at t=" + t.str()};
        const PolySeq m = martingale_polys(kBmH, t, 5);
        if (!(m[2] == Poly{-t, 0, 1}) || !(m[3] == Poly{0, Rational(-2) * t, 0, 1}))
            return {false, "martingale polynomials at t=" + t.str()};
        const PolySeq a = generator_from_H(solve_H(kBmH, t, 5));
        const PolySeq want({Poly{}, Poly{}, Poly{1}, Poly{0, 2}, Poly{t, 0, 3}}, 0);
        if (!equal_prefix(a, want, 5)) return {false, "generator at t=" + t.str()};
    }
    return {true, "t in {1, 1/3}"};
}

Outcome special_cases() {
    const std::size_t n = 10;
    const Rational theta(2, 3);
    const HarnessParams pp{0, theta, 0, 0, 1};
    const ClosedForm ps = poisson(theta, n);
    for (const Rational& t : {Rational(1, 2), Rational(2)}) {
        if (!all_zero(residual_commutation(pp, t, ps.H))) return {false, "Poisson residual at t=" + t.str()};
        const PolySeq h = solve_H(pp, t, n);
        if (!(h == ps.H) || !equal_prefix(ps.A, generator_from_H(h), n))
            return {false, "Poisson differs from solver at t=" + t.str()};
    }
    if (!(solve_H(pp, Rational(1, 2), n) == solve_H(pp, Rational(2), n))) return {false, "Poisson H depends on t"};

    const Rational eta(1, 2), th(1, 3), t(1, 4);
    const HarnessParams qp{eta, th, 0, 0, 1};
    const ClosedForm qb = quantum_bessel(eta, th, t, n);
    if (!all_zero(residual_commutation(qp, t, qb.H))) return {false, "quantum Bessel residual"};
    const PolySeq h = solve_H(qp, t, n);
    if (!(h == qb.H) || !equal_prefix(qb.A, generator_from_H(h), n)) return {false, "quantum Bessel differs"};
    return {true, "depth 10"};
}

Outcome measure_layer() {
    std::string detail;
    for (const FreeParams* fp : {&kRef, &kBm})
        for (const Rational& t : {Rational(1, 2), Rational(1)}) {
            const auto dets = hankel_check(measure_moments(*fp, t, 8));
            for (std::size_t l = 0; l < dets.size() && l <= 4; ++l)
                if (dets[l].sign() < 0) return {false, "negative Hankel determinant of order " + std::to_string(l)};
            const TransformLayer tl = transform_layer(*fp, t, 10);
            if (!tl.routes_agree || tl.g_pi.order() < 11 || tl.g_pi_direct.order() < 11)
                return {false, "G_pi routes disagree at t=" + t.str()};
            const auto& pm = tl.pi_moments.moments;
            const std::vector<Rational> nu = free_coeffs(*fp, t, 7).coeffs();
            for (std::size_t k = 0; k <= 6; ++k)
                if (tl.a * pm[k + 2] + tl.b * pm[k + 1] + tl.c * pm[k] != nu[k])
                    return {false, "weight relation fails at k=" + std::to_string(k)};
        }
    return {true, "Hankel orders 0..4, routes through order 10, weight k <= 6"};
}

Outcome growth() {
    std::string detail;
    for (const FreeParams* fp : {&kRef, &kBm}) {
        const GrowthBound g = growth_bound(*fp, Rational(1), 40);
        if (!g.holds) return {false, "violation at k=" + std::to_string(g.first_violation)};
        detail += (detail.empty() ? "M = " : ", ") + g.M.str();
    }
    return {true, detail};
}

Outcome generator_limit() {
    const Rational r0 = generator_limit_residual(kRefH, Rational(1), Rational(1, 16), 8);
    const Rational r1 = generator_limit_residual(kRefH, Rational(1), Rational(1, 32), 8);
    const double ratio = r0.is_zero() ? 0.0 : (r1 / r0).to_double();
    return {r1 <= Rational(3, 5) * r0, "ratio " + std::to_string(ratio)};
}

Outcome harness_axioms() {
    const auto report = verify(kRefH, {Rational(1, 2), Rational(1)}, 10);
    for (const char* name : {"unit", "martingale", "harness", "quadratic_harness", "x_time_independence",
                             "x_to_transition"}) {
        const CheckResult* c = report.find(name);
        if (!c || !c->pass) return {false, std::string(name) + " failed"};
    }
    return {true, "depth 10, t in {1/2, 1}"};
}

Outcome negative_controls() {
    const Rational t(1, 2);
    std::vector<Poly> e = solve_H(kRefH, t, 10).entries();
    e[5] = e[5] + Poly::monomial(2, Rational(1, 97));
    const CheckResult c = check_commutation(kRefH, t, PolySeq(e, 1));
    if (c.pass || !c.first_failure) return {false, "corrupted H passed the commutation check"};

    const auto dets = hankel_check(MomentSequence{{1, 2, 1}});
    bool hankel_fails = false;
    for (const auto& d : dets) hankel_fails = hankel_fails || d.sign() < 0;
    if (!hankel_fails) return {false, "(1,2,1) passed Hankel"};

    try {
        quantum_bessel(Rational(1), Rational(1, 2), Rational(1, 2), 6);
        return {false, "theta = t eta did not raise"};
    } catch (const Error& err) {
        if (err.code() != ErrorCode::ResonantTime) return {false, "wrong error code"};
    }
    return {true, "corruption located at entry " + std::to_string(c.first_failure->entry)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"semigroup exactness", semigroup_exactness},
        {"commutation residuals", commutation_residuals},
        {"dual derivation equality", dual_derivation},
        {"generating function triple agreement", triple_agreement},
        {"free Brownian oracle", free_brownian_oracle},
        {"special-case cross-checks", special_cases},
        {"measure layer", measure_layer},
        {"growth bound", growth},
        {"generator-limit decay", generator_limit},
        {"harness axioms", harness_axioms},
        {"negative controls", negative_controls},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2zu %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}

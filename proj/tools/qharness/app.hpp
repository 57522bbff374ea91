#pragma once

// Command-line front end. Every command prints one JSON document; errors are
// printed as {"error": {...}} on the error stream.
//
// Exit codes: 0 success, 1 a verification check failed, 2 input or solver error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qharness/qharness.hpp"
#include "qharness/serialize.hpp"

namespace qharness::cli {

inline constexpr std::size_t kDefaultDepthLimit = 512;

inline std::size_t depth_limit() {
    if (const char* env = std::getenv("HARNESS_DEPTH_LIMIT")) {
        try {
            const long v = std::stol(env);
            if (v >= 2) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::ParseError, std::string("HARNESS_DEPTH_LIMIT is not an integer >= 2: ") + env);
    }
    return kDefaultDepthLimit;
}

inline std::vector<Rational> parse_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(Rational::parse(item));
    if (out.empty()) throw Error(ErrorCode::ParseError, "empty list of rationals");
    return out;
}

struct JobSpec {
    std::string eta = "0", theta = "0", sigma = "0", tau = "0", gamma = "0";
    std::string s = "0", t = "1", times = "1";
    std::size_t depth = 10;
    std::string output;

    HarnessParams harness() const {
        return {Rational::parse(eta), Rational::parse(theta), Rational::parse(sigma), Rational::parse(tau),
                Rational::parse(gamma)};
    }
    FreeParams free() const {
        return {Rational::parse(eta), Rational::parse(theta), Rational::parse(sigma), Rational::parse(tau)};
    }
};

inline json error_json(ErrorCode code, const std::string& message, std::optional<std::size_t> index = std::nullopt) {
    json e{{"code", std::string(to_string(code))}, {"message", message}};
    e["index"] = index ? json(*index) : json(nullptr);
    return json{{"error", e}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobSpec spec;
    CLI::App app{"Exact operator calculus for quadratic harnesses"};
    app.require_subcommand(1);

    auto add_depth = [&](CLI::App* c) {
        c->add_option("--depth", spec.depth, "number of sequence entries / series terms");
        c->add_option("-o,--output", spec.output, "write the JSON document to this file");
    };
    auto add_free = [&](CLI::App* c) {
        c->add_option("--eta", spec.eta);
        c->add_option("--theta", spec.theta);
        c->add_option("--sigma", spec.sigma);
        c->add_option("--tau", spec.tau);
        add_depth(c);
    };
    auto add_harness = [&](CLI::App* c) {
        add_free(c);
        c->add_option("--gamma", spec.gamma);
    };

    auto* generator = app.add_subcommand("generator", "infinitesimal generator A_t");
    add_harness(generator);
    generator->add_option("--t", spec.t);
    auto* mpolys = app.add_subcommand("mpolys", "martingale polynomials M_t");
    add_harness(mpolys);
    mpolys->add_option("--t", spec.t);
    auto* trans = app.add_subcommand("transition", "transition operator P_{s,t}");
    add_harness(trans);
    trans->add_option("--s", spec.s);
    trans->add_option("--t", spec.t);
    auto* free_phi = app.add_subcommand("free-phi", "coefficients c_k of phi_t for the free harness");
    add_free(free_phi);
    free_phi->add_option("--t", spec.t);
    auto* moments = app.add_subcommand("moments", "moments of nu_t and pi_t with Hankel determinants");
    add_free(moments);
    moments->add_option("--t", spec.t);
    auto* special = app.add_subcommand("special", "closed forms for the Poisson and quantum Bessel harnesses");
    special->require_subcommand(1);
    auto* poisson_cmd = special->add_subcommand("poisson");
    poisson_cmd->add_option("--theta", spec.theta);
    add_depth(poisson_cmd);
    auto* bessel_cmd = special->add_subcommand("bessel");
    bessel_cmd->add_option("--eta", spec.eta);
    bessel_cmd->add_option("--theta", spec.theta);
    bessel_cmd->add_option("--t", spec.t);
    add_depth(bessel_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "run every axiom and identity check");
    add_harness(verify_cmd);
    verify_cmd->add_option("--times", spec.times, "comma-separated positive rationals");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << error_json(ErrorCode::ParseError, e.what()).dump() << "\n";
        return 2;
    }

    json doc;
    int code = 0;
    try {
        const std::size_t limit = depth_limit();
        if (spec.depth < 2 || spec.depth > limit)
            throw Error(ErrorCode::InvalidParameter,
                        "depth must lie in [2, " + std::to_string(limit) + "], got " + std::to_string(spec.depth));
        const std::size_t n = spec.depth;

        if (generator->parsed()) {
            const Rational t = Rational::parse(spec.t);
            const PolySeq h = solve_H(spec.harness(), t, n);
            doc = json{{"command", "generator"}, {"t", t}, {"A", generator_from_H(h).truncated(n)}};
        } else if (mpolys->parsed()) {
            const Rational t = Rational::parse(spec.t);
            doc = json{{"command", "mpolys"}, {"t", t}, {"M", martingale_polys(spec.harness(), t, n)}};
        } else if (trans->parsed()) {
            const Rational s = Rational::parse(spec.s), t = Rational::parse(spec.t);
            doc = json{{"command", "transition"}, {"s", s}, {"t", t}, {"P", transition(spec.harness(), s, t, n)}};
        } else if (free_phi->parsed()) {
            const FreeParams fp = spec.free();
            const Rational t = Rational::parse(spec.t);
            const PowerSeries c = free_coeffs(fp, t, n);
            const PowerSeries res = phi_residual(fp, t, c);
            bool residual_zero = true;
            for (std::size_t k = 0; k + 1 < n; ++k) residual_zero = residual_zero && res[k].is_zero();
            doc = json{{"command", "free-phi"}, {"t", t}, {"c", c.coeffs()}, {"residual_zero", residual_zero}};
            if (fp.sigma() * fp.tau() < Rational(1))
                doc["closed_form_agrees"] = phi_closed_form(fp, t, n) == c;
            else
                doc["closed_form_agrees"] = nullptr;
        } else if (moments->parsed()) {
            const FreeParams fp = spec.free();
            const Rational t = Rational::parse(spec.t);
            const MomentSequence nu = measure_moments(fp, t, n);
            const TransformLayer tl = transform_layer(fp, t, n);
            doc = json{{"command", "moments"},
                       {"t", t},
                       {"nu", nu},
                       {"pi", tl.pi_moments},
                       {"hankel_nu", hankel_check(nu)},
                       {"hankel_pi", hankel_check(tl.pi_moments)},
                       {"weight", json{{"a", tl.a}, {"b", tl.b}, {"c", tl.c}}},
                       {"routes_agree", tl.routes_agree},
                       {"weight_relation", tl.weight_relation}};
        } else if (poisson_cmd->parsed()) {
            const Rational theta = Rational::parse(spec.theta);
            const ClosedForm cf = poisson(theta, n);
            doc = json{{"command", "special poisson"}, {"theta", theta}, {"H", cf.H}, {"A", cf.A}};
        } else if (bessel_cmd->parsed()) {
            const Rational eta = Rational::parse(spec.eta), theta = Rational::parse(spec.theta);
            const Rational t = Rational::parse(spec.t);
            const ClosedForm cf = quantum_bessel(eta, theta, t, n);
            doc = json{{"command", "special bessel"}, {"eta", eta}, {"theta", theta}, {"t", t},
                       {"H", cf.H}, {"A", cf.A}};
        } else if (verify_cmd->parsed()) {
            const VerificationReport report = verify(spec.harness(), parse_list(spec.times), n);
            doc = report;
            code = report.all_pass() ? 0 : 1;
        }
    } catch (const Error& e) {
        err << error_json(e.code(), e.what(), e.index()).dump() << "\n";
        return 2;
    }

    if (spec.output.empty()) {
        out << doc.dump(2) << "\n";
    } else {
        std::ofstream f(spec.output);
        if (!f) {
            err << error_json(ErrorCode::ParseError, "cannot open output file " + spec.output).dump() << "\n";
            return 2;
        }
        f << doc.dump(2) << "\n";
    }
    return code;
}

} // namespace qharness::cli

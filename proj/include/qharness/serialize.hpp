#pragma once

// JSON shapes:
//   rational       "num/den"                      (canonical, "5/1" for integers)
//   Poly           ["c0", "c1", ...]              (ascending degree)
//   PolySeq        {"length": N, "excess": d, "entries": [Poly, ...]}
//   PowerSeries    {"order": K, "coeffs": [rational, ...]}
//   MomentSequence {"moments": [rational, ...]}
//   report         {"checks": [{"name", "status", "verified_length", "first_failure"}], ...}

#include <string>
#include <vector>

#include <json.hpp>

#include "qharness/error.hpp"
#include "qharness/free_harness.hpp"
#include "qharness/poly.hpp"
#include "qharness/poly_seq.hpp"
#include "qharness/power_series.hpp"
#include "qharness/rational.hpp"
#include "qharness/verify.hpp"

namespace qharness {

using json = nlohmann::json;

inline void to_json(json& j, const Rational& r) { j = r.str(); }
inline void from_json(const json& j, Rational& r) {
    if (!j.is_string()) throw Error(ErrorCode::ParseError, "rational must be a \"num/den\" string");
    r = Rational::parse(j.get<std::string>());
}

inline void to_json(json& j, const Poly& p) { j = p.coeffs(); }
inline void from_json(const json& j, Poly& p) { p = Poly(j.get<std::vector<Rational>>()); }

inline void to_json(json& j, const PolySeq& s) {
    j = json{{"length", s.length()}, {"excess", s.excess()}, {"entries", s.entries()}};
}
inline void from_json(const json& j, PolySeq& s) {
    auto entries = j.at("entries").get<std::vector<Poly>>();
    if (entries.size() != j.at("length").get<std::size_t>())
        throw Error(ErrorCode::ParseError, "PolySeq length does not match its entries");
    s = PolySeq(std::move(entries), j.at("excess").get<int>());
}

inline void to_json(json& j, const PowerSeries& s) { j = json{{"order", s.order()}, {"coeffs", s.coeffs()}}; }
inline void from_json(const json& j, PowerSeries& s) {
    auto c = j.at("coeffs").get<std::vector<Rational>>();
    if (c.size() != j.at("order").get<std::size_t>())
        throw Error(ErrorCode::ParseError, "PowerSeries order does not match its coefficients");
    s = PowerSeries(std::move(c));
}

inline void to_json(json& j, const MomentSequence& m) { j = json{{"moments", m.moments}}; }
inline void from_json(const json& j, MomentSequence& m) { m.moments = j.at("moments").get<std::vector<Rational>>(); }

inline void to_json(json& j, const CheckResult& c) {
    j = json{{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}, {"verified_length", c.verified_length}};
    if (c.first_failure)
        j["first_failure"] = json{{"entry", c.first_failure->entry}, {"coeff_index", c.first_failure->coeff_index}};
    else
        j["first_failure"] = nullptr;
    if (!c.context.empty()) j["context"] = c.context;
}
inline void from_json(const json& j, CheckResult& c) {
    c.name = j.at("name").get<std::string>();
    c.pass = j.at("status").get<std::string>() == "PASS";
    c.verified_length = j.at("verified_length").get<std::size_t>();
    c.first_failure.reset();
    if (!j.at("first_failure").is_null())
        c.first_failure = Mismatch{j["first_failure"].at("entry").get<std::size_t>(),
                                   j["first_failure"].at("coeff_index").get<std::size_t>()};
    c.context = j.value("context", std::string{});
}

inline void to_json(json& j, const VerificationReport& r) {
    j = json{{"checks", r.checks},
             {"all_pass", r.all_pass()},
             {"out_of_hypothesis", r.out_of_hypothesis},
             {"gamma_warning", r.gamma_warning}};
}
inline void from_json(const json& j, VerificationReport& r) {
    r.checks = j.at("checks").get<std::vector<CheckResult>>();
    r.out_of_hypothesis = j.value("out_of_hypothesis", false);
    r.gamma_warning = j.value("gamma_warning", false);
}

} // namespace qharness

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padic_periods/arith/residual.hpp"
#include "padic_periods/qseries/expansion.hpp"
#include "padic_periods/schottky/group.hpp"

namespace padic_periods::cli {

using nlohmann::json;

inline json to_json(const Fp2& x) { return json::array({x.a(), x.b()}); }

inline json to_json(const ResidualClass& c) { return json{{"val", c.val()}, {"res", to_json(c.res())}}; }

inline json to_json(const Rational& r) { return r.get_str(); }

inline json to_json(const QExpansion& f) {
    json terms = json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back(json::array({e.get_str(), c.str()}));
    return json{{"variable", {{"scale", f.variable().scale.get_str()}, {"argument", f.variable().argument}}},
                {"order", f.order().get_str()},
                {"terms", terms}};
}

/// Rational from a JSON integer or a string such as "-3/4".
inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw precondition_error("expected an integer or a rational string, got " + j.dump());
}

inline Fp2 fp2_from_json(const json& j, const Fp2Context& ctx) {
    if (!j.is_array() || j.size() != 2) throw precondition_error("F_p^2 element must be [a, b], got " + j.dump());
    return Fp2(ctx, j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>());
}

inline Ball ball_from_json(const json& j) {
    if (!j.is_object()) throw precondition_error("ball must be an object, got " + j.dump());
    Ball b;
    b.center = rational_from_json(j.at("center"));
    b.radius_val = rational_from_json(j.at("radius_val"));
    b.closed = j.value("closed", true);
    b.complement = j.value("complement", false);
    return b;
}

inline json to_json(const Ball& b) {
    return json{{"center", b.center.get_str()}, {"radius_val", b.radius_val.get_str()}, {"closed", b.closed},
                {"complement", b.complement}};
}

/// {"prime": p, "generators": [{"matrix": [[a, b], [c, d]], "B": ball, "C": ball}, ...]}; balls are optional
/// but must be given for all generators or none.
inline SchottkyGroup group_from_json(const json& doc) {
    try {
        SchottkyGroup g;
        g.p = doc.at("prime").get<std::uint64_t>();
        require_working_prime(g.p);
        std::vector<BallPair> balls;
        std::size_t with_balls = 0;
        for (const json& gen : doc.at("generators")) {
            const json& m = gen.at("matrix");
            if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
                throw precondition_error("generator matrix must be 2x2, got " + m.dump());
            g.generators.emplace_back(rational_from_json(m[0][0]), rational_from_json(m[0][1]), rational_from_json(m[1][0]),
                                      rational_from_json(m[1][1]));
            if (gen.contains("B") || gen.contains("C")) {
                balls.push_back(BallPair{ball_from_json(gen.at("B")), ball_from_json(gen.at("C"))});
                ++with_balls;
            }
        }
        if (with_balls != 0 && with_balls != g.generators.size())
            throw precondition_error("ball pairs must be given for every generator or for none");
        if (with_balls) g.ball_system = balls;
        return g;
    } catch (const json::exception& e) {
        throw precondition_error(std::string("malformed generators document: ") + e.what());
    }
}

} // namespace padic_periods::cli

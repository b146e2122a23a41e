#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padic_periods/schottky/group.hpp"

namespace padic_periods {

struct ConditionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct GoodPositionReport {
    std::vector<ConditionResult> conditions;

    bool passed() const {
        for (const auto& c : conditions)
            if (!c.passed) return false;
        return true;
    }

    std::string first_failure() const {
        for (const auto& c : conditions)
            if (!c.passed) return c.name + (c.detail.empty() ? "" : ": " + c.detail);
        return {};
    }
};

/// Checks the 2g balls are pairwise disjoint, alpha_i(P1 - B_i) = C_i and alpha_i^-1(P1 - C_i) = B_i.
/// An empty generator list passes vacuously.
inline GoodPositionReport verify_good_position(const SchottkyGroup& g) {
    if (!g.ball_system) throw precondition_error("verify_good_position: group has no ball system");
    const auto& balls = *g.ball_system;
    if (balls.size() != g.genus()) throw precondition_error("ball system size differs from the number of generators");
    GoodPositionReport report;
    const std::uint64_t p = g.p;

    std::vector<std::pair<std::string, Ball>> all;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        all.emplace_back("B" + std::to_string(i + 1), balls[i].B);
        all.emplace_back("C" + std::to_string(i + 1), balls[i].C);
    }
    ConditionResult disjoint{"pairwise_disjoint", true, ""};
    for (std::size_t i = 0; i < all.size() && disjoint.passed; ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (!balls_disjoint(all[i].second, all[j].second, p)) {
                disjoint.passed = false;
                disjoint.detail = all[i].first + " meets " + all[j].first;
                break;
            }
        }
    }
    report.conditions.push_back(disjoint);

    for (std::size_t i = 0; i < balls.size(); ++i) {
        const std::string idx = std::to_string(i + 1);
        Ball fwd = mobius_image_of_ball(g.generators[i], balls[i].B.complemented(), p);
        report.conditions.push_back({"g" + idx + "(P1-B" + idx + ")=C" + idx, balls_equal(fwd, balls[i].C, p),
                                     "image is " + fwd.str()});
        Ball back = mobius_image_of_ball(g.generators[i].inverse(), balls[i].C.complemented(), p);
        report.conditions.push_back({"g" + idx + "^-1(P1-C" + idx + ")=B" + idx, balls_equal(back, balls[i].B, p),
                                     "image is " + back.str()});
    }
    for (std::size_t i = 0; i < g.genus(); ++i) {
        report.conditions.push_back({"g" + std::to_string(i + 1) + " hyperbolic", is_hyperbolic(g.generators[i], p), ""});
    }
    return report;
}

/// Deterministic point of the fundamental domain P1 - U B_i - U C_i: the first unit t = 1, ..., p-1
/// outside every ball and incongruent mod p to every integral center.
inline ProjectivePoint fundamental_sample_point(const SchottkyGroup& g) {
    if (!g.ball_system) throw precondition_error("sample point needs a ball system");
    const std::uint64_t p = g.p;
    for (std::uint64_t t = 1; t < p; ++t) {
        ProjectivePoint z = ProjectivePoint::finite(Rational(static_cast<unsigned long>(t)));
        bool ok = true;
        for (const auto& bp : *g.ball_system) {
            for (const Ball* b : {&bp.B, &bp.C}) {
                if (ball_contains(*b, z, p)) ok = false;
                Rational diff = z.x - b->center;
                const bool integral = b->center == 0 || valuation(b->center, p) >= 0;
                if (diff == 0 || (integral && valuation(diff, p) > 0)) ok = false;
            }
        }
        if (ok) return z;
    }
    throw geometry_error("no unit sample point lies in the fundamental domain");
}

} // namespace padic_periods

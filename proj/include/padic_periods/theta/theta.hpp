#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "padic_periods/arith/padic.hpp"
#include "padic_periods/schottky/schottky.hpp"

namespace padic_periods {

/// v_p(S_l - 1) for the product S_l of the factors of one shell; nullopt when S_l = 1 exactly.
struct ShellStat {
    std::size_t length = 0;
    std::optional<long> valuation;
};

/// Truncated product over all reduced words of length <= max_length.
struct TruncatedProduct {
    Rational exact;
    PadicElement value = PadicElement::zero(Fp2Context{}, 0);
    std::vector<ShellStat> profile;
    /// Valuation of the last shell change minus one; nullopt means every shell was exactly 1.
    std::optional<long> precision_estimate;
    std::size_t max_length = 0;
};

struct ThetaTruncation : TruncatedProduct {
    Rational a, b, z;
    ProjectivePoint base_point;
};

struct PeriodPairingResult : TruncatedProduct {
    Word alpha, beta;
    Rational a, z;
};

/// Relative p-adic digits attached to a product whose shells were all exactly 1.
inline constexpr long exact_product_digits = 30;

namespace detail {

/// u - x with the projective convention that a difference involving exactly one infinite point is 1.
inline Rational projective_difference(const ProjectivePoint& u, const ProjectivePoint& x) {
    if (u.infinite && x.infinite) throw geometry_error("orbit point collides with an evaluation point at infinity");
    if (u.infinite || x.infinite) return 1;
    return u.x - x.x;
}

/// Cross ratio (z1 - x)(z2 - y) / ((z1 - y)(z2 - x)) as a numerator/denominator pair.
inline void cross_ratio_into(const ProjectivePoint& z1, const ProjectivePoint& z2, const ProjectivePoint& x,
                             const ProjectivePoint& y, Integer& num, Integer& den) {
    Rational d1 = projective_difference(z1, x), d2 = projective_difference(z2, y);
    Rational d3 = projective_difference(z1, y), d4 = projective_difference(z2, x);
    if (d3 == 0 || d4 == 0 || d1 == 0 || d2 == 0) {
        throw geometry_error("orbit point coincides with an evaluation point (zero or pole of a theta factor)");
    }
    num *= d1.get_num() * d2.get_num() * d3.get_den() * d4.get_den();
    den *= d1.get_den() * d2.get_den() * d3.get_num() * d4.get_num();
}

inline std::optional<long> change_valuation(const Rational& shell, std::uint64_t p) {
    Rational diff = shell - 1;
    if (diff == 0) return std::nullopt;
    return valuation(diff, p);
}

/// Empirical certificate from the shell profile.
inline std::optional<long> estimate_precision(const std::vector<ShellStat>& profile) {
    if (profile.empty()) return std::nullopt;
    const auto& last = profile.back().valuation;
    if (!last) {
        for (auto it = profile.rbegin(); it != profile.rend(); ++it)
            if (it->valuation) return *it->valuation - 1;
        return std::nullopt;
    }
    return *last - 1;
}

/// At least two shells beyond the identity, with the last two positive and nondecreasing.
inline bool stabilized(const std::vector<ShellStat>& profile) {
    if (profile.size() < 3) return false;
    const auto& u = profile[profile.size() - 2].valuation;
    const auto& w = profile.back().valuation;
    auto big = [](const std::optional<long>& x) { return x ? *x : std::numeric_limits<long>::max(); };
    return big(u) > 0 && big(w) > 0 && big(w) >= big(u);
}

inline void require_good_position(const SchottkyGroup& g) {
    if (!g.ball_system) throw geometry_error("theta products need a Schottky ball system");
    auto report = verify_good_position(g);
    if (!report.passed()) throw geometry_error("group is not in good position: " + report.first_failure());
}

using FactorFn = std::function<void(const WordElement&, Integer&, Integer&)>;

inline void accumulate(const SchottkyGroup& g, std::size_t max_length, const FactorFn& factor,
                       const Rational& prefactor, TruncatedProduct& out) {
    std::vector<Integer> nums(max_length + 1, 1), dens(max_length + 1, 1);
    for_each_reduced_word(g, max_length, [&](const WordElement& e) {
        factor(e, nums[e.word.length()], dens[e.word.length()]);
        return true;
    });
    Rational total = prefactor;
    out.profile.clear();
    for (std::size_t l = 0; l <= max_length; ++l) {
        Rational shell = make_rational(nums[l], dens[l]);
        total *= shell;
        if (l == 0) continue;  // the identity shell carries the value itself, not a correction
        out.profile.push_back(ShellStat{l, change_valuation(shell, g.p)});
    }
    out.exact = total;
    out.max_length = max_length;
    out.precision_estimate = estimate_precision(out.profile);
    const long rel = out.precision_estimate ? std::max<long>(*out.precision_estimate, 1) : exact_product_digits;
    auto ctx = Fp2Context::for_prime(g.p);
    const int v = valuation(total, g.p);
    out.value = PadicElement::from_rational(ctx, total, static_cast<int>(v + rel));
}

} // namespace detail

/// Base point s used to normalize theta products: infinity when it lies in the fundamental
/// domain, otherwise the deterministic unit sample point.
inline ProjectivePoint theta_base_point(const SchottkyGroup& g) {
    for (const auto& bp : *g.ball_system)
        if (bp.B.contains_infinity() || bp.C.contains_infinity()) return fundamental_sample_point(g);
    return ProjectivePoint::infinity();
}

/// Units t = 1, ..., p-1 in the fundamental domain, in increasing order.
inline std::vector<Rational> fundamental_units(const SchottkyGroup& g) {
    std::vector<Rational> out;
    for (std::uint64_t t = 1; t < g.p; ++t) {
        ProjectivePoint z = ProjectivePoint::finite(Rational(static_cast<unsigned long>(t)));
        bool inside = false;
        for (const auto& bp : *g.ball_system) inside = inside || ball_contains(bp.B, z, g.p) || ball_contains(bp.C, z, g.p);
        if (!inside) out.push_back(z.x);
    }
    return out;
}

/// theta_L(a, b; z) = ((s - a)/(s - b)) prod_{|g| <= L} [z, s; g a, g b], with [z, s; x, y] the cross
/// ratio (z - x)(s - y) / ((z - y)(s - x)). For s = infinity this is prod (z - g a)/(z - g b).
inline ThetaTruncation theta_truncated(const SchottkyGroup& g, const Rational& a, const Rational& b, const Rational& z,
                                       std::size_t max_length) {
    detail::require_good_position(g);
    ThetaTruncation t;
    t.a = a;
    t.b = b;
    t.z = z;
    t.base_point = theta_base_point(g);
    const ProjectivePoint s = t.base_point, zp = ProjectivePoint::finite(z);
    const ProjectivePoint pa = ProjectivePoint::finite(a), pb = ProjectivePoint::finite(b);
    Rational prefactor = 1;
    if (!s.infinite) {
        if (s.x == b || s.x == a) throw geometry_error("theta arguments coincide with the base point");
        prefactor = (s.x - a) / (s.x - b);
    }
    if (a == b) prefactor = 1;
    detail::accumulate(
        g, max_length,
        [&](const WordElement& e, Integer& num, Integer& den) {
            if (a == b) return;
            detail::cross_ratio_into(zp, s, e.map.apply(pa), e.map.apply(pb), num, den);
        },
        prefactor, t);
    return t;
}

/// theta(a, b; z) / theta(a, b; z') = prod [z, z'; g a, g b]; exact per truncation.
inline TruncatedProduct theta_quotient(const SchottkyGroup& g, const Rational& a, const Rational& b, const Rational& z,
                                       const Rational& z2, std::size_t max_length) {
    detail::require_good_position(g);
    TruncatedProduct t;
    const ProjectivePoint pz = ProjectivePoint::finite(z), pz2 = ProjectivePoint::finite(z2);
    const ProjectivePoint pa = ProjectivePoint::finite(a), pb = ProjectivePoint::finite(b);
    detail::accumulate(
        g, max_length,
        [&](const WordElement& e, Integer& num, Integer& den) {
            detail::cross_ratio_into(pz, pz2, e.map.apply(pa), e.map.apply(pb), num, den);
        },
        Rational(1), t);
    return t;
}

/// Canonical point a for u_alpha: the first fundamental-domain unit different from the base point.
inline Rational canonical_theta_point(const SchottkyGroup& g) {
    const ProjectivePoint s = theta_base_point(g);
    for (const Rational& t : fundamental_units(g))
        if (s.infinite || t != s.x) return t;
    throw geometry_error("fundamental domain has no unit point besides the base point");
}

/// u_alpha(z) = prod [z, s; g a, g alpha a], normalized by u_alpha(s) = 1.
inline ThetaTruncation u_alpha(const SchottkyGroup& g, const Word& alpha, const Rational& z, std::size_t max_length,
                               std::optional<Rational> a = std::nullopt) {
    detail::require_good_position(g);
    ThetaTruncation t;
    t.a = a ? *a : canonical_theta_point(g);
    t.z = z;
    t.base_point = theta_base_point(g);
    const ProjectivePoint pa = ProjectivePoint::finite(t.a);
    const ProjectivePoint alpha_a = g.evaluate(alpha).apply(pa);
    t.b = alpha_a.infinite ? Rational(0) : alpha_a.x;
    const ProjectivePoint s = t.base_point, zp = ProjectivePoint::finite(z);
    detail::accumulate(
        g, max_length,
        [&](const WordElement& e, Integer& num, Integer& den) {
            if (alpha.is_identity()) return;
            detail::cross_ratio_into(zp, s, e.map.apply(pa), e.map.apply(alpha_a), num, den);
        },
        Rational(1), t);
    return t;
}

/// Phi(alpha, beta) = u_alpha(z) / u_alpha(beta z) = prod [z, beta z; g a, g alpha a].
/// Throws precision_error when the shells have not stabilized at max_length.
inline PeriodPairingResult drinfeld_pairing(const SchottkyGroup& g, const Word& alpha, const Word& beta,
                                            std::size_t max_length, std::optional<Rational> a = std::nullopt,
                                            std::optional<Rational> z = std::nullopt) {
    detail::require_good_position(g);
    PeriodPairingResult r;
    r.alpha = alpha;
    r.beta = beta;
    if (!a || !z) {
        auto units = fundamental_units(g);
        if (units.size() < 2) throw geometry_error("fundamental domain has fewer than two unit points");
        r.a = a ? *a : units[0];
        r.z = z ? *z : (units[1] == r.a ? units[0] : units[1]);
    } else {
        r.a = *a;
        r.z = *z;
    }
    const ProjectivePoint pa = ProjectivePoint::finite(r.a), pz = ProjectivePoint::finite(r.z);
    const ProjectivePoint alpha_a = g.evaluate(alpha).apply(pa);
    const ProjectivePoint beta_z = g.evaluate(beta).apply(pz);
    const bool trivial = alpha.is_identity() || beta.is_identity();
    detail::accumulate(
        g, max_length,
        [&](const WordElement& e, Integer& num, Integer& den) {
            if (trivial) return;
            detail::cross_ratio_into(pz, beta_z, e.map.apply(pa), e.map.apply(alpha_a), num, den);
        },
        Rational(1), r);
    if (!trivial && !detail::stabilized(r.profile)) {
        std::string shells;
        for (const auto& s : r.profile) shells += " " + (s.valuation ? std::to_string(*s.valuation) : std::string("inf"));
        throw precision_error("theta product has not stabilized at max length " + std::to_string(max_length) +
                              " (shell valuations:" + shells + ")");
    }
    return r;
}

/// Valuation Gram matrix v(Phi(g_i, g_j)) on the generators.
inline std::vector<std::vector<long>> pairing_valuation_gram(const SchottkyGroup& g, std::size_t max_length) {
    std::vector<std::vector<long>> gram(g.genus(), std::vector<long>(g.genus()));
    for (std::size_t i = 0; i < g.genus(); ++i) {
        for (std::size_t j = 0; j < g.genus(); ++j) {
            Word wi{{Letter{i, 1}}}, wj{{Letter{j, 1}}};
            gram[i][j] = valuation(drinfeld_pairing(g, wi, wj, max_length).exact, g.p);
        }
    }
    return gram;
}

} // namespace padic_periods

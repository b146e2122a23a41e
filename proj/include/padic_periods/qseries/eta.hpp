#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "padic_periods/qseries/expansion.hpp"

namespace padic_periods {

/// prod_{n>=1} (1 - q^n) + O(q^order) in q = exp(2 pi i z), from Euler's pentagonal number theorem.
inline QExpansion euler_product(long order, const SeriesVariable& var = {}) {
    if (order < 1) throw precondition_error("expansion order must be >= 1");
    QExpansion::Terms terms;
    for (long k = 0;; ++k) {
        bool any = false;
        for (long s : {k, -k}) {
            if (k == 0 && s < 0) continue;
            long e = s * (3 * s - 1) / 2;
            if (e < order) {
                terms[Rational(e)] = Cyclotomic(k % 2 ? -1L : 1L);
                any = true;
            }
        }
        if (!any) break;
    }
    return QExpansion::from_terms(var, terms, Rational(order));
}

/// eta(z) = q^(1/24) prod (1 - q^n), with `order` coefficients of the product known.
inline QExpansion eta_expansion(long order) { return euler_product(order).shifted(Rational(1, 24)); }

/// Delta(z) = eta(z)^24, with `order` coefficients past q^1 known.
inline QExpansion discriminant_expansion(long order) { return euler_product(order).pow(24).shifted(1); }

/// prod eta(scale * x)^exponent, times a constant, where x is the series argument.
struct EtaQuotient {
    struct Factor {
        Rational scale;
        long exponent = 0;
    };
    std::vector<Factor> factors;
    Cyclotomic constant = 1;

    /// Exponent of the leading monomial in the variable of the given scale.
    Rational leading_exponent(const Rational& variable_scale) const {
        Rational e = 0;
        for (const auto& f : factors) e += f.scale * f.exponent / (24 * variable_scale);
        return e;
    }

    /// Expansion in t = exp(2 pi i * variable_scale * argument), with `order` terms past the leading monomial.
    QExpansion expand(const Rational& variable_scale, long order, const std::string& argument = "z") const {
        if (order < 1) throw precondition_error("expansion order must be >= 1");
        SeriesVariable var{variable_scale, argument};
        QExpansion acc = QExpansion::monomial(var, constant, 0, Rational(order));
        for (const auto& f : factors) {
            if (f.scale <= 0) throw precondition_error("eta quotient scales must be positive");
            // prod (1 - q_k^n) with q_k = t^(scale / variable_scale).
            Rational step = f.scale / variable_scale;
            Rational needed = Rational(order) / step;
            Integer n = needed.get_num() / needed.get_den() + 1;
            QExpansion prod = euler_product(to_long(n), SeriesVariable{f.scale, argument}).in_scale(variable_scale);
            acc = acc * prod.truncated(Rational(order)).pow(f.exponent);
        }
        return acc.truncated(Rational(order)).shifted(leading_exponent(variable_scale));
    }

    std::string str() const {
        std::string s = constant.str();
        for (const auto& f : factors) s += "*eta(" + f.scale.get_str() + "z)^" + std::to_string(f.exponent);
        return s;
    }
};

/// gcd(p - 1, 12).
inline long d_of(std::uint64_t p) { return std::gcd(static_cast<long>(p) - 1, 12L); }

/// 16 eta(z/2)^8 eta(2z)^16 / eta(z)^24.
inline EtaQuotient lambda_eta_quotient() {
    return EtaQuotient{{{Rational(1, 2), 8}, {Rational(2), 16}, {Rational(1), -24}}, Cyclotomic(16)};
}

/// lambda(z) = 16 q prod ((1 + q^(2n)) / (1 + q^(2n-1)))^8 in q = exp(i pi z), to O(q^(order+1)).
inline QExpansion lambda_expansion(long order) {
    if (order < 1) throw precondition_error("expansion order must be >= 1");
    const SeriesVariable var{Rational(1, 2), "z"};
    const Rational rel(order);
    QExpansion num = QExpansion::monomial(var, 1, 0, rel), den = num;
    for (long n = 1; 2 * n - 1 < order; ++n) {
        if (2 * n < order) num = num * QExpansion::from_terms(var, {{0, 1}, {Rational(2 * n), 1}}, rel);
        den = den * QExpansion::from_terms(var, {{0, 1}, {Rational(2 * n - 1), 1}}, rel);
    }
    return (num / den).pow(8).scaled(16).shifted(1);
}

/// u = (Delta(pz) / Delta(z))^(1/d) as the eta quotient eta(pz)^(24/d) / eta(z)^(24/d).
inline EtaQuotient u_eta_quotient(std::uint64_t p) {
    require_working_prime(p);
    const long k = 24 / d_of(p);
    return EtaQuotient{{{Rational(static_cast<unsigned long>(p)), k}, {Rational(1), -k}}, Cyclotomic(1)};
}

/// q^((p-1)/d) prod ((1 - q^(pn)) / (1 - q^n))^(24/d), with `order` terms past the leading one.
inline QExpansion u_expansion(std::uint64_t p, long order) {
    require_working_prime(p);
    if (order < 1) throw precondition_error("expansion order must be >= 1");
    const long d = d_of(p);
    const SeriesVariable var{};
    const Rational rel(order);
    QExpansion num = QExpansion::monomial(var, 1, 0, rel), den = num;
    for (long n = 1; n < order; ++n) {
        if (static_cast<long>(p) * n < order)
            num = num * QExpansion::from_terms(var, {{0, 1}, {Rational(static_cast<long>(p) * n), -1}}, rel);
        den = den * QExpansion::from_terms(var, {{0, 1}, {Rational(n), -1}}, rel);
    }
    return (num / den).pow(24 / d).shifted(Rational((static_cast<long>(p) - 1) / d));
}

/// mu(z) = u((z+1)/2)^2 / u(z) in t = exp(i pi z).
inline QExpansion mu_expansion(std::uint64_t p, long order) {
    QExpansion u = u_expansion(p, order);
    QExpansion shifted = u.compose_affine(Rational(1, 2), Rational(1, 2));
    QExpansion base = u_expansion(p, 2 * order).in_scale(Rational(1, 2));
    QExpansion mu = shifted.pow(2) / base;
    return mu.truncated(mu.valuation() + order);
}

/// mu from the product formula directly in t = exp(i pi z): with e^(2 pi i (z+1)/2) = -t and p odd,
/// mu = prod ((1 - (-1)^n t^(pn)) / (1 - (-1)^n t^n))^(48/d) / prod ((1 - t^(2pn)) / (1 - t^(2n)))^(24/d).
inline QExpansion mu_expansion_direct(std::uint64_t p, long order) {
    require_working_prime(p);
    if (order < 1) throw precondition_error("expansion order must be >= 1");
    const long P = static_cast<long>(p), m = 24 / d_of(p);
    const SeriesVariable var{Rational(1, 2), "z"};
    const Rational rel(order);
    auto factor = [&](long e, long sign) { return QExpansion::from_terms(var, {{0, 1}, {Rational(e), -sign}}, rel); };
    QExpansion one = QExpansion::monomial(var, 1, 0, rel), a = one, b = one;
    for (long n = 1; n < order; ++n) {
        const long sign = n % 2 ? -1 : 1;
        if (P * n < order) a = a * factor(P * n, sign);
        a = a / factor(n, sign);
        if (2 * P * n < order) b = b * factor(2 * P * n, 1);
        if (2 * n < order) b = b / factor(2 * n, 1);
    }
    return a.pow(2 * m) / b.pow(m);
}

/// H = (eta(w/3) / eta(3w))^3 in the rotated argument w = z/(1-z), expanded in exp(2 pi i w / 3).
inline QExpansion h3_expansion(long order) {
    EtaQuotient q{{{Rational(1, 3), 3}, {Rational(3), -3}}, Cyclotomic(1)};
    return q.expand(Rational(1, 3), order, "w");
}

/// mu_3(z) = u((z+2)/3)^3 / u(z) in t = exp(2 pi i z / 3); coefficients lie in Q(zeta_3).
/// Pass field = 1 to demand rational coefficients, which throws field_error.
inline QExpansion mu3_expansion(std::uint64_t p, long order, int field = 3) {
    QExpansion u = u_expansion(p, order);
    QExpansion shifted = u.compose_affine(Rational(1, 3), Rational(2, 3));
    QExpansion base = u_expansion(p, 3 * order).in_scale(Rational(1, 3));
    QExpansion mu = shifted.pow(3) / base;
    mu = mu.truncated(mu.valuation() + order);
    mu.require_field(field);
    return mu;
}

} // namespace padic_periods

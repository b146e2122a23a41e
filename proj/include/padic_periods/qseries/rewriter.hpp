#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "padic_periods/qseries/eta.hpp"
#include "padic_periods/schottky/mobius.hpp"

namespace padic_periods {

/// Integer matrix [[a, b], [c, d]], row major.
using IntMatrix = std::array<Integer, 4>;

inline IntMatrix int_matrix(const MobiusMap& m) { return {m.a(), m.b(), m.c(), m.d()}; }

inline IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

/// "(az+b)/(cz+d)" with trivial pieces dropped and the denominator's leading coefficient positive.
inline std::string affine_str(Integer a, Integer b, Integer c, Integer d, const std::string& var = "z") {
    if (c < 0 || (c == 0 && d < 0)) a = -a, b = -b, c = -c, d = -d;
    auto lin = [&](const Integer& x, const Integer& y) {
        std::string s;
        if (x != 0) s = (x == 1 ? "" : x == -1 ? "-" : x.get_str()) + var;
        if (y != 0) s += (s.empty() ? y.get_str() : (y > 0 ? "+" + y.get_str() : y.get_str()));
        return s.empty() ? std::string("0") : s;
    };
    auto wrap = [](const std::string& s) { return s.find_first_of("+-", 1) == std::string::npos ? s : "(" + s + ")"; };
    std::string num = lin(a, b);
    if (c == 0 && d == 1) return num;
    return wrap(num) + "/" + wrap(lin(c, d));
}

/// Formal product  constant * prod (z + r)^k * prod Delta(g z)^e  with g in GL_2^+(Q) up to scalars.
/// A factor (c z + d)^k with c = 0 is folded into the constant; otherwise it is stored as c^k (z + d/c)^k.
struct ModularSymbolTerm {
    Rational constant = 1;
    std::map<Rational, long> linear;
    std::map<IntMatrix, long> deltas;

    static ModularSymbolTerm delta(const MobiusMap& g, long e = 1) {
        if (g.det() <= 0) throw precondition_error("Delta argument must preserve the upper half plane: " + g.str());
        ModularSymbolTerm t;
        if (e) t.deltas[int_matrix(g)] = e;
        return t;
    }

    static ModularSymbolTerm automorphy(const Integer& c, const Integer& d, long k) {
        ModularSymbolTerm t;
        if (c == 0) {
            if (d == 0) throw precondition_error("zero automorphy factor");
            t.constant = rational_pow(Rational(d), k);
        } else {
            t.constant = rational_pow(Rational(c), k);
            if (k) t.linear[make_rational(d, c)] = k;
        }
        return t;
    }

    static ModularSymbolTerm scalar(const Rational& c) {
        ModularSymbolTerm t;
        t.constant = c;
        return t;
    }

    ModularSymbolTerm operator*(const ModularSymbolTerm& o) const {
        ModularSymbolTerm r = *this;
        r.constant *= o.constant;
        for (const auto& [k, e] : o.linear) bump(r.linear, k, e);
        for (const auto& [k, e] : o.deltas) bump(r.deltas, k, e);
        return r;
    }

    ModularSymbolTerm pow(long n) const {
        ModularSymbolTerm r;
        r.constant = rational_pow(constant, n);
        for (const auto& [k, e] : linear) r.linear[k] = e * n;
        for (const auto& [k, e] : deltas) r.deltas[k] = e * n;
        if (n == 0) r.linear.clear(), r.deltas.clear();
        return r;
    }

    ModularSymbolTerm inverse() const { return pow(-1); }

    bool is_constant() const { return linear.empty() && deltas.empty(); }

    friend bool operator==(const ModularSymbolTerm&, const ModularSymbolTerm&) = default;

    std::string str() const {
        std::string s = constant.get_str();
        for (const auto& [r, e] : linear) {
            std::string base = r == 0 ? "z" : "(z" + std::string(r > 0 ? "+" : "") + r.get_str() + ")";
            s += "*" + base + "^" + std::to_string(e);
        }
        for (const auto& [m, e] : deltas) s += "*Delta(" + affine_str(m[0], m[1], m[2], m[3]) + ")^" + std::to_string(e);
        return s;
    }

private:
    template <class K>
    static void bump(std::map<K, long>& m, const K& k, long e) {
        long& slot = m[k];
        slot += e;
        if (slot == 0) m.erase(k);
    }
};

/// U(h z) = u(h z)^d = Delta(p h z) / Delta(h z).
inline ModularSymbolTerm u_power_term(std::uint64_t p, const MobiusMap& h) {
    return ModularSymbolTerm::delta(MobiusMap::diagonal(Rational(static_cast<unsigned long>(p)), 1) * h) *
           ModularSymbolTerm::delta(h, -1);
}

struct RewriteResult {
    ModularSymbolTerm normal_form;
    std::vector<std::string> trace;
};

namespace detail {

/// Rewrites Delta(g z) with the axioms S: Delta(-1/w) -> w^12 Delta(w) and T: Delta(w + k) -> Delta(w)
/// until g is upper triangular [[a, b], [0, d]] with a, d > 0, 0 <= b < d, and primitive entries.
inline ModularSymbolTerm normalize_delta(const IntMatrix& g0, std::vector<std::string>& trace) {
    Integer a = g0[0], b = g0[1], c = g0[2], d = g0[3];
    ModularSymbolTerm factor;
    auto arg = [&] { return affine_str(a, b, c, d); };
    while (c != 0) {
        if (c < 0) a = -a, b = -b, c = -c, d = -d;
        Integer k = floor_div(a, c);
        if (k != 0) {
            std::string before = arg();
            a -= k * c;
            b -= k * d;
            trace.push_back("T: Delta(" + before + ") -> Delta(" + arg() + ")");
        }
        // w = -1/w' with w' = (-cz - d)/(az + b); Delta(w) = w'^12 Delta(w') = (cz+d)^12 (az+b)^-12 Delta(w').
        std::string before = arg();
        factor = factor * ModularSymbolTerm::automorphy(c, d, 12) * ModularSymbolTerm::automorphy(a, b, -12);
        Integer na = -c, nb = -d;
        c = a;
        d = b;
        a = na;
        b = nb;
        trace.push_back("S: Delta(" + before + ") -> (" + affine_str(a, b, c, d) + ")^12 * Delta(" + arg() + ")");
    }
    if (d < 0) a = -a, b = -b, d = -d;
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    a /= g, b /= g, d /= g;
    Integer k = floor_div(b, d);
    if (k != 0) {
        std::string before = arg();
        b -= k * d;
        trace.push_back("T: Delta(" + before + ") -> Delta(" + arg() + ")");
    }
    factor.deltas[IntMatrix{a, b, Integer(0), d}] += 1;
    return factor;
}

} // namespace detail

/// Normal form of a term: every Delta argument reduced, automorphy factors collected.
inline RewriteResult normalize(const ModularSymbolTerm& t) {
    RewriteResult r;
    ModularSymbolTerm out = ModularSymbolTerm::scalar(t.constant);
    for (const auto& [r0, e] : t.linear) {
        ModularSymbolTerm lin;
        lin.linear[r0] = e;
        out = out * lin;
    }
    for (const auto& [m, e] : t.deltas) out = out * detail::normalize_delta(m, r.trace).pow(e);
    r.normal_form = out;
    return r;
}

/// Applies S once to Delta(-1/(-1/z)) by hand and reduces the rest: the result must be Delta(z).
inline bool delta_axiom_self_test() {
    // Delta(-1/w) with w = -1/z becomes w^12 Delta(w) = z^-12 Delta(-1/z).
    ModularSymbolTerm t = ModularSymbolTerm::automorphy(1, 0, -12) * ModularSymbolTerm::delta(MobiusMap(0, -1, 1, 0));
    return normalize(t).normal_form == ModularSymbolTerm::delta(MobiusMap::identity());
}

struct FunctionalEquationReport {
    bool passed = false;
    /// c with (f o w_p) * f = c, at the level of d-th powers.
    Rational constant;
    /// Exponent e with f o w_p = p^e f^-1.
    Rational p_exponent;
    std::string lhs_normal_form, rhs_normal_form;
    std::vector<std::string> trace;
};

/// u(-1/(pz))^d and p^-12 u(z)^-d reduce to the same normal form; hence u o w_p = p^(-12/d) u^-1.
inline FunctionalEquationReport verify_functional_equation_u(std::uint64_t p) {
    require_working_prime(p);
    const Rational P(static_cast<unsigned long>(p));
    const MobiusMap wp(0, -1, P, 0);
    FunctionalEquationReport rep;
    RewriteResult lhs = normalize(u_power_term(p, wp));
    RewriteResult base = normalize(u_power_term(p, MobiusMap::identity()).inverse());
    rep.trace = lhs.trace;
    rep.trace.insert(rep.trace.end(), base.trace.begin(), base.trace.end());
    // The constant that turns u^-d into u(w_p z)^d.
    ModularSymbolTerm ratio = normalize(u_power_term(p, wp) * u_power_term(p, MobiusMap::identity())).normal_form;
    rep.constant = ratio.constant;
    RewriteResult rhs = normalize(ModularSymbolTerm::scalar(rational_pow(P, -12)) * base.normal_form);
    rep.lhs_normal_form = lhs.normal_form.str();
    rep.rhs_normal_form = rhs.normal_form.str();
    const bool pure_power = ratio.is_constant() && ratio.constant == rational_pow(P, valuation(ratio.constant, p));
    rep.passed = pure_power && lhs.normal_form == rhs.normal_form;
    rep.p_exponent = make_rational(valuation(ratio.constant, p), d_of(p));
    return rep;
}

/// (mu o w_p)^d * mu^d reduces to p^-12, using that z -> (z+1)/2 commutes with w_p on X.
inline FunctionalEquationReport verify_functional_equation_mu(std::uint64_t p) {
    require_working_prime(p);
    const Rational P(static_cast<unsigned long>(p));
    const MobiusMap wp(0, -1, P, 0), half(1, 1, 0, 2), id = MobiusMap::identity();
    FunctionalEquationReport rep;
    // mu^d = U(pi' z)^2 U(z)^-1; composing with w_p and commuting: U(w_p pi' z)^2 U(w_p z)^-1.
    ModularSymbolTerm mu_d = u_power_term(p, half).pow(2) * u_power_term(p, id).inverse();
    ModularSymbolTerm mu_wp_d = u_power_term(p, wp * half).pow(2) * u_power_term(p, wp).inverse();
    rep.trace.push_back("axiom: U(pi'(w_p z)) = U(w_p(pi' z))");
    RewriteResult prod = normalize(mu_wp_d * mu_d);
    rep.trace.insert(rep.trace.end(), prod.trace.begin(), prod.trace.end());
    rep.constant = prod.normal_form.constant;
    rep.lhs_normal_form = prod.normal_form.str();
    rep.rhs_normal_form = rational_pow(P, -12).get_str();
    rep.passed = prod.normal_form == ModularSymbolTerm::scalar(rational_pow(P, -12));
    rep.p_exponent = prod.normal_form.is_constant() && prod.normal_form.constant != 0
                         ? make_rational(valuation(prod.normal_form.constant, p), d_of(p))
                         : Rational(0);
    return rep;
}

struct FourierMuResult {
    Rational coefficient;
    long exponent = 0;
    std::vector<std::string> steps;
};

/// Leading term of mu at the cusp 1 in q_1 = exp(i pi / (p (1 - z))).
/// With z = 1 + h: mu = u(h/2)^2 / u(h) = p^(-12/d) (u o w_p)(h) / (u o w_p)(h/2)^2, and
/// (u o w_p)(s h) starts with exp(-2 pi i / (p s h))^((p-1)/d) = q_1^(2 (p-1) / (d s)).
inline FourierMuResult verify_fourier_mu(std::uint64_t p) {
    FunctionalEquationReport fe = verify_functional_equation_u(p);
    if (!fe.passed) throw precondition_error("functional equation of u failed to normalize");
    if (fe.p_exponent.get_den() != 1) throw precondition_error("non-integral power of p in the functional equation");
    const long e_fe = to_long(fe.p_exponent.get_num());
    const Rational P(static_cast<unsigned long>(p));
    // u = p^e (u o w_p)^-1, so u(h/2)^2 / u(h) = p^(2e - e) (u o w_p)(h) / (u o w_p)(h/2)^2.
    QExpansion u = u_expansion(p, 1);
    const Rational lead = *u.leading_exponent();
    const Rational lead_coef = u.leading_coefficient().rational();
    FourierMuResult r;
    struct Piece {
        Rational s;
        long power;
    };
    Rational coefficient = rational_pow(P, 2 * e_fe - e_fe), exponent = 0;
    for (const Piece& pc : {Piece{Rational(1), 1}, Piece{Rational(1, 2), -2}}) {
        // exp(2 pi i (-1/(p s h))) = q_1^(2/s) because q_1 = exp(2 pi i (-1/(2 p h))).
        Rational q1_power = Rational(2) / pc.s;
        exponent += lead * q1_power * pc.power;
        coefficient *= rational_pow(lead_coef, pc.power);
        r.steps.push_back("(u o w_p)(" + pc.s.get_str() + "h)^" + std::to_string(pc.power) + " ~ q1^" +
                          Rational(lead * q1_power * pc.power).get_str());
    }
    if (exponent.get_den() != 1) throw precondition_error("non-integral q1 exponent");
    r.coefficient = coefficient;
    r.exponent = to_long(exponent.get_num());
    r.steps.push_back("constant p^" + std::to_string(e_fe) + " from u o w_p = p^" + fe.p_exponent.get_str() + " u^-1");
    return r;
}

} // namespace padic_periods

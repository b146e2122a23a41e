#pragma once

#include <map>
#include <string>
#include <vector>

#include "padic_periods/qseries/rewriter.hpp"

namespace padic_periods {

/// Gamma_0(p) intersected with +-Gamma(N); N = 1 gives Gamma_0(p) itself. For N = 3 this is the group K of
/// matrices that are diagonal (hence +-1) modulo 3.
struct CongruenceGroup {
    int N = 1;
    std::uint64_t p = 5;

    CongruenceGroup(int level, std::uint64_t prime) : N(level), p(prime) {
        if (N != 1 && N != 2 && N != 3) throw precondition_error("level must be 2 or 3, got " + std::to_string(N));
        require_working_prime(p);
    }

    bool contains(const IntMatrix& m) const {
        if (m[0] * m[3] - m[1] * m[2] != 1) return false;
        if (mod_small(m[2], p) != 0) return false;
        const std::uint64_t n = static_cast<std::uint64_t>(N);
        if (mod_small(m[1], n) != 0 || mod_small(m[2], n) != 0) return false;
        auto a = mod_small(m[0], n), d = mod_small(m[3], n);
        return a == d && (a == 1 % static_cast<long>(n) || a == static_cast<long>(n) - 1);
    }

    std::string label() const {
        std::string base = "Gamma0(" + std::to_string(p) + ")";
        return N == 1 ? base : base + " & Gamma(" + std::to_string(N) + ")";
    }
};

/// sigma in SL_2(Z) with sigma(cusp) = infinity; sigma^-1 = [[a, b], [c, d]] for cusp a/c.
inline IntMatrix scaling_matrix(const ProjectivePoint& cusp) {
    if (cusp.infinite) return {Integer(1), Integer(0), Integer(0), Integer(1)};
    Integer a = cusp.x.get_num(), c = cusp.x.get_den(), g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    // s a + t c = 1: sigma^-1 = [[a, -t], [c, s]].
    return {s, t, -c, a};
}

struct CuspData {
    int N = 2;
    std::uint64_t p = 5;
    ProjectivePoint cusp;
    long width = 0;
    IntMatrix sigma;

    /// q_s = exp(2 pi i sigma(z) / width).
    std::string local_parameter() const {
        return "exp(2*pi*i*(" + affine_str(sigma[0], sigma[1], sigma[2], sigma[3]) + ")/" + std::to_string(width) + ")";
    }
};

inline CuspData cusp_data(int N, std::uint64_t p, const ProjectivePoint& cusp) {
    CongruenceGroup grp(N, p);
    CuspData cd;
    cd.N = N;
    cd.p = p;
    cd.cusp = cusp;
    cd.sigma = scaling_matrix(cusp);
    const IntMatrix& s = cd.sigma;
    const IntMatrix sinv = {s[3], -s[1], -s[2], s[0]};
    const long bound = static_cast<long>(N * p);
    for (long h = 1; h <= bound; ++h) {
        IntMatrix conj = matmul(matmul(sinv, {Integer(1), Integer(h), Integer(0), Integer(1)}), s);
        if (grp.contains(conj) || grp.contains({-conj[0], -conj[1], -conj[2], -conj[3]})) {
            cd.width = h;
            return cd;
        }
    }
    throw precondition_error("no cusp width found up to " + std::to_string(bound));
}

inline long cusp_width(int N, std::uint64_t p, const ProjectivePoint& cusp) { return cusp_data(N, p, cusp).width; }

inline ProjectivePoint cusp_point(const Rational& x) { return ProjectivePoint::finite(x); }

/// Cusp representatives of X = Gamma0(p) & Gamma(N) \ H*: those above 0 first, then those above infinity.
inline std::vector<ProjectivePoint> cusps_of_x(int N, std::uint64_t p) {
    const Rational P(static_cast<unsigned long>(p));
    if (N == 2)
        return {cusp_point(1), cusp_point(Rational(1, 2)), cusp_point(0),
                cusp_point(1 / P), cusp_point(2 / P), ProjectivePoint::infinity()};
    if (N == 3)
        return {cusp_point(0), cusp_point(1), cusp_point(Rational(1, 3)), cusp_point(Rational(1, 2)),
                ProjectivePoint::infinity(), cusp_point(1 / P), cusp_point(2 / P), cusp_point(3 / P)};
    throw precondition_error("level must be 2 or 3, got " + std::to_string(N));
}

/// Representative (0 or infinity) of the Gamma_0(p)-class of a cusp.
inline ProjectivePoint gamma0_class(std::uint64_t p, const ProjectivePoint& y) {
    if (y.infinite) return y;
    return mod_small(y.x.get_den(), p) == 0 ? ProjectivePoint::infinity() : cusp_point(0);
}

/// gamma in Gamma_0(p) with gamma(y) = gamma0_class(y).
inline IntMatrix gamma0_reduction(std::uint64_t p, const ProjectivePoint& y) {
    if (y.infinite) return {Integer(1), Integer(0), Integer(0), Integer(1)};
    Integer a = y.x.get_num(), c = y.x.get_den(), g, s, t;
    const Integer P(static_cast<unsigned long>(p));
    if (mod_small(c, p) == 0) {
        // Bottom row (-c, a) kills y; top row (s, -t) with s a + t c = 1.
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        return {s, t, -c, a};
    }
    // Top row (c, -a) kills y; bottom row (p k, delta) with c delta + a p k = 1.
    Integer ap = a * P;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c.get_mpz_t(), ap.get_mpz_t());
    return {c, -a, t * P, s};
}

struct RamificationResult {
    ProjectivePoint source, image, target;
    long source_width = 0, target_width = 0;
    Rational scaling;  // alpha in sigma' gamma f sigma^-1 = (w -> alpha w + beta)
    long index = 0;
};

/// Ramification index at `source` of the map X -> X_0(p) induced by f.
inline RamificationResult ramification(int N, std::uint64_t p, const MobiusMap& f, const ProjectivePoint& source,
                                       std::optional<ProjectivePoint> expected_target = std::nullopt) {
    RamificationResult r;
    r.source = source;
    r.image = f.apply(source);
    r.target = gamma0_class(p, r.image);
    if (expected_target && !(*expected_target == r.target))
        throw precondition_error("map sends " + source.str() + " to the class of " + r.target.str() + ", not " +
                                 expected_target->str());
    CuspData src = cusp_data(N, p, source), tgt = cusp_data(1, p, r.target);
    IntMatrix gamma = gamma0_reduction(p, r.image);
    auto mob = [](const IntMatrix& m) { return MobiusMap(Rational(m[0]), Rational(m[1]), Rational(m[2]), Rational(m[3])); };
    const IntMatrix& s = src.sigma;
    MobiusMap comp = mob(tgt.sigma) * mob(gamma) * f * mob({s[3], -s[1], -s[2], s[0]});
    if (comp.c() != 0) throw precondition_error("composite of scalings is not affine: " + comp.str());
    r.scaling = make_rational(comp.a(), comp.d());
    r.source_width = src.width;
    r.target_width = tgt.width;
    Rational idx = r.scaling * src.width / tgt.width;
    if (idx <= 0 || idx.get_den() != 1) throw precondition_error("non-integral ramification index " + idx.get_str());
    r.index = to_long(idx.get_num());
    return r;
}

inline long ramification_index(int N, std::uint64_t p, const MobiusMap& f, const ProjectivePoint& source,
                               const ProjectivePoint& target) {
    return ramification(N, p, f, source, target).index;
}

/// Named maps X -> X_0(p): pi(z) = z and pi'(z) = (z+1)/2 for N = 2; pi_{-1} = z, pi_i = (z+i)/3, pi_3 = 3z for N = 3.
struct NamedMap {
    std::string name;
    MobiusMap map;
};

inline std::vector<NamedMap> level_maps(int N) {
    if (N == 2) return {{"pi", MobiusMap::identity()}, {"pi'", MobiusMap(1, 1, 0, 2)}};
    if (N == 3)
        return {{"pi_-1", MobiusMap::identity()}, {"pi_0", MobiusMap(1, 0, 0, 3)}, {"pi_1", MobiusMap(1, 1, 0, 3)},
                {"pi_2", MobiusMap(1, 2, 0, 3)}, {"pi_3", MobiusMap(3, 0, 0, 1)}};
    throw precondition_error("level must be 2 or 3, got " + std::to_string(N));
}

/// |SL_2(Z/N) / {+-1}| = N^3 prod_{l | N} (1 - 1/l^2) / #{+-1 mod N}: the degree of X -> X_0(p) for p not dividing N.
inline long level_map_degree(int N) {
    if (N != 2 && N != 3) throw precondition_error("level must be 2 or 3, got " + std::to_string(N));
    Rational order(N * N * N);
    for (int l = 2; l <= N; ++l) {
        bool prime = true;
        for (int k = 2; k < l; ++k) prime = prime && l % k != 0;
        if (prime && N % l == 0) order *= 1 - Rational(1, l * l);
    }
    return to_long(order.get_num()) / (N > 2 ? 2 : 1);
}

/// Divisor on cusps, keyed by the printed representative.
using CuspDivisor = std::map<std::string, long>;

/// f^*(D) for D a divisor on the cusps {0, inf} of X_0(p).
inline CuspDivisor pullback(int N, std::uint64_t p, const MobiusMap& f, const CuspDivisor& d) {
    CuspDivisor out;
    for (const auto& x : cusps_of_x(N, p)) {
        RamificationResult r = ramification(N, p, f, x);
        auto it = d.find(r.target.str());
        if (it == d.end() || it->second == 0) continue;
        out[x.str()] += r.index * it->second;
        if (out[x.str()] == 0) out.erase(x.str());
    }
    return out;
}

/// psi^* = 2 pi'^* - pi^* applied to (inf) - (0).
inline CuspDivisor correspondence_pullback(std::uint64_t p) {
    const CuspDivisor d{{"inf", 1}, {"0", -1}};
    CuspDivisor a = pullback(2, p, MobiusMap(1, 1, 0, 2), d), b = pullback(2, p, MobiusMap::identity(), d);
    CuspDivisor out;
    for (const auto& [k, v] : a) out[k] += 2 * v;
    for (const auto& [k, v] : b) out[k] -= v;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Sum of ramification indices over the cusps mapping to `target`.
inline long fiber_sum(int N, std::uint64_t p, const MobiusMap& f, const ProjectivePoint& target) {
    long s = 0;
    for (const auto& x : cusps_of_x(N, p)) {
        RamificationResult r = ramification(N, p, f, x);
        if (r.target == target) s += r.index;
    }
    return s;
}

struct LocalParameterRelation {
    std::string cusp, map;
    long expected = 0, computed = 0;
    bool passed() const { return expected == computed; }
};

/// The twelve relations q' o pi = q_x^e, q' o pi' = q_x^e' at the six cusps of X for N = 2.
inline std::vector<LocalParameterRelation> local_parameter_relations(std::uint64_t p) {
    const Rational P(static_cast<unsigned long>(p));
    struct Row {
        ProjectivePoint x;
        long e_pi, e_pi_prime;
    };
    const std::vector<Row> rows = {{cusp_point(1), 2, 4},     {cusp_point(1 / P), 2, 4}, {cusp_point(Rational(1, 2)), 2, 1},
                                   {cusp_point(2 / P), 2, 1}, {cusp_point(0), 2, 1},     {ProjectivePoint::infinity(), 2, 1}};
    std::vector<LocalParameterRelation> out;
    auto maps = level_maps(2);
    for (const Row& row : rows) {
        out.push_back({row.x.str(), maps[0].name, row.e_pi, ramification(2, p, maps[0].map, row.x).index});
        out.push_back({row.x.str(), maps[1].name, row.e_pi_prime, ramification(2, p, maps[1].map, row.x).index});
    }
    return out;
}

struct RamificationTableEntry {
    std::string cusp, map;
    long published = 0, computed = 0;
    bool mismatch() const { return published != computed; }
};

/// Ramification indices of the five level-3 maps at the cusps above 0, next to the published table.
inline std::vector<RamificationTableEntry> ramification_table(std::uint64_t p) {
    const std::vector<std::pair<Rational, std::vector<long>>> published = {
        {Rational(0), {3, 1, 1, 1, 9}},
        {Rational(1, 3), {3, 1, 1, 1, 9}},
        {Rational(1), {3, 1, 1, 9, 1}},
        {Rational(1, 2), {3, 1, 9, 1, 1}},
    };
    auto maps = level_maps(3);
    std::vector<RamificationTableEntry> out;
    for (const auto& [x, vals] : published) {
        for (std::size_t j = 0; j < maps.size(); ++j) {
            RamificationResult r = ramification(3, p, maps[j].map, cusp_point(x));
            out.push_back({x.get_str(), maps[j].name, vals[j], r.index});
        }
    }
    return out;
}

/// ord_x(mu) = 2 e_pi'(x) ord(u) - e_pi(x) ord(u), with ord(u) = (p-1)/d at inf and -(p-1)/d at 0 on X_0(p).
inline CuspDivisor mu_divisor(std::uint64_t p) {
    const long k = (static_cast<long>(p) - 1) / d_of(p);
    const CuspDivisor div_u{{"inf", k}, {"0", -k}};
    CuspDivisor a = pullback(2, p, MobiusMap(1, 1, 0, 2), div_u), b = pullback(2, p, MobiusMap::identity(), div_u);
    CuspDivisor out;
    for (const auto& [key, v] : a) out[key] += 2 * v;
    for (const auto& [key, v] : b) out[key] -= v;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

} // namespace padic_periods

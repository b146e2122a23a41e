#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "padic_periods/arith/integer.hpp"

namespace padic_periods {

/// A point of P^1(Q): a rational number or infinity.
struct ProjectivePoint {
    bool infinite = false;
    Rational x;

    static ProjectivePoint infinity() { return ProjectivePoint{true, Rational(0)}; }
    static ProjectivePoint finite(const Rational& x) { return ProjectivePoint{false, x}; }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.infinite == b.infinite && (a.infinite || a.x == b.x);
    }

    std::string str() const { return infinite ? "inf" : x.get_str(); }
};

/// Element of PGL_2(Q) acting by z -> (a z + b) / (c z + d).
///
/// Stored in canonical form: primitive integer entries, first nonzero entry positive.
/// Two maps are equal iff their canonical forms agree.
class MobiusMap {
public:
    MobiusMap() : MobiusMap(1, 0, 0, 1) {}

    MobiusMap(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
        if (a * d - b * c == 0) throw precondition_error("singular matrix is not a Mobius map");
        normalize({a, b, c, d});
    }

    static MobiusMap identity() { return MobiusMap(); }
    static MobiusMap diagonal(const Rational& x, const Rational& y) { return MobiusMap(x, 0, 0, y); }
    static MobiusMap translation(const Rational& t) { return MobiusMap(1, t, 0, 1); }

    const Integer& a() const { return e_[0]; }
    const Integer& b() const { return e_[1]; }
    const Integer& c() const { return e_[2]; }
    const Integer& d() const { return e_[3]; }

    Integer det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
    Integer trace() const { return e_[0] + e_[3]; }

    MobiusMap operator*(const MobiusMap& o) const {
        return MobiusMap(Rational(a() * o.a() + b() * o.c()), Rational(a() * o.b() + b() * o.d()),
                         Rational(c() * o.a() + d() * o.c()), Rational(c() * o.b() + d() * o.d()));
    }

    MobiusMap inverse() const { return MobiusMap(Rational(d()), Rational(-b()), Rational(-c()), Rational(a())); }

    MobiusMap pow(long n) const {
        MobiusMap base = n < 0 ? inverse() : *this;
        MobiusMap r;
        for (long i = 0; i < (n < 0 ? -n : n); ++i) r = r * base;
        return r;
    }

    ProjectivePoint apply(const ProjectivePoint& z) const {
        if (z.infinite) {
            if (c() == 0) return ProjectivePoint::infinity();
            return ProjectivePoint::finite(make_rational(a(), c()));
        }
        Rational num = Rational(a()) * z.x + Rational(b());
        Rational den = Rational(c()) * z.x + Rational(d());
        if (den == 0) return ProjectivePoint::infinity();
        Rational r = num / den;
        return ProjectivePoint::finite(r);
    }

    Rational apply(const Rational& z) const {
        ProjectivePoint w = apply(ProjectivePoint::finite(z));
        if (w.infinite) throw geometry_error("point is sent to infinity");
        return w.x;
    }

    /// The point sent to infinity, if finite.
    std::optional<Rational> pole() const {
        if (c() == 0) return std::nullopt;
        return make_rational(-d(), c());
    }

    friend bool operator==(const MobiusMap& x, const MobiusMap& y) { return x.e_ == y.e_; }

    std::string str() const {
        return "[[" + a().get_str() + "," + b().get_str() + "],[" + c().get_str() + "," + d().get_str() + "]]";
    }
    friend std::ostream& operator<<(std::ostream& os, const MobiusMap& m) { return os << m.str(); }

private:
    void normalize(std::array<Rational, 4> r) {
        Integer lcm = 1;
        for (auto& x : r) {
            x.canonicalize();
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        }
        Integer g = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            Rational s = r[i] * Rational(lcm);
            e_[i] = s.get_num();
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e_[i].get_mpz_t());
        }
        Integer sign = 1;
        for (const auto& x : e_) {
            if (x != 0) {
                sign = x < 0 ? -1 : 1;
                break;
            }
        }
        for (auto& x : e_) x = x / g * sign;
    }

    std::array<Integer, 4> e_;
};

/// v_p(tr^2 / det) < 0: eigenvalues of distinct valuation.
inline bool is_hyperbolic(const MobiusMap& m, std::uint64_t p) {
    if (m.trace() == 0) return false;
    return 2 * valuation(m.trace(), p) < valuation(m.det(), p);
}

/// |v(l_1) - v(l_2)| for the eigenvalues l_1, l_2 of a hyperbolic map.
inline long translation_length(const MobiusMap& m, std::uint64_t p) {
    if (!is_hyperbolic(m, p)) throw precondition_error("translation length of a non-hyperbolic map " + m.str());
    return valuation(m.det(), p) - 2L * valuation(m.trace(), p);
}

} // namespace padic_periods

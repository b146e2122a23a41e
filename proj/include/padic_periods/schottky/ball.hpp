#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "padic_periods/schottky/mobius.hpp"

namespace padic_periods {

/// A ball of P^1(C_p) with rational center.
///
/// The underlying disc is {z : v(z - center) >= radius_val} when closed and
/// {z : v(z - center) > radius_val} when open. With `complement` set the ball is the
/// complement of that disc in P^1, i.e. a ball around infinity.
struct Ball {
    Rational center;
    Rational radius_val;
    bool closed = true;
    bool complement = false;

    static Ball closed_disc(const Rational& c, const Rational& r) { return Ball{c, r, true, false}; }
    static Ball open_disc(const Rational& c, const Rational& r) { return Ball{c, r, false, false}; }

    Ball disc() const { return Ball{center, radius_val, closed, false}; }
    Ball complemented() const { return Ball{center, radius_val, closed, !complement}; }

    bool contains_infinity() const { return complement; }

    std::string str() const {
        std::string d = std::string(closed ? "D[" : "D(") + center.get_str() + ", " + radius_val.get_str() + (closed ? "]" : ")");
        return complement ? "P1 - " + d : d;
    }
};

namespace detail {

/// v(x - c) >= r (closed) or > r (open), with v(0) = +infinity.
inline bool disc_contains(const Ball& d, const Rational& x, std::uint64_t p) {
    Rational diff = x - d.center;
    if (diff == 0) return true;
    Rational v(valuation(diff, p));
    return d.closed ? v >= d.radius_val : v > d.radius_val;
}

/// Disc inclusion d1 subset of d2 (both plain discs).
inline bool disc_subset(const Ball& d1, const Ball& d2, std::uint64_t p) {
    if (!disc_contains(d2, d1.center, p)) return false;
    if (d1.radius_val > d2.radius_val) return true;
    if (d1.radius_val < d2.radius_val) return false;
    return d2.closed || !d1.closed;
}

/// Two ultrametric discs meet iff one contains the center of the other.
inline bool discs_meet(const Ball& d1, const Ball& d2, std::uint64_t p) {
    return disc_contains(d1, d2.center, p) || disc_contains(d2, d1.center, p);
}

inline Ball affine_image(const Ball& b, const Rational& scale, const Rational& shift, std::uint64_t p) {
    Ball r = b;
    r.center = scale * b.center + shift;
    r.radius_val = b.radius_val + valuation(scale, p);
    return r;
}

/// Image under z -> 1/z.
inline Ball inversion_image(const Ball& b, std::uint64_t p) {
    const Ball d = b.disc();
    Ball img;
    if (disc_contains(d, Rational(0), p)) {
        // {v(z) >= r} -> {v(w) <= -r} U {inf} = P1 - {v(w) > -r}
        img = Ball{Rational(0), -d.radius_val, !d.closed, true};
    } else {
        // Every point of d has valuation v(c); |1/z - 1/c| = |z - c| / |c|^2.
        Rational vc(valuation(d.center, p));
        img = Ball{1 / d.center, d.radius_val - 2 * vc, d.closed, false};
    }
    return b.complement ? img.complemented() : img;
}

} // namespace detail

inline bool ball_contains(const Ball& b, const ProjectivePoint& z, std::uint64_t p) {
    if (z.infinite) return b.complement;
    return detail::disc_contains(b, z.x, p) != b.complement;
}

inline bool ball_subset(const Ball& x, const Ball& y, std::uint64_t p) {
    if (!x.complement && !y.complement) return detail::disc_subset(x, y, p);
    if (!x.complement && y.complement) return !detail::discs_meet(x.disc(), y.disc(), p);
    if (x.complement && !y.complement) return false;
    return detail::disc_subset(y.disc(), x.disc(), p);
}

inline bool balls_equal(const Ball& x, const Ball& y, std::uint64_t p) {
    return x.complement == y.complement && ball_subset(x, y, p) && ball_subset(y, x, p);
}

inline bool balls_disjoint(const Ball& x, const Ball& y, std::uint64_t p) {
    if (!x.complement && !y.complement) return !detail::discs_meet(x, y, p);
    if (x.complement && y.complement) return false;
    const Ball& disc = x.complement ? y : x;
    const Ball& co = x.complement ? x : y;
    return detail::disc_subset(disc, co.disc(), p);
}

/// Exact image of a ball under a Mobius map.
///
/// Over C_p the image of a disc is always a disc or the complement of one, so the only
/// failure mode is a singular matrix, which MobiusMap already excludes.
inline Ball mobius_image_of_ball(const MobiusMap& m, const Ball& b, std::uint64_t p) {
    const Rational a(m.a()), bb(m.b()), c(m.c()), d(m.d());
    if (c == 0) return detail::affine_image(b, a / d, bb / d, p);
    // m(z) = a/c - det / (c^2 (z + d/c))
    Ball t = detail::affine_image(b, Rational(1), d / c, p);
    t = detail::inversion_image(t, p);
    Rational det(m.det());
    return detail::affine_image(t, -det / (c * c), a / c, p);
}

} // namespace padic_periods

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "padic_periods/schottky/mobius.hpp"

namespace padic_periods {

/// Vertex of the Bruhat-Tits tree of PGL_2(Q_p): the homothety class of the lattice spanned by
/// the columns of [[p^k, b], [0, 1]], with b a p-adic fraction reduced modulo p^k Z_p.
class TreeVertex {
public:
    /// Class of the lattice spanned by the columns (a, c) and (b, d).
    TreeVertex(const Rational& a, const Rational& b, const Rational& c, const Rational& d, std::uint64_t p) : p_(p) {
        if (a * d - b * c == 0) throw precondition_error("lattice basis is singular");
        canonicalize(a, b, c, d);
    }

    static TreeVertex standard(std::uint64_t p) { return TreeVertex(1, 0, 0, 1, p); }

    /// Class of m applied to the lattice.
    TreeVertex act(const MobiusMap& m) const {
        Rational a(m.a()), b(m.b()), c(m.c()), d(m.d());
        Rational x = a * pk_, y = a * b_ + b, z = c * pk_, w = c * b_ + d;
        return TreeVertex(x, y, z, w, p_);
    }

    std::uint64_t prime() const { return p_; }
    long level() const { return k_; }
    const Rational& offset() const { return b_; }

    /// Basis matrix entries (row major) of the canonical representative.
    std::array<Rational, 4> basis() const { return {pk_, b_, Rational(0), Rational(1)}; }

    friend bool operator==(const TreeVertex& x, const TreeVertex& y) {
        return x.p_ == y.p_ && x.k_ == y.k_ && x.b_ == y.b_;
    }

    std::string str() const { return "[[p^" + std::to_string(k_) + "," + b_.get_str() + "],[0,1]]"; }

private:
    void canonicalize(Rational a, Rational b, Rational c, Rational d) {
        // Column operations over Z_p: put the bottom entry of least valuation in column 2.
        auto v = [&](const Rational& x) { return x == 0 ? std::numeric_limits<long>::max() : valuation(x, p_); };
        if (v(c) < v(d)) {
            std::swap(a, b);
            std::swap(c, d);
        }
        // d != 0 now; clear c with col1 -= (c/d) col2, where c/d is p-integral.
        Rational t = c / d;
        a -= t * b;
        // Scale the lattice by 1/d, then make column 1 exactly p^k by a unit.
        Rational x = a / d, y = b / d;
        k_ = valuation(x, p_);
        pk_ = k_ >= 0 ? Rational(int_pow(p_, static_cast<unsigned long>(k_)))
                      : Rational(Integer(1), int_pow(p_, static_cast<unsigned long>(-k_)));
        b_ = reduce_offset(y);
    }

    /// Canonical representative N / p^e with 0 <= N < p^(k+e) of y modulo p^k Z_p.
    Rational reduce_offset(const Rational& y) const {
        if (y == 0) return 0;
        int vy = valuation(y, p_);
        if (vy >= k_) return 0;
        long e = vy < 0 ? -vy : 0;
        Integer pe = int_pow(p_, static_cast<unsigned long>(e));
        Integer modulus = int_pow(p_, static_cast<unsigned long>(k_ + e));
        Rational scaled = y * Rational(pe);  // p-integral
        Integer num = scaled.get_num(), den = scaled.get_den();
        Integer n = mod(num * inverse_mod(den, modulus), modulus);
        Rational r(n, pe);
        r.canonicalize();
        return r;
    }

    std::uint64_t p_;
    long k_ = 0;
    Rational pk_ = 1;
    Rational b_ = 0;
};

/// d(u, v) = v(det A) - 2 min v(A_ij) for A the change of basis between representatives.
inline long tree_distance(const TreeVertex& u, const TreeVertex& v) {
    if (u.prime() != v.prime()) throw precondition_error("tree vertices over different primes");
    const std::uint64_t p = u.prime();
    auto bu = u.basis(), bv = v.basis();
    // A = U^-1 V with U = [[a, b], [0, 1]], U^-1 = [[1/a, -b/a], [0, 1]].
    Rational a = bu[0], b = bu[1];
    std::array<Rational, 4> A = {bv[0] / a, (bv[1] - b) / a, Rational(0), Rational(1)};
    Rational det = A[0] * A[3] - A[1] * A[2];
    long min_v = std::numeric_limits<long>::max();
    for (const auto& x : A)
        if (x != 0) min_v = std::min<long>(min_v, valuation(x, p));
    return valuation(det, p) - 2 * min_v;
}

/// All vertices within distance r of the standard vertex.
inline std::vector<TreeVertex> tree_ball(std::uint64_t p, long r) {
    std::vector<TreeVertex> out{TreeVertex::standard(p)};
    std::vector<TreeVertex> frontier = out;
    for (long step = 0; step < r; ++step) {
        std::vector<TreeVertex> next;
        for (const TreeVertex& v : frontier) {
            auto b = v.basis();
            // Neighbours: the p + 1 index-p sublattices of the representative.
            std::vector<TreeVertex> nb;
            nb.emplace_back(b[0], b[1] * Rational(static_cast<unsigned long>(p)), b[2], b[3] * Rational(static_cast<unsigned long>(p)), p);
            for (std::uint64_t j = 0; j < p; ++j) {
                Rational jj(static_cast<unsigned long>(j));
                nb.emplace_back(b[0] * Rational(static_cast<unsigned long>(p)), b[0] * jj + b[1],
                                b[2] * Rational(static_cast<unsigned long>(p)), b[2] * jj + b[3], p);
            }
            for (const TreeVertex& w : nb) {
                if (std::find(out.begin(), out.end(), w) == out.end()) {
                    out.push_back(w);
                    next.push_back(w);
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

/// min over the given vertices of d(v, m v); equals the translation length when the axis of m
/// passes within the searched region.
inline long minimal_displacement(const MobiusMap& m, const std::vector<TreeVertex>& vertices) {
    long best = std::numeric_limits<long>::max();
    for (const TreeVertex& v : vertices) best = std::min(best, tree_distance(v, v.act(m)));
    return best;
}

} // namespace padic_periods

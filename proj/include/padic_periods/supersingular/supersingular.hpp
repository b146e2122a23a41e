#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "padic_periods/arith/fp2.hpp"
#include "padic_periods/supersingular/poly_fp2.hpp"

namespace padic_periods {

/// Deuring polynomial H_p(l) = sum_{i=0}^{m} C(m,i)^2 l^i, m = (p-1)/2, coefficients in F_p.
/// Its roots are exactly the Legendre parameters of supersingular curves y^2 = x(x-1)(x-l).
inline std::vector<std::uint64_t> deuring_polynomial(std::uint64_t p) {
    require_working_prime(p);
    const std::uint64_t m = (p - 1) / 2;
    std::vector<std::uint64_t> coeffs(m + 1);
    std::uint64_t binom = 1;
    for (std::uint64_t i = 0; i <= m; ++i) {
        if (i > 0) {
            binom = binom * ((m - i + 1) % p) % p;
            binom = binom * Fp2::pow_mod(i, p - 2, p) % p;
        }
        coeffs[i] = binom * binom % p;
    }
    return coeffs;
}

inline PolyFp2 deuring_polynomial_fp2(const Fp2Context& ctx) {
    std::vector<Fp2> c;
    for (std::uint64_t v : deuring_polynomial(ctx.p)) c.emplace_back(ctx, v, 0);
    return PolyFp2(ctx, std::move(c));
}

/// Supersingular Legendre parameters in canonical (lexicographic) order.
struct SupersingularSet {
    std::uint64_t p = 0;
    Fp2Context ctx;
    std::vector<Fp2> lambdas;
    /// frobenius_perm[i] = j iff lambdas[j] = lambdas[i]^p.
    std::vector<std::size_t> frobenius_perm;
    std::string order_key = "lex(a,b)";

    std::size_t size() const { return lambdas.size(); }

    /// Same points listed in the order lambdas[order[0]], lambdas[order[1]], ...
    SupersingularSet reordered(const std::vector<std::size_t>& order) const {
        if (order.size() != lambdas.size()) throw precondition_error("reorder: wrong permutation length");
        SupersingularSet s;
        s.p = p;
        s.ctx = ctx;
        s.order_key = "custom";
        std::vector<std::size_t> position(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            if (order[k] >= lambdas.size()) throw precondition_error("reorder: index out of range");
            s.lambdas.push_back(lambdas[order[k]]);
            position[order[k]] = k;
        }
        for (std::size_t k = 0; k < order.size(); ++k) s.frobenius_perm.push_back(position[frobenius_perm[order[k]]]);
        return s;
    }
};

namespace detail {

inline void split_roots(const PolyFp2& f, std::vector<Fp2>& out, std::uint64_t first_shift = 0) {
    const Fp2Context& ctx = f.context();
    if (f.degree() <= 0) return;
    if (f.degree() == 1) {
        out.push_back(-(f.coeff(0) / f.coeff(1)));
        return;
    }
    const Integer q = Integer(static_cast<unsigned long>(ctx.p)) * static_cast<unsigned long>(ctx.p);
    const Integer half = (q - 1) / 2;
    // Deterministic Cantor-Zassenhaus: shifts delta run through F_{p^2} in lexicographic order.
    // A factor split off by shift k is constant on the classes of every earlier shift, so the
    // recursion resumes at k + 1.
    for (std::uint64_t k = first_shift; k < ctx.p * ctx.p; ++k) {
        PolyFp2 shifted(ctx, {Fp2(ctx, k / ctx.p, k % ctx.p), Fp2::one(ctx)});
        PolyFp2 w = PolyFp2::powmod(shifted, half, f) - PolyFp2(ctx, {Fp2::one(ctx)});
        PolyFp2 g = PolyFp2::gcd(f, w);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_roots(g, out, k + 1);
            split_roots(f / g, out, k + 1);
            return;
        }
    }
    throw precondition_error("root splitting failed: polynomial is not a product of distinct linear factors");
}

} // namespace detail

/// All distinct roots in F_{p^2} of a polynomial, sorted.
inline std::vector<Fp2> roots_in_fp2(const PolyFp2& f) {
    const Fp2Context& ctx = f.context();
    PolyFp2 monic = f.monic();
    const Integer q = Integer(static_cast<unsigned long>(ctx.p)) * static_cast<unsigned long>(ctx.p);
    PolyFp2 x(ctx, {Fp2::zero(ctx), Fp2::one(ctx)});
    PolyFp2 xq = PolyFp2::powmod(x, q, monic);
    PolyFp2 split_part = PolyFp2::gcd(monic, xq - x);
    std::vector<Fp2> roots;
    detail::split_roots(split_part, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline std::vector<std::size_t> frobenius_permutation(const std::vector<Fp2>& lambdas) {
    std::vector<std::size_t> perm(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        Fp2 image = lambdas[i].frobenius();
        auto it = std::find(lambdas.begin(), lambdas.end(), image);
        if (it == lambdas.end()) throw precondition_error("root set is not Frobenius stable");
        perm[i] = static_cast<std::size_t>(it - lambdas.begin());
    }
    return perm;
}

inline SupersingularSet supersingular_lambdas(std::uint64_t p) {
    SupersingularSet s;
    s.ctx = Fp2Context::for_prime(p);
    s.p = p;
    s.lambdas = roots_in_fp2(deuring_polynomial_fp2(s.ctx));
    if (s.lambdas.size() != (p - 1) / 2) {
        throw precondition_error("Deuring polynomial does not split into distinct factors over F_p^2 for p = " +
                                 std::to_string(p));
    }
    s.frobenius_perm = frobenius_permutation(s.lambdas);
    return s;
}

/// j = 2^8 (l^2 - l + 1)^3 / (l^2 (1 - l)^2).
inline Fp2 lambda_to_j(const Fp2& lam) {
    const Fp2Context& ctx = lam.context();
    Fp2 one = Fp2::one(ctx);
    if (lam.is_zero() || lam == one) throw precondition_error("lambda_to_j: lambda in {0, 1} is a pole");
    Fp2 num = lam * lam - lam + one;
    num = num * num * num * Fp2(ctx, 256, 0);
    Fp2 den = lam * lam * (one - lam) * (one - lam);
    return num / den;
}

} // namespace padic_periods

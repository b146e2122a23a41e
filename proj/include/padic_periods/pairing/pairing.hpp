#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "padic_periods/arith/residual.hpp"
#include "padic_periods/supersingular/supersingular.hpp"

namespace padic_periods {

/// Residual period pairing on Z[S] x Z[S], values in K^x / U_1(K).
///
/// For supersingular points e_i with Legendre parameters l_i:
///   <e_i, e_j> = (l_i - l_j)^(p+1)                          for i != j,
///   <e_i, e_i> = p * prod_{k != i} (l_i - l_k)^-(p+1).
struct PairingMatrix {
    std::uint64_t p = 0;
    SupersingularSet basis;
    std::vector<std::vector<ResidualClass>> entries;
    /// gcd(p - 1, 12)
    int d = 0;

    std::size_t size() const { return entries.size(); }
    const ResidualClass& operator()(std::size_t i, std::size_t j) const { return entries[i][j]; }
};

/// Element of Z[S] in the basis order of a SupersingularSet.
struct DivisorOnS {
    std::vector<std::int64_t> coefficients;

    std::int64_t degree() const { return std::accumulate(coefficients.begin(), coefficients.end(), std::int64_t{0}); }

    static DivisorOnS point(std::size_t size, std::size_t i) {
        DivisorOnS d{std::vector<std::int64_t>(size, 0)};
        d.coefficients.at(i) = 1;
        return d;
    }

    /// The Eisenstein element: sum of all supersingular points.
    static DivisorOnS eisenstein(std::size_t size) { return DivisorOnS{std::vector<std::int64_t>(size, 1)}; }

    DivisorOnS operator-(const DivisorOnS& o) const {
        DivisorOnS r = *this;
        for (std::size_t i = 0; i < r.coefficients.size(); ++i) r.coefficients[i] -= o.coefficients.at(i);
        return r;
    }
    DivisorOnS operator+(const DivisorOnS& o) const {
        DivisorOnS r = *this;
        for (std::size_t i = 0; i < r.coefficients.size(); ++i) r.coefficients[i] += o.coefficients.at(i);
        return r;
    }
};

inline int twelve_gcd(std::uint64_t p) { return static_cast<int>(std::gcd<std::uint64_t>(p - 1, 12)); }

inline PairingMatrix pairing_matrix_from_basis(const SupersingularSet& basis) {
    PairingMatrix m;
    m.p = basis.p;
    m.basis = basis;
    m.d = twelve_gcd(basis.p);
    const std::int64_t e = static_cast<std::int64_t>(basis.p) + 1;
    const std::size_t n = basis.size();
    const Fp2Context& ctx = basis.ctx;
    std::vector<std::vector<Fp2>> norms(n, std::vector<Fp2>(n, Fp2::one(ctx)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Fp2 v = (basis.lambdas[i] - basis.lambdas[j]).pow(e);
            norms[i][j] = v;
            norms[j][i] = v;  // (-1)^(p+1) = 1
        }
    }
    m.entries.assign(n, std::vector<ResidualClass>(n, ResidualClass::identity(ctx)));
    for (std::size_t i = 0; i < n; ++i) {
        Fp2 diag = Fp2::one(ctx);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            m.entries[i][k] = ResidualClass(0, norms[i][k]);
            diag *= norms[i][k];
        }
        m.entries[i][i] = ResidualClass(1, diag.inverse());
    }
    return m;
}

inline PairingMatrix build_pairing_matrix(std::uint64_t p) { return pairing_matrix_from_basis(supersingular_lambdas(p)); }

/// Bilinear extension: prod_{i,j} entries[i][j]^(a_i b_j).
inline ResidualClass pair_divisors(const PairingMatrix& m, const DivisorOnS& a, const DivisorOnS& b) {
    if (a.coefficients.size() != m.size() || b.coefficients.size() != m.size()) {
        throw precondition_error("divisor length does not match the pairing matrix");
    }
    ResidualClass acc = ResidualClass::identity(m.basis.ctx);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (a.coefficients[i] == 0) continue;
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::int64_t k = a.coefficients[i] * b.coefficients[j];
            if (k != 0) acc *= m(i, j).pow(k);
        }
    }
    return acc;
}

/// <e_i, e_hat> equals the class of p for every i.
inline bool eisenstein_check(const PairingMatrix& m) {
    const ResidualClass p_class = ResidualClass::uniformizer(m.basis.ctx);
    for (std::size_t i = 0; i < m.size(); ++i) {
        ResidualClass row = ResidualClass::identity(m.basis.ctx);
        for (std::size_t j = 0; j < m.size(); ++j) row *= m(i, j);
        if (row != p_class) return false;
    }
    return true;
}

/// Gram matrix of val o <.,.> on the basis {e_i - e_0}, i = 1..g (1x1 block [2] when g = 1).
inline std::vector<std::vector<std::int64_t>> valuation_gram(const PairingMatrix& m) {
    const std::size_t n = m.size();
    if (n < 2) return {};
    std::vector<std::vector<std::int64_t>> gram(n - 1, std::vector<std::int64_t>(n - 1));
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
            gram[i - 1][j - 1] = m(i, j).val() - m(i, 0).val() - m(0, j).val() + m(0, 0).val();
        }
    }
    return gram;
}

namespace detail {

/// Fraction-free (Bareiss) elimination without pivoting. pivots[k] is the leading (k+1)x(k+1)
/// minor as long as every earlier pivot is nonzero. T is int64 (overflow-checked) or Integer.
template <typename T>
bool bareiss_pivots(std::vector<std::vector<T>> m, std::vector<T>& pivots) {
    const std::size_t n = m.size();
    T prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        pivots.push_back(m[k][k]);
        if (m[k][k] == 0) return k + 1 == n;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if constexpr (std::is_same_v<T, std::int64_t>) {
                    std::int64_t x, y, z;
                    if (__builtin_mul_overflow(m[i][j], m[k][k], &x) || __builtin_mul_overflow(m[i][k], m[k][j], &y) ||
                        __builtin_sub_overflow(x, y, &z)) {
                        throw std::overflow_error("bareiss");
                    }
                    m[i][j] = z / prev;
                } else {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
        }
        prev = m[k][k];
    }
    return true;
}

inline std::vector<Integer> leading_minors_slow(const std::vector<std::vector<std::int64_t>>& a);

} // namespace detail

/// Leading principal minors; all positive iff the symmetric matrix is positive definite.
inline std::vector<Integer> leading_minors(const std::vector<std::vector<std::int64_t>>& a) {
    std::vector<Integer> out;
    try {
        std::vector<std::int64_t> piv;
        if (detail::bareiss_pivots(a, piv) && piv.size() == a.size()) {
            for (auto v : piv) out.emplace_back(static_cast<long>(v));
            return out;
        }
    } catch (const std::overflow_error&) {
    }
    std::vector<std::vector<Integer>> big(a.size(), std::vector<Integer>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) big[i][j] = Integer(static_cast<long>(a[i][j]));
    std::vector<Integer> piv;
    if (detail::bareiss_pivots(big, piv) && piv.size() == a.size()) return piv;
    return detail::leading_minors_slow(a);
}

/// Exact determinant by fraction-free elimination with row pivoting.
inline Integer integer_determinant(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    try {
        std::vector<std::int64_t> piv;
        if (detail::bareiss_pivots(a, piv) && piv.size() == n) return Integer(static_cast<long>(piv.back()));
    } catch (const std::overflow_error&) {
    }
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Integer(static_cast<long>(a[i][j]));
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline std::vector<Integer> detail::leading_minors_slow(const std::vector<std::vector<std::int64_t>>& a) {
    std::vector<Integer> minors;
    for (std::size_t k = 1; k <= a.size(); ++k) {
        std::vector<std::vector<std::int64_t>> sub(k, std::vector<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][j];
        minors.push_back(integer_determinant(sub));
    }
    return minors;
}

/// Galois equivariance: phi(res <e_i,e_j>) = res <e_si, e_sj> with s the Frobenius permutation.
inline bool frobenius_equivariance_check(const PairingMatrix& m) {
    const auto& s = m.basis.frobenius_perm;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            const ResidualClass& x = m(i, j);
            const ResidualClass& y = m(s[i], s[j]);
            if (x.val() != y.val() || x.res().frobenius() != y.res()) return false;
        }
    }
    return true;
}

/// Every residue lies in F_p^x.
inline bool rationality_check(const PairingMatrix& m) {
    for (const auto& row : m.entries)
        for (const auto& c : row)
            if (!c.res().in_prime_field()) return false;
    return true;
}

inline bool symmetry_check(const PairingMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

/// Entrywise (12/d)-th power.
inline std::vector<std::vector<ResidualClass>> twelfth_power_table(const PairingMatrix& m) {
    const std::int64_t k = 12 / m.d;
    std::vector<std::vector<ResidualClass>> t;
    for (const auto& row : m.entries) {
        std::vector<ResidualClass> r;
        for (const auto& c : row) r.push_back(c.pow(k));
        t.push_back(std::move(r));
    }
    return t;
}

} // namespace padic_periods

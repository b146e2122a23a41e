#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "padic_periods/pairing/pairing.hpp"

using namespace padic_periods;

namespace {

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo; n < hi; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

ResidualClass rc(const Fp2Context& ctx, std::int64_t v, std::uint64_t a, std::uint64_t b = 0) {
    return ResidualClass(v, Fp2(ctx, a, b));
}

// Monodromy pairing of the graph with two vertices joined by g+1 edges:
// an edge cycle e_i - e_0 meets e_j - e_0 in edge 0 always and edge i when i = j.
std::int64_t monodromy(std::size_t i, std::size_t j) { return i == j ? 2 : 1; }

} // namespace

TEST(PairingMatrix, WorkedInstanceP5) {
    auto m = build_pairing_matrix(5);
    auto ctx = m.basis.ctx;
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.d, 4);
    EXPECT_EQ(m(0, 0), rc(ctx, 1, 2));
    EXPECT_EQ(m(0, 1), rc(ctx, 0, 3));
    EXPECT_EQ(m(1, 0), rc(ctx, 0, 3));
    EXPECT_EQ(m(1, 1), rc(ctx, 1, 2));
    auto e = DivisorOnS::point(2, 1) - DivisorOnS::point(2, 0);
    EXPECT_EQ(pair_divisors(m, e, e), rc(ctx, 2, 1));
    EXPECT_EQ(pair_divisors(m, DivisorOnS{{0, 0}}, e), ResidualClass::identity(ctx));
    EXPECT_EQ(valuation_gram(m), (std::vector<std::vector<std::int64_t>>{{2}}));
}

TEST(PairingMatrix, WorkedInstanceP7) {
    auto m = build_pairing_matrix(7);
    auto ctx = m.basis.ctx;
    EXPECT_EQ(m(0, 0), rc(ctx, 1, 1));
    EXPECT_EQ(m(0, 1), rc(ctx, 0, 4));
    EXPECT_EQ(pair_divisors(m, DivisorOnS::point(3, 0), DivisorOnS::eisenstein(3)), ResidualClass::uniformizer(ctx));
    auto gram = valuation_gram(m);
    EXPECT_EQ(gram, (std::vector<std::vector<std::int64_t>>{{2, 1}, {1, 2}}));
    EXPECT_EQ(integer_determinant(gram), 3);
}

TEST(PairingMatrix, HandFormulaOracle) {
    // Recompute every entry with naive exponentiation by repeated multiplication.
    for (std::uint64_t p : primes_between(5, 40)) {
        auto m = build_pairing_matrix(p);
        auto ctx = m.basis.ctx;
        const auto& l = m.basis.lambdas;
        auto naive_pow = [&](Fp2 x, std::uint64_t k) {
            Fp2 r = Fp2::one(ctx);
            for (std::uint64_t i = 0; i < k; ++i) r *= x;
            return r;
        };
        for (std::size_t i = 0; i < l.size(); ++i) {
            Fp2 diag = Fp2::one(ctx);
            for (std::size_t j = 0; j < l.size(); ++j) {
                if (i == j) continue;
                Fp2 v = naive_pow(l[i] - l[j], p + 1);
                EXPECT_EQ(m(i, j), ResidualClass(0, v));
                diag *= v;
            }
            EXPECT_EQ(m(i, i), ResidualClass(1, diag.inverse()));
        }
    }
}

TEST(PairingMatrix, ChecksHoldForAllPrimesBelow500) {
    for (std::uint64_t p : primes_between(5, 500)) {
        auto m = build_pairing_matrix(p);
        EXPECT_EQ(m.d, static_cast<int>(std::gcd<std::uint64_t>(p - 1, 12)));
        EXPECT_TRUE(symmetry_check(m)) << p;
        EXPECT_TRUE(eisenstein_check(m)) << p;
        EXPECT_TRUE(rationality_check(m)) << p;
        EXPECT_TRUE(frobenius_equivariance_check(m)) << p;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m(i, j).val(), i == j ? 1 : 0);
        auto gram = valuation_gram(m);
        const std::size_t g = m.size() - 1;
        ASSERT_EQ(gram.size(), g);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) EXPECT_EQ(gram[i][j], monodromy(i, j));
        auto minors = leading_minors(gram);
        for (std::size_t k = 0; k < minors.size(); ++k) EXPECT_EQ(minors[k], Integer(static_cast<long>(k + 2)));
        EXPECT_EQ(integer_determinant(gram), Integer(static_cast<long>(g + 1)));
    }
}

TEST(PairingMatrix, TwelfthPowerTable) {
    auto m5 = build_pairing_matrix(5);
    auto t5 = twelfth_power_table(m5);
    EXPECT_EQ(t5[0][1], rc(m5.basis.ctx, 0, 2));
    EXPECT_EQ(t5[0][0], rc(m5.basis.ctx, 3, 3));
    auto m7 = build_pairing_matrix(7);
    EXPECT_EQ(twelfth_power_table(m7)[0][1], rc(m7.basis.ctx, 0, 2));
    auto m13 = build_pairing_matrix(13);
    EXPECT_EQ(twelfth_power_table(m13), m13.entries);
    // Powered Eisenstein identity: prod_j entry^(12/d) = p^(12/d).
    for (std::uint64_t p : primes_between(5, 100)) {
        auto m = build_pairing_matrix(p);
        auto t = twelfth_power_table(m);
        for (const auto& row : t) {
            ResidualClass acc = ResidualClass::identity(m.basis.ctx);
            for (const auto& c : row) acc *= c;
            EXPECT_EQ(acc, ResidualClass::uniformizer(m.basis.ctx).pow(12 / m.d));
        }
    }
}

TEST(PairDivisors, BilinearSymmetricAndDegreeZeroShape) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (std::uint64_t p : primes_between(5, 200)) {
        auto m = build_pairing_matrix(p);
        const std::size_t n = m.size();
        auto random_divisor = [&](bool degree_zero) {
            DivisorOnS d{std::vector<std::int64_t>(n)};
            for (auto& c : d.coefficients) c = coeff(rng);
            if (degree_zero) d.coefficients[0] -= d.degree();
            return d;
        };
        for (int trial = 0; trial < 3; ++trial) {
            auto a = random_divisor(false), b = random_divisor(false), c = random_divisor(false);
            EXPECT_EQ(pair_divisors(m, a, b), pair_divisors(m, b, a));
            EXPECT_EQ(pair_divisors(m, a + c, b), pair_divisors(m, a, b) * pair_divisors(m, c, b));
            auto x = random_divisor(true), y = random_divisor(true);
            ResidualClass v = pair_divisors(m, x, y);
            EXPECT_TRUE(v.res().in_prime_field());
            // Valuation equals the monodromy pairing, expanded in the basis e_i - e_0.
            std::int64_t expected = 0;
            for (std::size_t i = 1; i < n; ++i)
                for (std::size_t j = 1; j < n; ++j) expected += x.coefficients[i] * y.coefficients[j] * monodromy(i, j);
            EXPECT_EQ(v.val(), expected);
        }
    }
}

TEST(PairingMatrix, PermutationEquivariance) {
    std::mt19937_64 rng(99);
    for (std::uint64_t p : {5, 7, 11, 13, 17, 29, 41}) {
        auto basis = supersingular_lambdas(p);
        auto m = pairing_matrix_from_basis(basis);
        std::vector<std::size_t> order(basis.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto mp = pairing_matrix_from_basis(basis.reordered(order));
        for (std::size_t i = 0; i < order.size(); ++i)
            for (std::size_t j = 0; j < order.size(); ++j) EXPECT_EQ(mp(i, j), m(order[i], order[j]));
        EXPECT_TRUE(frobenius_equivariance_check(mp));
        EXPECT_TRUE(eisenstein_check(mp));
    }
}

TEST(PairDivisors, RejectsWrongLength) {
    auto m = build_pairing_matrix(7);
    EXPECT_THROW(pair_divisors(m, DivisorOnS{{1, 0}}, DivisorOnS{{1, 0, 0}}), precondition_error);
}

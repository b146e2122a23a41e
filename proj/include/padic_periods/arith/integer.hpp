#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "padic_periods/errors.hpp"

namespace padic_periods {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Primes accepted throughout: p >= 5 and small enough that residues multiply in 64 bits.
inline void require_working_prime(std::uint64_t p) {
    if (p < 5) throw precondition_error("prime must be >= 5, got " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 31)) throw precondition_error("prime too large: " + std::to_string(p));
    if (!is_prime(p)) throw precondition_error(std::to_string(p) + " is not prime");
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer int_pow(std::uint64_t base, unsigned long e) { return int_pow(Integer(static_cast<unsigned long>(base)), e); }

/// Nonnegative remainder.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::int64_t mod_small(const Integer& a, std::uint64_t m) {
    return static_cast<std::int64_t>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m)));
}

/// v_p(x) for x != 0.
inline int valuation(const Integer& x, std::uint64_t p) {
    if (x == 0) throw precondition_error("valuation of zero");
    Integer rest;
    Integer prime(static_cast<unsigned long>(p));
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

inline int valuation(const Rational& x, std::uint64_t p) {
    if (x == 0) throw precondition_error("valuation of zero");
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

/// v_p(x), or nullopt for x == 0 (valuation +infinity).
inline std::optional<int> valuation_or_inf(const Rational& x, std::uint64_t p) {
    if (x == 0) return std::nullopt;
    return valuation(x, p);
}

inline Integer inverse_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw precondition_error("element not invertible modulo " + m.get_str());
    }
    return r;
}

/// Parses "a", "-a", "a/b" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw precondition_error("cannot parse rational '" + s + "'");
    r.canonicalize();
    if (r.get_den() == 0) throw precondition_error("zero denominator in '" + s + "'");
    return r;
}

/// num / den in lowest terms with positive denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw precondition_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_pow(const Rational& x, long e) {
    Rational r;
    Integer num = x.get_num();
    Integer den = x.get_den();
    unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    if (e < 0) {
        if (x == 0) throw precondition_error("zero to a negative power");
        std::swap(num, den);
    }
    r = Rational(int_pow(num, ae), int_pow(den, ae));
    r.canonicalize();
    return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline long to_long(const Integer& x) {
    if (!x.fits_slong_p()) throw precondition_error("integer out of range: " + x.get_str());
    return x.get_si();
}

} // namespace padic_periods

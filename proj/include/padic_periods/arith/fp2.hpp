#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "padic_periods/arith/integer.hpp"

namespace padic_periods {

/// Model of F_{p^2} as F_p[x]/(x^2 - n), n the least positive quadratic nonresidue.
struct Fp2Context {
    std::uint64_t p = 0;
    std::uint64_t n = 0;

    static Fp2Context for_prime(std::uint64_t p) {
        require_working_prime(p);
        // Euler's criterion; 2 is a nonresidue for p = 3, 5 mod 8 so the scan is short.
        for (std::uint64_t c = 2; c < p; ++c) {
            std::uint64_t r = 1, base = c, e = (p - 1) / 2;
            while (e > 0) {
                if (e & 1) r = r * base % p;
                base = base * base % p;
                e >>= 1;
            }
            if (r == p - 1) return Fp2Context{p, c};
        }
        throw precondition_error("no quadratic nonresidue found");
    }

    friend bool operator==(const Fp2Context&, const Fp2Context&) = default;
};

class Fp2 {
public:
    Fp2() = default;

    Fp2(const Fp2Context& ctx, std::uint64_t a, std::uint64_t b) : ctx_(ctx), a_(a % ctx.p), b_(b % ctx.p) {}

    static Fp2 from_integers(const Fp2Context& ctx, const Integer& a, const Integer& b) {
        return Fp2(ctx, static_cast<std::uint64_t>(mod_small(a, ctx.p)), static_cast<std::uint64_t>(mod_small(b, ctx.p)));
    }

    static Fp2 zero(const Fp2Context& ctx) { return Fp2(ctx, 0, 0); }
    static Fp2 one(const Fp2Context& ctx) { return Fp2(ctx, 1, 0); }
    static Fp2 generator_x(const Fp2Context& ctx) { return Fp2(ctx, 0, 1); }

    const Fp2Context& context() const { return ctx_; }
    std::uint64_t p() const { return ctx_.p; }
    std::uint64_t a() const { return a_; }
    std::uint64_t b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool in_prime_field() const { return b_ == 0; }

    Fp2 operator+(const Fp2& o) const {
        check(o);
        return Fp2(ctx_, (a_ + o.a_) % ctx_.p, (b_ + o.b_) % ctx_.p);
    }
    Fp2 operator-(const Fp2& o) const {
        check(o);
        return Fp2(ctx_, (a_ + ctx_.p - o.a_) % ctx_.p, (b_ + ctx_.p - o.b_) % ctx_.p);
    }
    Fp2 operator-() const { return Fp2(ctx_, (ctx_.p - a_) % ctx_.p, (ctx_.p - b_) % ctx_.p); }
    Fp2 operator*(const Fp2& o) const {
        check(o);
        const std::uint64_t p = ctx_.p;
        std::uint64_t bb = b_ * o.b_ % p;
        std::uint64_t re = (a_ * o.a_ % p + ctx_.n * bb % p) % p;
        std::uint64_t im = (a_ * o.b_ % p + b_ * o.a_ % p) % p;
        return Fp2(ctx_, re, im);
    }
    Fp2 operator/(const Fp2& o) const { return *this * o.inverse(); }
    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

    /// a^2 - n b^2, the norm to F_p.
    std::uint64_t norm() const {
        const std::uint64_t p = ctx_.p;
        return (a_ * a_ % p + p - ctx_.n * (b_ * b_ % p) % p) % p;
    }

    Fp2 conjugate() const { return Fp2(ctx_, a_, (ctx_.p - b_) % ctx_.p); }

    /// x^p = -x because x^{p-1} = n^{(p-1)/2} = -1.
    Fp2 frobenius() const { return conjugate(); }

    Fp2 inverse() const {
        if (is_zero()) throw precondition_error("inverse of zero in F_p^2");
        std::uint64_t nrm = norm();
        std::uint64_t inv = pow_mod(nrm, ctx_.p - 2, ctx_.p);
        Fp2 c = conjugate();
        return Fp2(ctx_, c.a_ * inv % ctx_.p, c.b_ * inv % ctx_.p);
    }

    Fp2 pow(const Integer& e) const {
        if (e < 0) return inverse().pow(-e);
        Fp2 result = one(ctx_);
        Fp2 base = *this;
        Integer k = e;
        while (k > 0) {
            if (mpz_odd_p(k.get_mpz_t())) result *= base;
            base *= base;
            k >>= 1;
        }
        return result;
    }
    Fp2 pow(std::int64_t e) const { return pow(Integer(static_cast<long>(e))); }

    friend bool operator==(const Fp2& x, const Fp2& y) { return x.ctx_ == y.ctx_ && x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Fp2& x, const Fp2& y) { return !(x == y); }

    /// Lexicographic on (a, b); the canonical order of supersingular points.
    friend std::strong_ordering operator<=>(const Fp2& x, const Fp2& y) {
        if (auto c = x.a_ <=> y.a_; c != 0) return c;
        return x.b_ <=> y.b_;
    }

    std::string str() const {
        if (b_ == 0) return std::to_string(a_);
        return std::to_string(a_) + "+" + std::to_string(b_) + "x";
    }

    friend std::ostream& operator<<(std::ostream& os, const Fp2& e) { return os << e.str(); }

    static std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1 % m;
        base %= m;
        while (e > 0) {
            if (e & 1) r = r * base % m;
            base = base * base % m;
            e >>= 1;
        }
        return r;
    }

private:
    void check(const Fp2& o) const {
        if (!(ctx_ == o.ctx_)) throw precondition_error("mixing F_p^2 elements from different fields");
    }

    Fp2Context ctx_{};
    std::uint64_t a_ = 0;
    std::uint64_t b_ = 0;
};

/// fp2_make: canonical element a + b x of F_{p^2}.
inline Fp2 fp2_make(std::uint64_t p, const Integer& a, const Integer& b) {
    return Fp2::from_integers(Fp2Context::for_prime(p), a, b);
}

inline Fp2 fp2_frobenius(const Fp2& e) { return e.frobenius(); }

} // namespace padic_periods

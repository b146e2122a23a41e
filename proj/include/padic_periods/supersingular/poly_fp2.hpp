#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "padic_periods/arith/fp2.hpp"

namespace padic_periods {

/// Dense univariate polynomial over F_{p^2}, coefficients low degree first, no trailing zeros.
class PolyFp2 {
public:
    explicit PolyFp2(const Fp2Context& ctx) : ctx_(ctx) {}
    PolyFp2(const Fp2Context& ctx, std::vector<Fp2> coeffs) : ctx_(ctx), c_(std::move(coeffs)) { trim(); }

    static PolyFp2 monomial(const Fp2Context& ctx, const Fp2& coeff, std::size_t degree) {
        std::vector<Fp2> c(degree + 1, Fp2::zero(ctx));
        c[degree] = coeff;
        return PolyFp2(ctx, std::move(c));
    }

    const Fp2Context& context() const { return ctx_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const std::vector<Fp2>& coeffs() const { return c_; }
    Fp2 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fp2::zero(ctx_); }
    Fp2 leading() const { return c_.empty() ? Fp2::zero(ctx_) : c_.back(); }

    Fp2 evaluate(const Fp2& x) const {
        Fp2 acc = Fp2::zero(ctx_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    PolyFp2 operator+(const PolyFp2& o) const {
        std::vector<Fp2> r(std::max(c_.size(), o.c_.size()), Fp2::zero(ctx_));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
        return PolyFp2(ctx_, std::move(r));
    }

    PolyFp2 operator-(const PolyFp2& o) const {
        std::vector<Fp2> r(std::max(c_.size(), o.c_.size()), Fp2::zero(ctx_));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
        return PolyFp2(ctx_, std::move(r));
    }

    PolyFp2 operator*(const PolyFp2& o) const {
        if (is_zero() || o.is_zero()) return PolyFp2(ctx_);
        const std::uint64_t p = ctx_.p, n = ctx_.n;
        const std::size_t len = c_.size() + o.c_.size() - 1;
        // Residues are below 2^31, so products fit in 62 bits; accumulate in 128 bits, reduce once.
        std::vector<unsigned __int128> re(len, 0), im(len, 0), nb(len, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const std::uint64_t a = c_[i].a(), b = c_[i].b();
            if (a == 0 && b == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                const std::uint64_t c = o.c_[j].a(), d = o.c_[j].b();
                re[i + j] += a * c;
                nb[i + j] += b * d;
                im[i + j] += static_cast<unsigned __int128>(a * d) + b * c;
            }
        }
        std::vector<Fp2> r;
        r.reserve(len);
        for (std::size_t k = 0; k < len; ++k) r.push_back(collapse(re[k], im[k], nb[k], p, n));
        return PolyFp2(ctx_, std::move(r));
    }

    /// Quotient and remainder.
    std::pair<PolyFp2, PolyFp2> divmod(const PolyFp2& d) const {
        if (d.is_zero()) throw precondition_error("polynomial division by zero");
        if (degree() < d.degree()) return {PolyFp2(ctx_), *this};
        const std::uint64_t p = ctx_.p, n = ctx_.n;
        const std::size_t dn = d.c_.size();
        std::vector<unsigned __int128> re(c_.size()), im(c_.size()), nb(c_.size(), 0);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            re[k] = c_[k].a();
            im[k] = c_[k].b();
        }
        // Subtract q * d_j by adding q * (-d_j).
        std::vector<std::uint64_t> da(dn), db(dn);
        for (std::size_t j = 0; j < dn; ++j) {
            da[j] = (p - d.c_[j].a()) % p;
            db[j] = (p - d.c_[j].b()) % p;
        }
        std::vector<Fp2> quo(c_.size() - dn + 1, Fp2::zero(ctx_));
        const Fp2 inv_lead = d.leading().inverse();
        for (long i = degree() - d.degree(); i >= 0; --i) {
            const std::size_t top = static_cast<std::size_t>(i) + dn - 1;
            Fp2 q = collapse(re[top], im[top], nb[top], p, n) * inv_lead;
            quo[static_cast<std::size_t>(i)] = q;
            if (q.is_zero()) continue;
            const std::uint64_t qa = q.a(), qb = q.b();
            for (std::size_t j = 0; j + 1 < dn; ++j) {
                const std::size_t k = static_cast<std::size_t>(i) + j;
                re[k] += qa * da[j];
                nb[k] += qb * db[j];
                im[k] += static_cast<unsigned __int128>(qa * db[j]) + qb * da[j];
            }
        }
        std::vector<Fp2> rem;
        for (std::size_t k = 0; k + 1 < dn; ++k) rem.push_back(collapse(re[k], im[k], nb[k], p, n));
        return {PolyFp2(ctx_, std::move(quo)), PolyFp2(ctx_, std::move(rem))};
    }

    PolyFp2 operator%(const PolyFp2& d) const { return divmod(d).second; }
    PolyFp2 operator/(const PolyFp2& d) const { return divmod(d).first; }

    PolyFp2 monic() const {
        if (is_zero()) return *this;
        Fp2 inv = leading().inverse();
        std::vector<Fp2> r = c_;
        for (auto& x : r) x *= inv;
        return PolyFp2(ctx_, std::move(r));
    }

    /// base^e mod m for e >= 0 given as a big integer.
    static PolyFp2 powmod(const PolyFp2& base, const Integer& e, const PolyFp2& m) {
        PolyFp2 result(base.ctx_, {Fp2::one(base.ctx_)});
        result = result % m;
        PolyFp2 b = base % m;
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = (result * result) % m;
            if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
        }
        return result;
    }

    static PolyFp2 gcd(PolyFp2 a, PolyFp2 b) {
        while (!b.is_zero()) {
            PolyFp2 r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    friend bool operator==(const PolyFp2& x, const PolyFp2& y) { return x.ctx_ == y.ctx_ && x.c_ == y.c_; }

private:
    /// (re + n * nb) + im * x reduced mod p.
    Fp2 collapse(unsigned __int128 re, unsigned __int128 im, unsigned __int128 nb, std::uint64_t p,
                 std::uint64_t n) const {
        const std::uint64_t bd = static_cast<std::uint64_t>(nb % p);
        return Fp2(ctx_, static_cast<std::uint64_t>((re + bd * n) % p), static_cast<std::uint64_t>(im % p));
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Fp2Context ctx_;
    std::vector<Fp2> c_;
};

} // namespace padic_periods

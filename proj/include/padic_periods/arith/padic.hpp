#pragma once

#include <algorithm>
#include <string>

#include "padic_periods/arith/fp2.hpp"
#include "padic_periods/arith/residual.hpp"

namespace padic_periods {

/// Element of the unramified quadratic extension K = Q_p(x), x^2 = n, known modulo p^M.
///
/// Stored as p^val * (a + b x) with a + b x a unit known modulo p^(M - val). An element
/// that is 0 modulo p^M is kept as an inexact zero of absolute precision M. Every
/// operation returns the largest precision the operands provably determine.
class PadicElement {
public:
    static PadicElement zero(const Fp2Context& ctx, int abs_prec) {
        PadicElement e(ctx);
        e.zero_ = true;
        e.val_ = abs_prec;
        e.prec_ = abs_prec;
        return e;
    }

    /// a + b x known modulo p^abs_prec.
    static PadicElement from_integers(const Fp2Context& ctx, const Integer& a, const Integer& b, int abs_prec) {
        return normalized(ctx, 0, a, b, abs_prec);
    }

    static PadicElement from_rational(const Fp2Context& ctx, const Rational& r, int abs_prec) {
        if (r == 0) return zero(ctx, abs_prec);
        int v = padic_periods::valuation(r, ctx.p);
        if (v >= abs_prec) return zero(ctx, abs_prec);
        Integer pe = int_pow(ctx.p, static_cast<unsigned long>(abs_prec - v));
        Integer num = r.get_num();
        Integer den = r.get_den();
        if (v > 0) num /= int_pow(ctx.p, static_cast<unsigned long>(v));
        if (v < 0) den /= int_pow(ctx.p, static_cast<unsigned long>(-v));
        Integer unit = mod(num * inverse_mod(den, pe), pe);
        PadicElement e(ctx);
        e.val_ = v;
        e.prec_ = abs_prec;
        e.a_ = unit;
        e.b_ = 0;
        return e;
    }

    /// The root of unity of order dividing p^2 - 1 reducing to r.
    static PadicElement teichmuller(const Fp2& r, int abs_prec) {
        const Fp2Context& ctx = r.context();
        if (r.is_zero()) return zero(ctx, abs_prec);
        if (abs_prec < 1) throw precondition_error("teichmuller lift needs precision >= 1");
        PadicElement y = from_integers(ctx, Integer(static_cast<unsigned long>(r.a())),
                                       Integer(static_cast<unsigned long>(r.b())), abs_prec);
        const long q = static_cast<long>(ctx.p * ctx.p);
        // y -> y^q contracts towards the lift; one p-adic digit per step.
        for (int i = 1; i < abs_prec; ++i) y = y.pow(q);
        return y;
    }

    const Fp2Context& context() const { return ctx_; }
    bool is_zero() const { return zero_; }
    int valuation() const { return val_; }
    int precision() const { return prec_; }
    int relative_precision() const { return zero_ ? 0 : prec_ - val_; }
    const Integer& unit_a() const { return a_; }
    const Integer& unit_b() const { return b_; }
    bool in_base_field() const { return zero_ || b_ == 0; }

    PadicElement operator-() const {
        if (zero_) return *this;
        Integer m = modulus();
        return make(ctx_, val_, prec_, mod(-a_, m), mod(-b_, m));
    }

    PadicElement operator+(const PadicElement& o) const {
        check(o);
        int prec = std::min(prec_, o.prec_);
        if (zero_ && o.zero_) return zero(ctx_, prec);
        if (zero_) return o.with_precision(prec);
        if (o.zero_) return with_precision(prec);
        int base = std::min(val_, o.val_);
        if (base >= prec) return zero(ctx_, prec);
        Integer m = int_pow(ctx_.p, static_cast<unsigned long>(prec - base));
        Integer s1 = int_pow(ctx_.p, static_cast<unsigned long>(val_ - base));
        Integer s2 = int_pow(ctx_.p, static_cast<unsigned long>(o.val_ - base));
        Integer a = mod(a_ * s1 + o.a_ * s2, m);
        Integer b = mod(b_ * s1 + o.b_ * s2, m);
        return normalized(ctx_, base, a, b, prec);
    }

    PadicElement operator-(const PadicElement& o) const { return *this + (-o); }

    PadicElement operator*(const PadicElement& o) const {
        check(o);
        if (zero_ || o.zero_) {
            int prec = zero_ && o.zero_ ? prec_ + o.prec_ : (zero_ ? prec_ + o.val_ : o.prec_ + val_);
            return zero(ctx_, prec);
        }
        int val = val_ + o.val_;
        int rel = std::min(relative_precision(), o.relative_precision());
        Integer m = int_pow(ctx_.p, static_cast<unsigned long>(rel));
        Integer n(static_cast<unsigned long>(ctx_.n));
        Integer a = mod(a_ * o.a_ + n * b_ * o.b_, m);
        Integer b = mod(a_ * o.b_ + b_ * o.a_, m);
        return make(ctx_, val, val + rel, a, b);
    }

    PadicElement inverse() const {
        if (zero_) throw precision_error("inverse of an element indistinguishable from zero");
        int rel = relative_precision();
        Integer m = int_pow(ctx_.p, static_cast<unsigned long>(rel));
        Integer n(static_cast<unsigned long>(ctx_.n));
        Integer nrm = mod(a_ * a_ - n * b_ * b_, m);
        Integer inv = inverse_mod(nrm, m);
        return make(ctx_, -val_, -val_ + rel, mod(a_ * inv, m), mod(-b_ * inv, m));
    }

    PadicElement operator/(const PadicElement& o) const { return *this * o.inverse(); }

    PadicElement pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        if (k == 0) {
            if (zero_) throw precision_error("0^0 is undefined for an inexact zero");
            return make(ctx_, 0, relative_precision(), Integer(1), Integer(0));
        }
        PadicElement result = *this;
        PadicElement base = *this;
        long e = k - 1;
        while (e > 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    /// Same value known to a smaller absolute precision.
    PadicElement with_precision(int abs_prec) const {
        if (abs_prec >= prec_) return *this;
        if (zero_ || val_ >= abs_prec) return zero(ctx_, abs_prec);
        Integer m = int_pow(ctx_.p, static_cast<unsigned long>(abs_prec - val_));
        return make(ctx_, val_, abs_prec, mod(a_, m), mod(b_, m));
    }

    /// True when the two elements agree modulo p^k (k at most both precisions).
    bool agrees_modulo(const PadicElement& o, int k) const {
        PadicElement d = with_precision(k) - o.with_precision(k);
        return d.is_zero();
    }

    /// Image under O_K -> F_{p^2}.
    Fp2 reduce() const {
        if (zero_) {
            if (prec_ < 1) throw precision_error("reduction needs precision >= 1");
            return Fp2::zero(ctx_);
        }
        if (val_ < 0) throw precondition_error("reduction of an element with negative valuation");
        if (prec_ < 1) throw precision_error("reduction needs precision >= 1");
        if (val_ > 0) return Fp2::zero(ctx_);
        return Fp2::from_integers(ctx_, a_, b_);
    }

    /// (v_K(e), reduction of e * p^{-v_K(e)}).
    ResidualClass residual() const {
        if (zero_) throw precision_error("element indistinguishable from zero at precision " + std::to_string(prec_));
        return ResidualClass(val_, Fp2::from_integers(ctx_, a_, b_));
    }

    std::string str() const {
        if (zero_) return "O(p^" + std::to_string(prec_) + ")";
        std::string unit = a_.get_str();
        if (b_ != 0) unit += "+" + b_.get_str() + "x";
        return "p^" + std::to_string(val_) + "*(" + unit + ") + O(p^" + std::to_string(prec_) + ")";
    }

private:
    explicit PadicElement(const Fp2Context& ctx) : ctx_(ctx) {}

    static PadicElement make(const Fp2Context& ctx, int val, int prec, Integer a, Integer b) {
        PadicElement e(ctx);
        e.val_ = val;
        e.prec_ = prec;
        e.a_ = std::move(a);
        e.b_ = std::move(b);
        return e;
    }

    /// p^base * (a + b x) with a, b integers, known modulo p^prec.
    static PadicElement normalized(const Fp2Context& ctx, int base, Integer a, Integer b, int prec) {
        if (base >= prec) return zero(ctx, prec);
        Integer m = int_pow(ctx.p, static_cast<unsigned long>(prec - base));
        a = mod(a, m);
        b = mod(b, m);
        if (a == 0 && b == 0) return zero(ctx, prec);
        int va = a == 0 ? prec - base : padic_periods::valuation(a, ctx.p);
        int vb = b == 0 ? prec - base : padic_periods::valuation(b, ctx.p);
        int shift = std::min(va, vb);
        if (shift > 0) {
            Integer ps = int_pow(ctx.p, static_cast<unsigned long>(shift));
            a /= ps;
            b /= ps;
        }
        return make(ctx, base + shift, prec, a, b);
    }

    Integer modulus() const { return int_pow(ctx_.p, static_cast<unsigned long>(prec_ - val_)); }

    void check(const PadicElement& o) const {
        if (!(ctx_ == o.ctx_)) throw precondition_error("mixing p-adic elements over different primes");
    }

    Fp2Context ctx_;
    bool zero_ = false;
    int val_ = 0;
    int prec_ = 0;
    Integer a_;
    Integer b_;
};

inline Fp2 padic_reduce(const PadicElement& e) { return e.reduce(); }
inline ResidualClass residual_of(const PadicElement& e) { return e.residual(); }

} // namespace padic_periods

#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "padic_periods/arith/fp2.hpp"

namespace padic_periods {

/// Element p^val * res * U_1(K) of K^x / U_1(K), which is isomorphic to Z x F_{p^2}^x.
class ResidualClass {
public:
    ResidualClass(std::int64_t val, const Fp2& res) : val_(val), res_(res) {
        if (res.is_zero()) throw precondition_error("residual class needs a nonzero residue");
    }

    static ResidualClass identity(const Fp2Context& ctx) { return ResidualClass(0, Fp2::one(ctx)); }
    static ResidualClass uniformizer(const Fp2Context& ctx) { return ResidualClass(1, Fp2::one(ctx)); }

    std::int64_t val() const { return val_; }
    const Fp2& res() const { return res_; }

    ResidualClass operator*(const ResidualClass& o) const { return ResidualClass(val_ + o.val_, res_ * o.res_); }
    ResidualClass& operator*=(const ResidualClass& o) { return *this = *this * o; }

    ResidualClass inverse() const { return ResidualClass(-val_, res_.inverse()); }

    ResidualClass pow(std::int64_t k) const { return ResidualClass(val_ * k, res_.pow(k)); }

    bool is_identity() const { return val_ == 0 && res_.is_one(); }

    friend bool operator==(const ResidualClass& x, const ResidualClass& y) { return x.val_ == y.val_ && x.res_ == y.res_; }
    friend bool operator!=(const ResidualClass& x, const ResidualClass& y) { return !(x == y); }

    std::string str() const { return "(" + std::to_string(val_) + ", " + res_.str() + ")"; }
    friend std::ostream& operator<<(std::ostream& os, const ResidualClass& c) { return os << c.str(); }

private:
    std::int64_t val_;
    Fp2 res_;
};

inline ResidualClass residual_mul(const ResidualClass& x, const ResidualClass& y) { return x * y; }
inline ResidualClass residual_inv(const ResidualClass& x) { return x.inverse(); }
inline ResidualClass residual_pow(const ResidualClass& x, std::int64_t k) { return x.pow(k); }

} // namespace padic_periods

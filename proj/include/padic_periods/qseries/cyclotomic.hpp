#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "padic_periods/arith/integer.hpp"

namespace padic_periods {

/// Element of Q(zeta_12) in the power basis 1, z, z^2, z^3 with z^4 = z^2 - 1.
/// Q(zeta_3) = Q(zeta_6) is the span of {1, z^2} and Q(i) the span of {1, z^3}.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(const Rational& r) : c_{r, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(long r) : c_{Rational(r), 0, 0, 0} {}   // NOLINT(google-explicit-constructor)
    explicit Cyclotomic(std::array<Rational, 4> c) : c_(std::move(c)) {}

    /// zeta_12^k.
    static Cyclotomic zeta12(long k) {
        k %= 12;
        if (k < 0) k += 12;
        Cyclotomic r(1), z(std::array<Rational, 4>{0, 1, 0, 0});
        for (long i = 0; i < k; ++i) r *= z;
        return r;
    }

    /// exp(2 pi i * r) for r with 12 r integral.
    static Cyclotomic root_of_unity(const Rational& r) {
        Rational t = r * 12;
        if (t.get_den() != 1) throw field_error("exp(2 pi i * " + r.get_str() + ") is not in Q(zeta_12)");
        return zeta12(mod_small(t.get_num(), 12));
    }

    const Rational& coord(std::size_t i) const { return c_.at(i); }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    /// Least m in {1, 3, 4, 12} with the element in Q(zeta_m).
    int conductor() const {
        if (is_rational()) return 1;
        if (c_[1] == 0 && c_[3] == 0) return 3;
        if (c_[1] == 0 && c_[2] == 0) return 4;
        return 12;
    }

    /// Whether the element lies in Q(zeta_m).
    bool in_field(int m) const {
        int c = conductor();
        if (c == 1) return true;
        if (m == 12) return true;
        if (c == 3) return m == 3 || m == 6;
        if (c == 4) return m == 4;
        return false;
    }

    const Rational& rational() const {
        if (!is_rational()) throw field_error("coefficient " + str() + " is not rational");
        return c_[0];
    }

    Cyclotomic operator-() const { return Cyclotomic({-c_[0], -c_[1], -c_[2], -c_[3]}); }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Cyclotomic& operator-=(const Cyclotomic& o) {
        for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Cyclotomic& operator*=(const Cyclotomic& o) {
        if (o.is_rational()) {
            for (auto& x : c_) x *= o.c_[0];
            return *this;
        }
        if (is_rational()) {
            Rational s = c_[0];
            *this = o;
            for (auto& x : c_) x *= s;
            return *this;
        }
        std::array<Rational, 7> prod;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) prod[i + j] += c_[i] * o.c_[j];
        // z^k = z^(k-2) - z^(k-4) for k >= 4.
        for (std::size_t k = 6; k >= 4; --k) {
            prod[k - 2] += prod[k];
            prod[k - 4] -= prod[k];
        }
        c_ = {prod[0], prod[1], prod[2], prod[3]};
        return *this;
    }

    Cyclotomic inverse() const {
        if (is_zero()) throw precondition_error("inverse of zero in Q(zeta_12)");
        if (is_rational()) return Cyclotomic(1 / c_[0]);
        // x * sigma_5(x) * sigma_7(x) * sigma_11(x) is the norm; the product of the three conjugates is x^-1 * N(x).
        Cyclotomic prod = conjugate(5) * conjugate(7) * conjugate(11);
        Cyclotomic norm = *this * prod;
        return prod * Cyclotomic(1 / norm.rational());
    }

    /// Galois conjugate zeta_12 -> zeta_12^k, k coprime to 12.
    Cyclotomic conjugate(int k) const {
        Cyclotomic r;
        for (int i = 0; i < 4; ++i) r += zeta12(static_cast<long>(k) * i) * Cyclotomic(c_[static_cast<std::size_t>(i)]);
        return r;
    }

    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.c_ == b.c_; }

    Cyclotomic pow(long e) const {
        Cyclotomic base = e < 0 ? inverse() : *this, r(1);
        for (unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e); n; n >>= 1) {
            if (n & 1) r *= base;
            base *= base;
        }
        return r;
    }

    /// Rational: "a"; Q(zeta_3): "a+b*zeta3"; Q(i): "a+b*i"; otherwise the zeta12 power basis.
    std::string str() const {
        switch (conductor()) {
            case 1: return c_[0].get_str();
            case 3: {
                // a + b z^2 with z^2 = zeta3 + 1.
                return join({{c_[0] + c_[2], ""}, {c_[2], "zeta3"}});
            }
            case 4: return join({{c_[0], ""}, {c_[3], "i"}});
            default: return join({{c_[0], ""}, {c_[1], "zeta12"}, {c_[2], "zeta12^2"}, {c_[3], "zeta12^3"}});
        }
    }

private:
    static std::string join(const std::vector<std::pair<Rational, std::string>>& parts) {
        std::string s;
        for (const auto& [coef, sym] : parts) {
            if (coef == 0) continue;
            const Rational mag = abs(coef);
            std::string piece = sym.empty() ? mag.get_str() : (mag == 1 ? sym : mag.get_str() + "*" + sym);
            if (s.empty()) s = (coef < 0 ? "-" : "") + piece;
            else s += (coef < 0 ? "-" : "+") + piece;
        }
        return s.empty() ? "0" : s;
    }

    std::array<Rational, 4> c_{};
};

} // namespace padic_periods

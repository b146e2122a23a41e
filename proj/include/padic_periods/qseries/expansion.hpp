#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padic_periods/qseries/cyclotomic.hpp"

namespace padic_periods {

/// The series variable t = exp(2 pi i * scale * argument), with argument a named function of z.
struct SeriesVariable {
    Rational scale = 1;
    std::string argument = "z";

    friend bool operator==(const SeriesVariable&, const SeriesVariable&) = default;

    std::string str() const { return "exp(2*pi*i*(" + scale.get_str() + ")*" + argument + ")"; }
};

/// Largest exponent denominator any expansion may carry.
inline constexpr long max_exponent_denominator = 1728;

/// Truncated Puiseux series sum c_e t^e + O(t^order) with rational exponents and coefficients in Q(zeta_12).
class QExpansion {
public:
    using Terms = std::map<Rational, Cyclotomic>;

    QExpansion() = default;
    QExpansion(SeriesVariable var, Rational order) : var_(std::move(var)), order_(std::move(order)) {}

    static QExpansion from_terms(SeriesVariable var, const Terms& terms, Rational order) {
        QExpansion f(std::move(var), std::move(order));
        for (const auto& [e, c] : terms)
            if (e < f.order_) f.add_term(e, c);
        return f;
    }

    static QExpansion monomial(SeriesVariable var, const Cyclotomic& c, const Rational& e, Rational order) {
        return from_terms(std::move(var), {{e, c}}, std::move(order));
    }

    const SeriesVariable& variable() const { return var_; }
    const Rational& order() const { return order_; }
    const Terms& terms() const { return terms_; }

    Cyclotomic coefficient(const Rational& e) const {
        if (e >= order_) throw precision_error("coefficient of t^" + e.get_str() + " is beyond the truncation order " + order_.get_str());
        auto it = terms_.find(e);
        return it == terms_.end() ? Cyclotomic() : it->second;
    }

    /// Rational coefficients of t^first, ..., t^(first+count-1).
    std::vector<Rational> rational_coefficients(long first, long count) const {
        std::vector<Rational> out;
        for (long k = first; k < first + count; ++k) out.push_back(coefficient(Rational(k)).rational());
        return out;
    }

    std::optional<Rational> leading_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }

    Cyclotomic leading_coefficient() const {
        if (terms_.empty()) throw precision_error("series has no known nonzero term");
        return terms_.begin()->second;
    }

    /// Leading exponent, or the truncation order when no term is known.
    Rational valuation() const { return terms_.empty() ? order_ : terms_.begin()->first; }

    /// Number of known exponents past the leading one.
    Rational relative_order() const { return order_ - valuation(); }

    int conductor() const {
        int m = 1;
        for (const auto& [e, c] : terms_) {
            int k = c.conductor();
            if (k == m || k == 1) continue;
            m = (m == 1) ? k : 12;
        }
        return m;
    }

    /// Throws field_error unless every coefficient lies in Q(zeta_m).
    const QExpansion& require_field(int m) const {
        for (const auto& [e, c] : terms_)
            if (!c.in_field(m))
                throw field_error("coefficient " + c.str() + " of t^" + e.get_str() + " lies outside Q(zeta_" + std::to_string(m) + ")");
        return *this;
    }

    QExpansion truncated(const Rational& order) const {
        QExpansion f(var_, order < order_ ? order : order_);
        for (const auto& [e, c] : terms_)
            if (e < f.order_) f.terms_.emplace(e, c);
        return f;
    }

    QExpansion operator-() const {
        QExpansion f(var_, order_);
        for (const auto& [e, c] : terms_) f.terms_.emplace(e, -c);
        return f;
    }

    QExpansion operator+(const QExpansion& o) const {
        require_same_variable(o);
        QExpansion f(var_, order_ < o.order_ ? order_ : o.order_);
        for (const auto* src : {&terms_, &o.terms_})
            for (const auto& [e, c] : *src)
                if (e < f.order_) f.add_term(e, c);
        return f;
    }

    QExpansion operator-(const QExpansion& o) const { return *this + (-o); }

    QExpansion operator*(const QExpansion& o) const {
        require_same_variable(o);
        Rational ord1 = valuation() + o.order_, ord2 = o.valuation() + order_;
        QExpansion f(var_, ord1 < ord2 ? ord1 : ord2);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                Rational e = e1 + e2;
                if (e >= f.order_) continue;
                f.add_term(e, c1 * c2);
            }
        }
        return f;
    }

    QExpansion scaled(const Cyclotomic& s) const {
        QExpansion f(var_, order_);
        if (s.is_zero()) return f;
        for (const auto& [e, c] : terms_) f.terms_.emplace(e, c * s);
        return f;
    }

    /// Multiplication by t^k.
    QExpansion shifted(const Rational& k) const {
        QExpansion f(var_, order_ + k);
        for (const auto& [e, c] : terms_) f.terms_.emplace(e + k, c);
        f.check_denominators();
        return f;
    }

    QExpansion inverse() const {
        Cyclotomic c;
        Rational v;
        QExpansion h;
        split_leading(c, v, h);
        const Rational rel = order_ - v;
        // 1/(1+h) = sum (-h)^k, truncated at relative order rel.
        QExpansion g = one(rel), term = one(rel), minus_h = -h;
        while (true) {
            term = (term * minus_h).truncated(rel);
            if (term.terms_.empty()) break;
            g = g + term;
        }
        return g.scaled(c.inverse()).shifted(-v);
    }

    QExpansion operator/(const QExpansion& o) const { return *this * o.inverse(); }

    QExpansion pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        QExpansion base = *this, r = one_like();
        for (unsigned long k = static_cast<unsigned long>(n); k; k >>= 1) {
            if (k & 1) r = r * base;
            if (k > 1) base = base * base;
        }
        return r;
    }

    /// Principal d-th root: requires leading coefficient 1 after removing the leading monomial.
    QExpansion root(unsigned long d) const {
        if (d == 0) throw precondition_error("zeroth root");
        Cyclotomic c;
        Rational v;
        QExpansion h;
        split_leading(c, v, h);
        if (!(c == Cyclotomic(1))) throw field_error("d-th root needs leading coefficient 1, got " + c.str());
        const Rational rel = order_ - v, alpha(1, d);
        QExpansion g = one(rel), term = one(rel);
        Rational binom = 1;
        for (unsigned long k = 1;; ++k) {
            term = (term * h).truncated(rel);
            if (term.terms_.empty()) break;
            binom *= (alpha - static_cast<long>(k) + 1) / Rational(static_cast<long>(k));
            g = g + term.scaled(binom);
        }
        Rational lead = v / static_cast<long>(d);
        return g.shifted(lead);
    }

    /// f(a z + b) for a > 0: the variable scale becomes scale * a and each t^e picks up exp(2 pi i scale e b).
    QExpansion compose_affine(const Rational& a, const Rational& b) const {
        if (a <= 0) throw precondition_error("affine substitution needs a positive scaling");
        SeriesVariable nv{var_.scale * a, var_.argument};
        QExpansion f(nv, order_);
        for (const auto& [e, c] : terms_) f.add_term(e, c * Cyclotomic::root_of_unity(var_.scale * e * b));
        return f;
    }

    /// The same function written in the variable of the given scale.
    QExpansion in_scale(const Rational& scale) const {
        if (scale <= 0) throw precondition_error("variable scale must be positive");
        Rational r = var_.scale / scale;
        QExpansion f(SeriesVariable{scale, var_.argument}, order_ * r);
        for (const auto& [e, c] : terms_) f.terms_.emplace(e * r, c);
        f.check_denominators();
        return f;
    }

    friend bool operator==(const QExpansion& a, const QExpansion& b) {
        return a.var_ == b.var_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    /// Equality of all coefficients below min(order, both truncation orders).
    bool agrees_with(const QExpansion& o, std::optional<Rational> upto = std::nullopt) const {
        require_same_variable(o);
        Rational lim = order_ < o.order_ ? order_ : o.order_;
        if (upto && *upto < lim) lim = *upto;
        return truncated(lim).terms_ == o.truncated(lim).terms_;
    }

    std::string str(std::size_t max_terms = 8) const {
        std::string s;
        std::size_t n = 0;
        for (const auto& [e, c] : terms_) {
            if (n++ == max_terms) {
                s += " + ...";
                break;
            }
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")*t^" + e.get_str();
        }
        return (s.empty() ? "0" : s) + " + O(t^" + order_.get_str() + ")";
    }

private:
    /// f = c t^v (1 + h), with h in exponents relative to v.
    void split_leading(Cyclotomic& c, Rational& v, QExpansion& h) const {
        if (terms_.empty()) throw precision_error("series has no known nonzero term");
        v = terms_.begin()->first;
        c = terms_.begin()->second;
        const Cyclotomic ci = c.inverse();
        h = QExpansion(var_, order_ - v);
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) h.terms_.emplace(it->first - v, it->second * ci);
    }

    QExpansion one(const Rational& order) const { return monomial(var_, Cyclotomic(1), 0, order); }

    QExpansion one_like() const {
        // The unit series with the relative precision of this one.
        return one(relative_order());
    }

    void add_term(const Rational& e, const Cyclotomic& c) {
        if (c.is_zero()) return;
        if (e.get_den() > max_exponent_denominator) throw precondition_error("exponent denominator exceeds the limit: " + e.get_str());
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void check_denominators() const {
        for (const auto& [e, c] : terms_)
            if (e.get_den() > max_exponent_denominator) throw precondition_error("exponent denominator exceeds the limit: " + e.get_str());
    }

    void require_same_variable(const QExpansion& o) const {
        if (!(var_ == o.var_)) throw field_error("series in different variables: " + var_.str() + " vs " + o.var_.str());
    }

    SeriesVariable var_;
    Rational order_ = 0;
    Terms terms_;
};

} // namespace padic_periods

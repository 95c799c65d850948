#pragma once

#include <map>

#include "acirc/poly.hpp"

namespace acirc {

namespace detail {

// Common monomial factor (minimum exponents across all terms).
inline Monomial monomial_content(const SparsePoly& p) {
    if (p.is_zero()) return Monomial();
    Monomial acc = p.terms().begin()->first;
    for (const auto& [m, c] : p.terms()) {
        Monomial::Exps keep;
        for (const auto& [v, e] : acc.exponents()) {
            int o = m.exponent(v);
            if (o > 0) keep.emplace_back(v, std::min(e, o));
        }
        acc = Monomial(std::move(keep));
        if (acc.is_one()) break;
    }
    return acc;
}

// Single common variable of two univariate polynomials, or -1.
inline int common_single_variable(const SparsePoly& a, const SparsePoly& b) {
    auto va = a.variables(), vb = b.variables();
    if (va.size() != 1 || vb.size() != 1 || va[0] != vb[0]) return -1;
    return va[0];
}

// Euclidean gcd of univariate polynomials in `var`, monic result.
inline SparsePoly gcd_univariate(SparsePoly a, SparsePoly b, int var) {
    while (!b.is_zero()) {
        // a mod b via repeated leading-term cancellation.
        int db = b.degree_in(var);
        const Rational lc_b = coeff_vector(b, var)[0].constant_value();
        while (!a.is_zero() && a.degree_in(var) >= db) {
            int da = a.degree_in(var);
            Rational lc_a = coeff_vector(a, var)[0].constant_value();
            a -= b * SparsePoly::monomial_term(Monomial::var(var, da - db), lc_a / lc_b);
        }
        std::swap(a, b);
    }
    if (a.is_zero()) return a;
    Rational lc = coeff_vector(a, var)[0].constant_value();
    SparsePoly monic;
    for (const auto& [m, c] : a.terms()) monic.add_term(m, c / lc);
    return monic;
}

} // namespace detail

// Quotient of two polynomials. Normal form: common monomial factors
// cancelled, exact divisions carried out, univariate gcds removed, and the
// denominator's graded-lex leading coefficient scaled to 1. Full multivariate
// gcd is out of scope; equality uses cross-multiplication instead.
class RatFunc {
public:
    RatFunc() : num_(), den_(SparsePoly(1)) {}
    RatFunc(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw ValidationError("rational function with zero denominator");
        normalize();
    }
    RatFunc(const SparsePoly& p) : num_(p), den_(SparsePoly(1)) {}
    RatFunc(const Rational& c) : num_(SparsePoly(c)), den_(SparsePoly(1)) {}

    const SparsePoly& num() const { return num_; }
    const SparsePoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == SparsePoly(1); }

    bool is_constant_scalar() const { return num_.is_constant() && den_.is_constant(); }
    Rational scalar_value() const { return num_.constant_value() / den_.constant_value(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw ValidationError("division of rational functions by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    // Mathematical equality via cross-multiplication.
    bool equal(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator==(const RatFunc& o) const { return equal(o); }

    std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

    std::size_t term_count() const { return num_.term_count() + den_.term_count(); }

    RatFunc substitute(const std::map<int, Rational>& assignment) const {
        return RatFunc(poly_eval(num_, assignment), poly_eval(den_, assignment));
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = SparsePoly(1);
            return;
        }
        Monomial shared = [&] {
            Monomial a = detail::monomial_content(num_);
            Monomial b = detail::monomial_content(den_);
            Monomial::Exps keep;
            for (const auto& [v, e] : a.exponents()) {
                int o = b.exponent(v);
                if (o > 0) keep.emplace_back(v, std::min(e, o));
            }
            return Monomial(std::move(keep));
        }();
        if (!shared.is_one()) {
            SparsePoly f = SparsePoly::monomial_term(shared, 1);
            num_ = *try_exact_divide(num_, f);
            den_ = *try_exact_divide(den_, f);
        }
        if (!den_.is_constant()) {
            if (auto q = try_exact_divide(num_, den_)) {
                num_ = std::move(*q);
                den_ = SparsePoly(1);
            } else if (int v = detail::common_single_variable(num_, den_); v >= 0) {
                SparsePoly g = detail::gcd_univariate(num_, den_, v);
                if (g.degree_in(v) > 0) {
                    num_ = *try_exact_divide(num_, g);
                    den_ = *try_exact_divide(den_, g);
                }
            }
        }
        // Scale so the denominator's leading coefficient is 1.
        Rational lc = den_.leading_coefficient();
        if (lc != 1) {
            Rational inv = 1 / lc;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    SparsePoly num_, den_;
};

inline std::string to_string(const RatFunc& f, const VarNames& names) {
    if (f.is_polynomial()) return to_string(f.num(), names);
    return "(" + to_string(f.num(), names) + ")/(" + to_string(f.den(), names) + ")";
}

} // namespace acirc

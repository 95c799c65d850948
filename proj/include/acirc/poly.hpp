#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acirc/rational.hpp"
#include "acirc/varnames.hpp"

namespace acirc {

// Exponent vector, sparse: (var id, exponent > 0) pairs sorted by var id.
class Monomial {
public:
    using Exps = std::vector<std::pair<int, int>>;

    Monomial() = default;
    explicit Monomial(Exps exps) : exps_(std::move(exps)) { normalize(); }

    static Monomial var(int id, int exp = 1) {
        Monomial m;
        if (exp > 0) m.exps_.emplace_back(id, exp);
        return m;
    }

    const Exps& exponents() const { return exps_; }
    bool is_one() const { return exps_.empty(); }

    int exponent(int id) const {
        for (const auto& [v, e] : exps_)
            if (v == id) return e;
        return 0;
    }

    int degree() const {
        int d = 0;
        for (const auto& [v, e] : exps_) d += e;
        return d;
    }

    // Total degree restricted to a variable subset.
    template <class Pred>
    int degree_if(Pred pred) const {
        int d = 0;
        for (const auto& [v, e] : exps_)
            if (pred(v)) d += e;
        return d;
    }

    Monomial times(const Monomial& o) const {
        Monomial r;
        auto a = exps_.begin(), ae = exps_.end();
        auto b = o.exps_.begin(), be = o.exps_.end();
        while (a != ae && b != be) {
            if (a->first < b->first) r.exps_.push_back(*a++);
            else if (b->first < a->first) r.exps_.push_back(*b++);
            else {
                r.exps_.emplace_back(a->first, a->second + b->second);
                ++a; ++b;
            }
        }
        r.exps_.insert(r.exps_.end(), a, ae);
        r.exps_.insert(r.exps_.end(), b, be);
        return r;
    }

    // Monomial without variable `id` (used when extracting coefficients).
    Monomial without(int id) const {
        Monomial r;
        for (const auto& p : exps_)
            if (p.first != id) r.exps_.push_back(p);
        return r;
    }

    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

    // Graded lexicographic: total degree first, then lex by variable id with
    // the highest id most significant.
    bool grlex_less(const Monomial& o) const {
        int da = degree(), db = o.degree();
        if (da != db) return da < db;
        auto a = exps_.rbegin(), ae = exps_.rend();
        auto b = o.exps_.rbegin(), be = o.exps_.rend();
        while (a != ae && b != be) {
            if (a->first != b->first) return a->first < b->first; // other owns a later var
            if (a->second != b->second) return a->second < b->second;
            ++a; ++b;
        }
        return a == ae && b != be;
    }

private:
    void normalize() {
        std::sort(exps_.begin(), exps_.end());
        Exps out;
        for (const auto& [v, e] : exps_) {
            if (e == 0) continue;
            if (!out.empty() && out.back().first == v) out.back().second += e;
            else out.emplace_back(v, e);
        }
        exps_.swap(out);
    }

    Exps exps_;
};

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.grlex_less(b); }
};

// Sparse multivariate polynomial over Rational; canonical by construction
// (no zero coefficients, terms keyed by monomial). Structural equality is
// mathematical equality.
class SparsePoly {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    SparsePoly() = default;
    SparsePoly(const Rational& c) { add_term(Monomial(), c); } // implicit: constants act as polys
    SparsePoly(long c) { add_term(Monomial(), Rational(c)); }

    static SparsePoly variable(int id) { return monomial_term(Monomial::var(id), 1); }

    static SparsePoly monomial_term(const Monomial& m, const Rational& c) {
        SparsePoly p;
        p.add_term(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second; // only valid when is_constant()
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
        return d;
    }

    template <class Pred>
    int degree_where(Pred pred) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree_if(pred));
        return d;
    }

    bool depends_on(int var) const {
        for (const auto& [m, c] : terms_)
            if (m.exponent(var) > 0) return true;
        return false;
    }

    std::vector<int> variables() const {
        std::vector<int> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.exponents()) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Leading data under graded lex.
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    SparsePoly operator-() const {
        SparsePoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        if (a.is_zero() || b.is_zero()) return r;
        // Iterate the smaller operand outside.
        const SparsePoly& outer = a.term_count() <= b.term_count() ? a : b;
        const SparsePoly& inner = a.term_count() <= b.term_count() ? b : a;
        for (const auto& [ma, ca] : outer.terms_)
            for (const auto& [mb, cb] : inner.terms_)
                r.add_term(ma.times(mb), ca * cb);
        return r;
    }

    friend SparsePoly operator*(const SparsePoly& a, const Rational& c) {
        SparsePoly r;
        if (c == 0) return r;
        for (const auto& [m, k] : a.terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    bool operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

    std::size_t hash() const {
        std::size_t h = 0x9e3779b9;
        for (const auto& [m, c] : terms_) {
            for (const auto& [v, e] : m.exponents())
                h = h * 1099511628211ULL + static_cast<std::size_t>(v * 131 + e);
            h = h * 1099511628211ULL + rat_hash(c);
        }
        return h;
    }

private:
    Terms terms_;
};

inline SparsePoly poly_pow(const SparsePoly& p, unsigned e) {
    SparsePoly acc = SparsePoly(1), b = p;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

// Partial substitution: assigned variables become rational values, the rest
// stay symbolic.
inline SparsePoly poly_eval(const SparsePoly& p, const std::map<int, Rational>& assignment) {
    SparsePoly r;
    for (const auto& [m, c] : p.terms()) {
        Rational scale = c;
        Monomial::Exps rest;
        for (const auto& [v, e] : m.exponents()) {
            auto it = assignment.find(v);
            if (it == assignment.end()) rest.emplace_back(v, e);
            else scale *= rat_pow(it->second, static_cast<unsigned>(e));
        }
        r.add_term(Monomial(rest), scale);
    }
    return r;
}

// Coefficients of p in `main`, highest power first: p = sum c[k] * main^(d-k).
inline std::vector<SparsePoly> coeff_vector(const SparsePoly& p, int main) {
    int d = p.degree_in(main);
    std::vector<SparsePoly> c(static_cast<std::size_t>(d) + 1);
    for (const auto& [m, k] : p.terms()) {
        int e = m.exponent(main);
        c[static_cast<std::size_t>(d - e)].add_term(m.without(main), k);
    }
    return c;
}

inline SparsePoly poly_diff(const SparsePoly& p, int var) {
    SparsePoly r;
    for (const auto& [m, c] : p.terms()) {
        int e = m.exponent(var);
        if (e == 0) continue;
        Monomial::Exps rest;
        for (const auto& [v, k] : m.exponents()) {
            if (v == var) {
                if (k > 1) rest.emplace_back(v, k - 1);
            } else rest.emplace_back(v, k);
        }
        r.add_term(Monomial(rest), c * e);
    }
    return r;
}

// a / b when b divides a, nothing otherwise.
inline std::optional<Monomial> monomial_divide(const Monomial& a, const Monomial& b) {
    Monomial::Exps q;
    auto bi = b.exponents().begin(), be = b.exponents().end();
    for (const auto& [v, e] : a.exponents()) {
        if (bi != be && bi->first < v) return std::nullopt;
        if (bi != be && bi->first == v) {
            if (bi->second > e) return std::nullopt;
            if (e > bi->second) q.emplace_back(v, e - bi->second);
            ++bi;
        } else q.emplace_back(v, e);
    }
    if (bi != be) return std::nullopt;
    return Monomial(std::move(q));
}

// Exact division: returns p / d when the division is exact, nothing otherwise.
inline std::optional<SparsePoly> try_exact_divide(const SparsePoly& p, const SparsePoly& d) {
    if (d.is_zero()) return std::nullopt;
    SparsePoly rem = p, quot;
    const Monomial& dm = d.leading_monomial();
    const Rational& dc = d.leading_coefficient();
    while (!rem.is_zero()) {
        auto qm = monomial_divide(rem.leading_monomial(), dm);
        if (!qm) return std::nullopt;
        Rational qc = rem.leading_coefficient() / dc;
        quot.add_term(*qm, qc);
        rem -= d * SparsePoly::monomial_term(*qm, qc);
    }
    return quot;
}

// --- text rendering and parsing -------------------------------------------
//
// Grammar: terms in graded-lex descending order, '^' for powers, explicit '*',
// rationals as p/q (q omitted when 1). Example: 2*X1^2*X2-1/2*X1+3.

inline std::string to_string(const SparsePoly& p, const VarNames& names) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (!out.empty()) {
            out += (a < 0) ? "-" : "+";
            if (a < 0) a = -a;
        } else if (a < 0) {
            out += "-";
            a = -a;
        }
        bool coeff_shown = m.is_one() || a != 1;
        if (coeff_shown) out += to_string(a);
        bool first_factor = !coeff_shown;
        for (const auto& [v, e] : m.exponents()) {
            if (!first_factor || coeff_shown) out += "*";
            out += names.name(v);
            if (e > 1) out += "^" + std::to_string(e);
            first_factor = false;
        }
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, VarNames& names) : s_(text), names_(names) {}

    SparsePoly parse() {
        SparsePoly p;
        skip_ws();
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+') { ++pos_; }
            else if (peek() == '-') { sign = -1; ++pos_; }
            else if (!first) fail("expected '+' or '-'");
            skip_ws();
            auto [m, c] = parse_term();
            p.add_term(m, sign * c);
            skip_ws();
            first = false;
        }
        if (first) fail("empty polynomial");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) {
        throw ValidationError("polynomial syntax: " + why + " near position " +
                              std::to_string(pos_) + " in '" + s_ + "'");
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::pair<Monomial, Rational> parse_term() {
        Rational coeff = 1;
        Monomial::Exps exps;
        bool any = false;
        for (;;) {
            skip_ws();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_number();
                any = true;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = parse_name();
                int exp = 1;
                skip_ws();
                if (peek() == '^') {
                    ++pos_;
                    skip_ws();
                    Integer e = parse_uint();
                    if (e <= 0 || e > 1'000'000) fail("exponent out of range");
                    exp = static_cast<int>(e.get_si());
                }
                exps.emplace_back(names_.add(name), exp);
                any = true;
            } else fail("expected factor");
            skip_ws();
            if (peek() == '*') { ++pos_; continue; }
            break;
        }
        if (!any) fail("empty term");
        return {Monomial(std::move(exps)), coeff};
    }

    Rational parse_number() {
        Integer num = parse_uint();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            Integer den = parse_uint();
            if (den == 0) fail("zero denominator");
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        return Rational(num);
    }

    Integer parse_uint() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected number");
        return Integer(s_.substr(start, pos_ - start));
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    const std::string& s_;
    VarNames& names_;
    std::size_t pos_ = 0;
};

} // namespace detail

// Parses the rendering grammar above; unknown names are registered in `names`.
inline SparsePoly parse_poly(const std::string& text, VarNames& names) {
    return detail::PolyParser(text, names).parse();
}

} // namespace acirc

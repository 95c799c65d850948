#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acirc/matrix.hpp"
#include "acirc/rng.hpp"
#include "acirc/semantics.hpp"

namespace acirc {

// A flat family of zero-dimensional elimination problems in the supported
// triangular-quadratic shape: each equation is monic of degree 2 in its own
// input variable.
struct ElimProblem {
    VarNames names;              // parameters, then inputs, then Y
    std::vector<int> param_vars; // ids
    std::vector<int> input_vars; // ids, one per equation
    int y_var = -1;
    std::vector<SparsePoly> equations; // G_1..G_n
    SparsePoly H;

    int n() const { return static_cast<int>(input_vars.size()); }
};

// Elimination polynomial F (monic in Y) plus the derived lower-bound data:
// phi = coefficients of F^q in Y (phi[0] = 1, phi[k] is the coefficient of
// Y^(deg-k)), delta[k-1] = d(phi[k])/dT at T=0, Lvec[l-1] = T-linear part of
// F's own l-th coefficient.
struct ElimResult {
    SparsePoly F;
    int q = 1;
    std::vector<SparsePoly> phi;
    std::vector<SparsePoly> delta;
    std::vector<SparsePoly> Lvec;
    VarNames names;
    int y_var = -1;
    int t_var = -1;
};

namespace detail {

inline std::vector<SparsePoly> t_linear_parts(const std::vector<SparsePoly>& coeffs, int t_var) {
    std::vector<SparsePoly> out;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        if (t_var < 0) {
            out.emplace_back();
            continue;
        }
        out.push_back(poly_eval(poly_diff(coeffs[k], t_var), {{t_var, Rational(0)}}));
    }
    return out;
}

inline ElimResult finalize_elim(SparsePoly F, const ElimProblem& p) {
    ElimResult res;
    res.F = std::move(F);
    res.q = 1;
    res.names = p.names;
    res.y_var = p.y_var;
    res.t_var = p.names.find("T");
    res.phi = coeff_vector(res.F, p.y_var);
    res.delta = t_linear_parts(res.phi, res.t_var);
    res.Lvec = res.delta; // q = 1: B_l coincides with phi_l
    return res;
}

} // namespace detail

// Same data for F^q; phi and delta are recomputed, Lvec still comes from F.
inline ElimResult raise_power(const ElimResult& base, int q) {
    if (q < 1) throw ValidationError("power must be positive");
    ElimResult res = base;
    res.q = q;
    SparsePoly fq = poly_pow(base.F, static_cast<unsigned>(q));
    res.phi = coeff_vector(fq, base.y_var);
    res.delta = detail::t_linear_parts(res.phi, base.t_var);
    return res;
}

// Enumeration oracle: F = prod over eps in {0,1}^n of (Y - H(..., eps)).
// Requires every G_i to be exactly X_i^2 - X_i.
inline ElimResult eliminate_enum(const ElimProblem& p, const EvalOptions& opts = {}) {
    if (p.H.depends_on(p.y_var))
        throw ValidationError("H must not involve the elimination variable");
    for (std::size_t i = 0; i < p.equations.size(); ++i) {
        SparsePoly x = SparsePoly::variable(p.input_vars[i]);
        if (!(p.equations[i] == x * x - x))
            throw UnsupportedFamily("enumeration oracle needs G_i = X_i^2 - X_i");
    }
    int n = p.n();
    SparsePoly F(1);
    SparsePoly y = SparsePoly::variable(p.y_var);
    for (std::uint64_t eps = 0; eps < (1ull << n); ++eps) {
        std::map<int, Rational> point;
        for (int i = 0; i < n; ++i)
            point[p.input_vars[std::size_t(i)]] = Rational((eps >> i) & 1u);
        F *= y - poly_eval(p.H, point);
        if (F.term_count() > opts.max_terms)
            throw BudgetExceeded("elimination polynomial passed " +
                                 std::to_string(opts.max_terms) + " terms");
    }
    return detail::finalize_elim(std::move(F), p);
}

// Multiplication-operator oracle: the characteristic polynomial of
// multiplication by H on the rank-2^n quotient algebra with monomial basis
// {X^eps}, reducing X_i^2 -> X_i (+ S_i for the hat shape). Independent of
// the enumeration route; capped at n <= 3.
inline ElimResult eliminate_multmatrix(const ElimProblem& p, const EvalOptions& opts = {}) {
    if (p.H.depends_on(p.y_var))
        throw ValidationError("H must not involve the elimination variable");
    int n = p.n();
    if (n > 3) throw BudgetExceeded("multiplication-matrix oracle is capped at n = 3");
    // Detect the shape: s_polys[i] = X_i^2 - X_i - G_i, either 0 or a parameter.
    std::vector<SparsePoly> s_polys;
    for (std::size_t i = 0; i < p.equations.size(); ++i) {
        SparsePoly x = SparsePoly::variable(p.input_vars[i]);
        SparsePoly s = x * x - x - p.equations[i];
        if (!s.is_zero()) {
            bool ok = false;
            for (int pv : p.param_vars) ok |= s == SparsePoly::variable(pv);
            if (!ok) throw UnsupportedFamily("multiplication-matrix oracle needs X_i^2-X_i(-S_i)");
        }
        s_polys.push_back(std::move(s));
    }

    auto reduce_squares = [&](SparsePoly poly) {
        for (;;) {
            bool changed = false;
            for (int i = 0; i < n && !changed; ++i) {
                int v = p.input_vars[std::size_t(i)];
                for (const auto& [m, c] : poly.terms()) {
                    int e = m.exponent(v);
                    if (e < 2) continue;
                    // X^e -> X^(e-2) * (X + S)
                    Monomial::Exps rest;
                    for (const auto& [var, k] : m.exponents())
                        if (var != v) rest.emplace_back(var, k);
                    if (e > 2) rest.emplace_back(v, e - 2);
                    SparsePoly stub = SparsePoly::monomial_term(Monomial(rest), c);
                    poly -= SparsePoly::monomial_term(m, c);
                    poly += stub * (SparsePoly::variable(v) + s_polys[std::size_t(i)]);
                    changed = true;
                    break;
                }
            }
            if (!changed) return poly;
        }
    };

    int dim = 1 << n;
    auto basis_monomial = [&](int mask) {
        Monomial::Exps e;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) e.emplace_back(p.input_vars[std::size_t(i)], 1);
        return Monomial(std::move(e));
    };

    PolyMatrix mult(dim);
    for (int j = 0; j < dim; ++j) {
        SparsePoly image = reduce_squares(p.H * SparsePoly::monomial_term(basis_monomial(j), 1));
        // Decompose over the multilinear basis.
        for (const auto& [m, c] : image.terms()) {
            int mask = 0;
            Monomial::Exps par_part;
            for (const auto& [v, e] : m.exponents()) {
                bool input = false;
                for (int i = 0; i < n; ++i)
                    if (p.input_vars[std::size_t(i)] == v) {
                        mask |= 1 << i;
                        input = true;
                    }
                if (!input) par_part.emplace_back(v, e);
            }
            mult.at(mask, j).add_term(Monomial(std::move(par_part)), c);
        }
        std::size_t terms = 0;
        for (int i = 0; i < dim; ++i) terms += mult.at(i, j).term_count();
        if (terms > opts.max_terms) throw BudgetExceeded("multiplication matrix too dense");
    }
    SparsePoly F = charpoly(mult, p.y_var);
    if (F.term_count() > opts.max_terms)
        throw BudgetExceeded("characteristic polynomial passed the term budget");
    return detail::finalize_elim(std::move(F), p);
}

// F modulo T^2 via the enumeration identity with first-order truncation:
// every factor (Y - H(..., eps)) is reduced mod T^2, so head = F(T=0) and
// t_linear = dF/dT at T=0 come out exactly without expanding all of F.
struct TruncatedElim {
    SparsePoly head;     // F at T = 0
    SparsePoly t_linear; // dF/dT at T = 0
    std::vector<SparsePoly> delta; // Delta_k = coeff of Y^(2^n - k) in t_linear, k = 1..2^n
    VarNames names;
    int y_var = -1;
};

inline TruncatedElim eliminate_enum_t_linear(const ElimProblem& p, const EvalOptions& opts = {}) {
    for (std::size_t i = 0; i < p.equations.size(); ++i) {
        SparsePoly x = SparsePoly::variable(p.input_vars[i]);
        if (!(p.equations[i] == x * x - x))
            throw UnsupportedFamily("enumeration oracle needs G_i = X_i^2 - X_i");
    }
    int t_var = p.names.find("T");
    int n = p.n();
    SparsePoly y = SparsePoly::variable(p.y_var);
    SparsePoly f0(1), f1;
    SparsePoly h_dt = t_var >= 0 ? poly_diff(p.H, t_var) : SparsePoly();
    for (std::uint64_t eps = 0; eps < (1ull << n); ++eps) {
        std::map<int, Rational> point;
        for (int i = 0; i < n; ++i)
            point[p.input_vars[std::size_t(i)]] = Rational((eps >> i) & 1u);
        if (t_var >= 0) point[t_var] = Rational(0);
        SparsePoly a = poly_eval(p.H, point);
        SparsePoly b = poly_eval(h_dt, point);
        // (f0 + T f1) * ((Y - a) - T b) mod T^2
        f1 = f1 * (y - a) - f0 * b;
        f0 *= y - a;
        if (f0.term_count() + f1.term_count() > opts.max_terms)
            throw BudgetExceeded("truncated elimination passed the term budget");
    }
    TruncatedElim out;
    out.head = std::move(f0);
    out.t_linear = std::move(f1);
    out.names = p.names;
    out.y_var = p.y_var;
    auto by_power = coeff_vector(out.t_linear, p.y_var);
    int deg = out.t_linear.is_zero() ? -1 : out.t_linear.degree_in(p.y_var);
    for (int k = 1; k <= (1 << n); ++k) {
        int power = (1 << n) - k;
        if (power > deg || out.t_linear.is_zero()) out.delta.emplace_back();
        else out.delta.push_back(by_power[std::size_t(deg - power)]);
    }
    return out;
}

// Rank of the Delta family over the monomial basis; the witness passes when
// this equals 2^n.
inline int witness_delta_rank(const ElimResult& res) { return poly_family_rank(res.delta); }

// Same witnesses straight from the problem, through the truncated product.
inline int witness_delta_rank(const ElimProblem& p, const EvalOptions& opts = {}) {
    return poly_family_rank(eliminate_enum_t_linear(p, opts).delta);
}

inline bool witness_L_independence(const ElimProblem& p, int n, const EvalOptions& opts = {}) {
    TruncatedElim t = eliminate_enum_t_linear(p, opts);
    if (static_cast<int>(t.delta.size()) < (1 << n))
        throw UnsupportedFamily("result does not carry 2^n coefficients");
    std::vector<SparsePoly> head(t.delta.begin(), t.delta.begin() + (1 << n));
    return poly_family_rank(head) == (1 << n);
}

inline bool delta_rank_passes(const ElimResult& res, int n) {
    return witness_delta_rank(res) == (1 << n);
}

// Whether L_1..L_{2^n} span a 2^n-dimensional space.
inline bool witness_L_independence(const ElimResult& res, int n) {
    if (static_cast<int>(res.Lvec.size()) < (1 << n))
        throw UnsupportedFamily("result does not carry 2^n coefficients");
    std::vector<SparsePoly> head(res.Lvec.begin(), res.Lvec.begin() + (1 << n));
    return poly_family_rank(head) == (1 << n);
}

// --- the built-in elimination families ---------------------------------------

enum class FamilyKind { Basic, Hat, BoolHard, Points };

inline FamilyKind family_kind_from(const std::string& s) {
    if (s == "basic") return FamilyKind::Basic;
    if (s == "hat") return FamilyKind::Hat;
    if (s == "boolhard") return FamilyKind::BoolHard;
    if (s == "points") return FamilyKind::Points;
    throw ValidationError("unknown family '" + s + "'");
}

struct Family {
    Circuit beta;
    ElimProblem problem;
    // Extras for the points family:
    std::vector<std::vector<std::int64_t>> xi; // K sample points in Z^n
    std::optional<Circuit> eval_points;        // params T,U; outputs H(T,U,xi_j), then Y
    std::optional<Circuit> interp;             // inputs S_1..S_K, Y; output product over phi_eps
    std::vector<SparsePoly> formula11;         // existential-formula equations
    VarNames formula_names;
};

namespace detail {

// H = sum 2^(i-1) X_i + T * prod(1 + (U_i - 1) X_i) as a polynomial.
inline SparsePoly h_polynomial(int n, int t_var, const std::vector<int>& u_vars,
                               const std::vector<int>& x_vars) {
    SparsePoly h;
    for (int i = 0; i < n; ++i)
        h += SparsePoly::variable(x_vars[std::size_t(i)]) * Rational(Integer(1) << i);
    SparsePoly prod(1);
    for (int i = 0; i < n; ++i) {
        SparsePoly u = SparsePoly::variable(u_vars[std::size_t(i)]);
        SparsePoly x = SparsePoly::variable(x_vars[std::size_t(i)]);
        prod *= SparsePoly(1) + (u - SparsePoly(1)) * x;
    }
    return h + SparsePoly::variable(t_var) * prod;
}

// Circuit nodes for prod(1 + (P_i - 1) X_i) given parameter indices.
inline int product_chain(CircuitBuilder& b, int n, int first_param_index) {
    int prod = 0;
    for (int i = 1; i <= n; ++i) {
        int u = b.param(first_param_index + i - 1);
        int x = b.input(i);
        int factor = b.add(b.scalar(1), b.mul(b.sub(u, b.scalar(1)), x));
        prod = (i == 1) ? factor : b.mul(prod, factor);
    }
    return prod;
}

// sum 2^(i-1) X_i.
inline int weighted_input_sum(CircuitBuilder& b, int n) {
    int acc = b.input(1);
    for (int i = 2; i <= n; ++i) {
        Rational w{Integer(1) << (i - 1)};
        acc = b.add(acc, b.mul(b.scalar(w), b.input(i)));
    }
    return acc;
}

inline void emit_square_equations(CircuitBuilder& b, int n, int s_first_param /* 0 = none */) {
    for (int i = 1; i <= n; ++i) {
        int x = b.input(i);
        int g = b.sub(b.mul(x, x), x);
        if (s_first_param > 0) g = b.sub(g, b.param(s_first_param + i - 1));
        b.output(g);
    }
}

inline void check_family_n(int n) {
    if (n < 1 || n > 6) throw BudgetExceeded("family size n must be within 1..6");
}

} // namespace detail

// basic: G_i = X_i^2 - X_i, H as above; parameters T, U_1..U_n.
inline Family family_basic(int n) {
    detail::check_family_n(n);
    Family fam;
    ElimProblem& p = fam.problem;
    p.names.add("T");
    std::vector<int> u_vars, x_vars;
    for (int i = 1; i <= n; ++i) u_vars.push_back(p.names.add("U" + std::to_string(i)));
    for (int i = 1; i <= n; ++i) x_vars.push_back(p.names.add("X" + std::to_string(i)));
    p.y_var = p.names.add("Y");
    p.param_vars.push_back(0);
    for (int v : u_vars) p.param_vars.push_back(v);
    p.input_vars = x_vars;
    for (int v : x_vars) {
        SparsePoly x = SparsePoly::variable(v);
        p.equations.push_back(x * x - x);
    }
    p.H = detail::h_polynomial(n, 0, u_vars, x_vars);

    CircuitBuilder b(n + 1, n, "basic_" + std::to_string(n));
    detail::emit_square_equations(b, n, 0);
    int sum = detail::weighted_input_sum(b, n);
    int prod = detail::product_chain(b, n, 2); // params 2..n+1 are U_1..U_n
    int h = b.add(sum, b.mul(b.param(1), prod));
    b.output(h);
    fam.beta = b.take();
    return fam;
}

// hat: G_i = X_i^2 - X_i - S_i, same H; parameters S_1..S_n, T, U_1..U_n.
inline Family family_hat(int n) {
    detail::check_family_n(n);
    Family fam;
    ElimProblem& p = fam.problem;
    std::vector<int> s_vars, u_vars, x_vars;
    for (int i = 1; i <= n; ++i) s_vars.push_back(p.names.add("S" + std::to_string(i)));
    int t_var = p.names.add("T");
    for (int i = 1; i <= n; ++i) u_vars.push_back(p.names.add("U" + std::to_string(i)));
    for (int i = 1; i <= n; ++i) x_vars.push_back(p.names.add("X" + std::to_string(i)));
    p.y_var = p.names.add("Y");
    for (int v : s_vars) p.param_vars.push_back(v);
    p.param_vars.push_back(t_var);
    for (int v : u_vars) p.param_vars.push_back(v);
    p.input_vars = x_vars;
    for (int i = 0; i < n; ++i) {
        SparsePoly x = SparsePoly::variable(x_vars[std::size_t(i)]);
        p.equations.push_back(x * x - x - SparsePoly::variable(s_vars[std::size_t(i)]));
    }
    p.H = detail::h_polynomial(n, t_var, u_vars, x_vars);

    CircuitBuilder b(2 * n + 1, n, "hat_" + std::to_string(n));
    detail::emit_square_equations(b, n, 1); // params 1..n are S_1..S_n
    int sum = detail::weighted_input_sum(b, n);
    int prod = detail::product_chain(b, n, n + 2); // params n+2..2n+1 are U_1..U_n
    int h = b.add(sum, b.mul(b.param(n + 1), prod));
    b.output(h);
    fam.beta = b.take();
    return fam;
}

// boolhard: G_i = X_i^2 - X_i and the standard-arithmetization polynomial
// H = A + (1-A) T B with A = prod(1+(S_i-1)X_i), B = prod(1+(U_i-1)X_i);
// parameters S_1..S_n, T, U_1..U_n.
inline Family family_boolhard(int n) {
    detail::check_family_n(n);
    Family fam;
    ElimProblem& p = fam.problem;
    std::vector<int> s_vars, u_vars, x_vars;
    for (int i = 1; i <= n; ++i) s_vars.push_back(p.names.add("S" + std::to_string(i)));
    int t_var = p.names.add("T");
    for (int i = 1; i <= n; ++i) u_vars.push_back(p.names.add("U" + std::to_string(i)));
    for (int i = 1; i <= n; ++i) x_vars.push_back(p.names.add("X" + std::to_string(i)));
    p.y_var = p.names.add("Y");
    for (int v : s_vars) p.param_vars.push_back(v);
    p.param_vars.push_back(t_var);
    for (int v : u_vars) p.param_vars.push_back(v);
    p.input_vars = x_vars;
    SparsePoly A(1), B(1);
    for (int i = 0; i < n; ++i) {
        SparsePoly s = SparsePoly::variable(s_vars[std::size_t(i)]);
        SparsePoly u = SparsePoly::variable(u_vars[std::size_t(i)]);
        SparsePoly x = SparsePoly::variable(x_vars[std::size_t(i)]);
        A *= SparsePoly(1) + (s - SparsePoly(1)) * x;
        B *= SparsePoly(1) + (u - SparsePoly(1)) * x;
    }
    for (int v : x_vars) {
        SparsePoly x = SparsePoly::variable(v);
        p.equations.push_back(x * x - x);
    }
    p.H = A + (SparsePoly(1) - A) * SparsePoly::variable(t_var) * B;

    CircuitBuilder b(2 * n + 1, n, "boolhard_" + std::to_string(n));
    detail::emit_square_equations(b, n, 0);
    int a = detail::product_chain(b, n, 1);     // params 1..n: S
    int bb = detail::product_chain(b, n, n + 2); // params n+2..2n+1: U
    int tb = b.mul(b.param(n + 1), bb);
    int h = b.add(a, b.mul(b.sub(b.scalar(1), a), tb));
    b.output(h);
    fam.beta = b.take();
    return fam;
}

// Injectivity data for the K-point encoding: sample K points of bit length
// at most 4n until the evaluation matrix on the multilinear monomials has
// full rank 2^n; failures are counted and logged.
struct XiSample {
    std::vector<std::vector<std::int64_t>> points;
    int resamples = 0;
    std::vector<std::string> log;
};

inline XiSample sample_xi_points(int n, Rng& rng, int max_resamples = 32) {
    if (n < 1 || n > 3) throw BudgetExceeded("point encoding is exercised for n <= 3");
    Integer count = 16 * Integer(n) * n + 2;
    int K = static_cast<int>(count.get_si());
    unsigned bits = static_cast<unsigned>(4 * n);
    XiSample out;
    for (int attempt = 0;; ++attempt) {
        std::vector<std::vector<std::int64_t>> pts;
        for (int k = 0; k < K; ++k) {
            std::vector<std::int64_t> pt;
            for (int i = 0; i < n; ++i) {
                std::int64_t mag = static_cast<std::int64_t>(rng.bits(bits).get_si());
                pt.push_back(rng.coin() ? mag : -mag);
            }
            pts.push_back(std::move(pt));
        }
        RatMatrix m(K, 1 << n);
        for (int k = 0; k < K; ++k)
            for (int mask = 0; mask < (1 << n); ++mask) {
                Rational v = 1;
                for (int i = 0; i < n; ++i)
                    if (mask & (1 << i)) v *= Rational(pts[std::size_t(k)][std::size_t(i)]);
                m.at(k, mask) = v;
            }
        if (mat_rank(m) == (1 << n)) {
            out.points = std::move(pts);
            return out;
        }
        ++out.resamples;
        out.log.push_back("xi sample " + std::to_string(attempt) + " rank-deficient; resampled");
        if (attempt + 1 >= max_resamples)
            throw ValidationError("could not sample an injective point set");
    }
}

// points: the basic family plus the K-point evaluation circuit, the
// interpolation circuit recovering the eliminating product from the sample
// values, and the existential-formula equation system.
inline Family family_points(int n, Rng& rng) {
    if (n > 3) throw BudgetExceeded("points family is exercised for n <= 3");
    Family fam = family_basic(n);
    XiSample sample = sample_xi_points(n, rng);
    fam.xi = sample.points;
    int K = static_cast<int>(fam.xi.size());

    auto weighted_sum_at = [&](const std::vector<std::int64_t>& x) {
        Rational acc = 0;
        for (int i = 0; i < n; ++i) acc += Rational(Integer(1) << i) * Rational(x[std::size_t(i)]);
        return acc;
    };

    // Evaluation circuit: outputs H(T,U,xi_j) for each j, then the pass-through Y.
    {
        CircuitBuilder b(n + 1, 1, "points_eval_" + std::to_string(n));
        for (int j = 0; j < K; ++j) {
            int prod = 0;
            for (int i = 0; i < n; ++i) {
                Rational xi{fam.xi[std::size_t(j)][std::size_t(i)]};
                // 1 + (U_i - 1) xi = (1 - xi) + xi * U_i
                int factor = b.add(b.scalar(Rational(1) - xi), b.mul(b.scalar(xi), b.param(2 + i)));
                prod = (i == 0) ? factor : b.mul(prod, factor);
            }
            int h = b.add(b.scalar(weighted_sum_at(fam.xi[std::size_t(j)])), b.mul(b.param(1), prod));
            b.output(h);
        }
        b.output(b.input(1));
        fam.eval_points = b.take();
    }

    // Interpolation circuit: choose 2^n sample rows with invertible evaluation
    // matrix, linearly recover the multilinear coefficients, rebuild the
    // root values phi_eps and multiply out prod(Y - phi_eps).
    {
        int dim = 1 << n;
        std::vector<int> chosen;
        RatMatrix square(dim, dim);
        {
            std::vector<std::vector<Rational>> rows;
            for (int k = 0; k < K && static_cast<int>(chosen.size()) < dim; ++k) {
                std::vector<Rational> row;
                for (int mask = 0; mask < dim; ++mask) {
                    Rational v = 1;
                    for (int i = 0; i < n; ++i)
                        if (mask & (1 << i)) v *= Rational(fam.xi[std::size_t(k)][std::size_t(i)]);
                    row.push_back(v);
                }
                RatMatrix trial(static_cast<int>(chosen.size()) + 1, dim);
                for (std::size_t rr = 0; rr < rows.size(); ++rr)
                    for (int jj = 0; jj < dim; ++jj) trial.at(static_cast<int>(rr), jj) = rows[rr][std::size_t(jj)];
                for (int jj = 0; jj < dim; ++jj)
                    trial.at(static_cast<int>(rows.size()), jj) = row[std::size_t(jj)];
                if (mat_rank(trial) == static_cast<int>(chosen.size()) + 1) {
                    rows.push_back(std::move(row));
                    chosen.push_back(k);
                }
            }
            if (static_cast<int>(chosen.size()) != dim)
                throw ValidationError("sampled points do not contain an invertible square system");
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) square.at(i, j) = rows[std::size_t(i)][std::size_t(j)];
        }
        RatMatrix w = *mat_inverse(square);

        CircuitBuilder b(n + 1, K + 1, "points_interp_" + std::to_string(n));
        const std::size_t basis = std::size_t(dim);
        std::vector<int> c_nodes(basis, 0);
        std::vector<int> d_nodes(basis, 0);
        for (int k = 0; k < dim; ++k) {
            Rational fixed = weighted_sum_at(fam.xi[std::size_t(chosen[std::size_t(k)])]);
            d_nodes[std::size_t(k)] = b.sub(b.input(chosen[std::size_t(k)] + 1), b.scalar(fixed));
        }
        for (int mask = 0; mask < dim; ++mask) {
            int acc = 0;
            for (int k = 0; k < dim; ++k) {
                const Rational& coef = w.at(mask, k);
                if (coef == 0) continue;
                int term = b.mul(b.scalar(coef), d_nodes[std::size_t(k)]);
                acc = (acc == 0) ? term : b.add(acc, term);
            }
            c_nodes[std::size_t(mask)] = (acc == 0) ? b.scalar(0) : acc;
        }
        int product = 0;
        for (int eps = 0; eps < dim; ++eps) {
            Rational g = 0;
            for (int i = 0; i < n; ++i)
                if (eps & (1 << i)) g += Rational(Integer(1) << i);
            int phi = b.scalar(g);
            for (int mask = 0; mask < dim; ++mask)
                if ((mask & eps) == mask) phi = b.add(phi, c_nodes[std::size_t(mask)]);
            int factor = b.sub(b.input(K + 1), phi);
            product = (eps == 0) ? factor : b.mul(product, factor);
        }
        b.output(product);
        fam.interp = b.take();
    }

    // Existential formula: X_i^2-X_i = 0, S_j = H(T,U,xi_j), Y = H(T,U,X).
    {
        VarNames& nm = fam.formula_names;
        nm = fam.problem.names;
        std::vector<int> s_vars;
        for (int j = 1; j <= K; ++j) s_vars.push_back(nm.add("S" + std::to_string(j)));
        for (const auto& g : fam.problem.equations) fam.formula11.push_back(g);
        for (int j = 0; j < K; ++j) {
            std::map<int, Rational> at;
            for (int i = 0; i < n; ++i)
                at[fam.problem.input_vars[std::size_t(i)]] =
                    Rational(fam.xi[std::size_t(j)][std::size_t(i)]);
            fam.formula11.push_back(SparsePoly::variable(s_vars[std::size_t(j)]) -
                                    poly_eval(fam.problem.H, at));
        }
        fam.formula11.push_back(SparsePoly::variable(fam.problem.y_var) - fam.problem.H);
    }
    return fam;
}

inline Family family(FamilyKind kind, int n, std::optional<std::uint64_t> seed = std::nullopt) {
    switch (kind) {
    case FamilyKind::Basic: return family_basic(n);
    case FamilyKind::Hat: return family_hat(n);
    case FamilyKind::BoolHard: return family_boolhard(n);
    case FamilyKind::Points: {
        Rng rng(seed ? *seed : Rng::entropy_seed());
        return family_points(n, rng);
    }
    }
    throw ValidationError("unknown family kind");
}

// Direct binary-digit construction of the basic family's elimination
// polynomial: prod over j of (Y - (j + T * prod U_i^[j]_i)).
inline SparsePoly closed_form_basic_F(const ElimProblem& p) {
    int n = p.n();
    int t_var = p.names.find("T");
    std::vector<int> u_vars;
    for (int i = 1; i <= n; ++i) u_vars.push_back(p.names.find("U" + std::to_string(i)));
    SparsePoly F(1);
    SparsePoly y = SparsePoly::variable(p.y_var);
    for (std::uint64_t j = 0; j < (1ull << n); ++j) {
        Monomial::Exps e{{t_var, 1}};
        for (int i = 0; i < n; ++i)
            if ((j >> i) & 1u) e.emplace_back(u_vars[std::size_t(i)], 1);
        SparsePoly root = SparsePoly(Rational(static_cast<long>(j))) +
                          SparsePoly::monomial_term(Monomial(e), 1);
        F *= y - root;
    }
    return F;
}

} // namespace acirc

#pragma once

#include <optional>
#include <vector>

#include "acirc/poly.hpp"
#include "acirc/rational.hpp"

namespace acirc {

// Dense matrix over Rational.
class RatMatrix {
public:
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw ValidationError("negative matrix dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

// Rank over Q. Rows are scaled to integers first, then fraction-free
// (Bareiss) elimination with full pivoting; every division is exact.
inline int mat_rank(const RatMatrix& m) {
    const std::size_t rows = std::size_t(m.rows()), cols = std::size_t(m.cols());
    if (rows == 0 || cols == 0) return 0;
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Integer lcm = 1;
        for (std::size_t j = 0; j < cols; ++j) {
            const Integer& den = m.at(int(i), int(j)).get_den();
            Integer g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
            lcm = lcm / g * den;
        }
        for (std::size_t j = 0; j < cols; ++j) {
            Rational v = m.at(int(i), int(j)) * Rational(lcm);
            a[i][j] = v.get_num();
        }
    }

    Integer prev = 1;
    int rank = 0;
    std::size_t limit = std::min(rows, cols);
    for (std::size_t k = 0; k < limit; ++k) {
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = k; i < rows && pi == rows; ++i)
            for (std::size_t j = k; j < cols; ++j)
                if (a[i][j] != 0) { pi = i; pj = j; break; }
        if (pi == rows) break;
        std::swap(a[k], a[pi]);
        if (pj != k)
            for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][k]);
        for (std::size_t i = k + 1; i < rows; ++i)
            for (std::size_t j = k + 1; j < cols; ++j) {
                Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
        ++rank;
    }
    return rank;
}

// Gauss-Jordan inverse over Q; nothing when singular.
inline std::optional<RatMatrix> mat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    int d = m.rows();
    RatMatrix a = m;
    RatMatrix inv(d, d);
    for (int i = 0; i < d; ++i) inv.at(i, i) = 1;
    for (int k = 0; k < d; ++k) {
        int pivot = -1;
        for (int i = k; i < d; ++i)
            if (a.at(i, k) != 0) { pivot = i; break; }
        if (pivot < 0) return std::nullopt;
        if (pivot != k)
            for (int j = 0; j < d; ++j) {
                std::swap(a.at(k, j), a.at(pivot, j));
                std::swap(inv.at(k, j), inv.at(pivot, j));
            }
        Rational pv = a.at(k, k);
        for (int j = 0; j < d; ++j) {
            a.at(k, j) /= pv;
            inv.at(k, j) /= pv;
        }
        for (int i = 0; i < d; ++i) {
            if (i == k || a.at(i, k) == 0) continue;
            Rational f = a.at(i, k);
            for (int j = 0; j < d; ++j) {
                a.at(i, j) -= f * a.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

// Rank of a family of polynomials viewed as vectors over the monomial basis.
inline int poly_family_rank(const std::vector<SparsePoly>& polys) {
    std::map<Monomial, int, GrlexLess> columns;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms())
            columns.emplace(m, 0);
    int idx = 0;
    for (auto& [m, col] : columns) col = idx++;
    RatMatrix mat(static_cast<int>(polys.size()), idx);
    for (int i = 0; i < static_cast<int>(polys.size()); ++i)
        for (const auto& [m, c] : polys[std::size_t(i)].terms())
            mat.at(i, columns.at(m)) = c;
    return mat_rank(mat);
}

// Square matrix with polynomial entries; only what charpoly needs.
class PolyMatrix {
public:
    explicit PolyMatrix(int dim) : dim_(dim), a_(std::size_t(dim) * dim) {}

    int dim() const { return dim_; }
    SparsePoly& at(int i, int j) { return a_[std::size_t(i) * dim_ + j]; }
    const SparsePoly& at(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }

private:
    int dim_;
    std::vector<SparsePoly> a_;
};

// Determinant by dynamic programming over column subsets (division-free).
// minor[S] is the determinant of the submatrix on rows 0..|S|-1, columns S.
inline SparsePoly poly_det(const PolyMatrix& m) {
    int d = m.dim();
    if (d == 0) return SparsePoly(1);
    std::vector<SparsePoly> minor(std::size_t(1) << d);
    minor[0] = SparsePoly(1);
    for (unsigned s = 1; s < (1u << d); ++s) {
        int row = __builtin_popcount(s) - 1;
        SparsePoly acc;
        int pos = 0;
        for (int j = 0; j < d; ++j) {
            if (!(s & (1u << j))) continue;
            const SparsePoly& entry = m.at(row, j);
            if (!entry.is_zero()) {
                SparsePoly contrib = entry * minor[s & ~(1u << j)];
                if ((row + pos) % 2 == 0) acc += contrib;
                else acc -= contrib;
            }
            ++pos;
        }
        minor[s] = std::move(acc);
    }
    return minor[(std::size_t(1) << d) - 1];
}

// det(Y*I - m); monic of degree dim in the variable `y_var`.
inline SparsePoly charpoly(const PolyMatrix& m, int y_var) {
    int d = m.dim();
    PolyMatrix b(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            b.at(i, j) = -m.at(i, j);
            if (i == j) b.at(i, j) += SparsePoly::variable(y_var);
        }
    return poly_det(b);
}

} // namespace acirc

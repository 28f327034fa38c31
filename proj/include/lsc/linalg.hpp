#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "lsc/errors.hpp"
#include "lsc/gf.hpp"

namespace lsc {

// Dense row-major matrix over F_q. Immutable value semantics by convention:
// operations return fresh matrices.
class MatrixGF {
  public:
    MatrixGF(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), elems_(rows * cols, 0) {}

    MatrixGF(Field field, std::size_t rows, std::size_t cols, std::vector<Fe> elems)
        : field_(std::move(field)), rows_(rows), cols_(cols), elems_(std::move(elems)) {
        if (elems_.size() != rows_ * cols_) throw DimensionMismatch("element count does not match rows*cols");
        for (Fe v : elems_)
            if (!field_.canonical(v)) throw DimensionMismatch("element out of range for field");
    }

    static MatrixGF from_rows(const Field& field, std::initializer_list<std::initializer_list<int>> rows) {
        std::vector<Fe> elems;
        std::size_t cols = rows.size() > 0 ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols) throw DimensionMismatch("ragged rows");
            for (int v : r) elems.push_back(static_cast<Fe>(v));
        }
        return MatrixGF(field, rows.size(), cols, std::move(elems));
    }

    static MatrixGF identity(const Field& field, std::size_t n) {
        MatrixGF m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Fe at(std::size_t r, std::size_t c) const { return elems_[r * cols_ + c]; }
    Fe& at(std::size_t r, std::size_t c) { return elems_[r * cols_ + c]; }

    std::span<const Fe> row(std::size_t r) const { return {elems_.data() + r * cols_, cols_}; }
    const std::vector<Fe>& elements() const { return elems_; }

    friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.elems_ == b.elems_;
    }

  private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Fe> elems_;
};

inline std::vector<Fe> mat_vec_mul(const MatrixGF& m, std::span<const Fe> x) {
    if (x.size() != m.cols()) throw DimensionMismatch("vector length does not match matrix columns");
    const Field& f = m.field();
    std::vector<Fe> y(m.rows(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Fe acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m.at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

inline MatrixGF stack_rows(const MatrixGF& top, const MatrixGF& bottom) {
    if (top.cols() != bottom.cols() || !(top.field() == bottom.field()))
        throw DimensionMismatch("stacked matrices must share field and column count");
    std::vector<Fe> elems;
    elems.reserve((top.rows() + bottom.rows()) * top.cols());
    elems.insert(elems.end(), top.elements().begin(), top.elements().end());
    elems.insert(elems.end(), bottom.elements().begin(), bottom.elements().end());
    return MatrixGF(top.field(), top.rows() + bottom.rows(), top.cols(), std::move(elems));
}

struct RrefResult {
    MatrixGF rref;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

// Gauss-Jordan elimination. Pivot is the first nonzero entry in column
// order; exact arithmetic needs no pivoting heuristics.
inline RrefResult rref_rank(const MatrixGF& m) {
    MatrixGF r = m;
    const Field& f = r.field();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < r.cols() && lead < r.rows(); ++col) {
        std::size_t p = lead;
        while (p < r.rows() && r.at(p, col) == 0) ++p;
        if (p == r.rows()) continue;
        if (p != lead)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(p, j), r.at(lead, j));
        const Fe scale = f.inv(r.at(lead, col));
        for (std::size_t j = 0; j < r.cols(); ++j) r.at(lead, j) = f.mul(r.at(lead, j), scale);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == lead || r.at(i, col) == 0) continue;
            const Fe factor = r.at(i, col);
            for (std::size_t j = 0; j < r.cols(); ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(factor, r.at(lead, j)));
        }
        pivots.push_back(col);
        ++lead;
    }
    return {std::move(r), pivots.size(), std::move(pivots)};
}

inline std::size_t rank_of(const MatrixGF& m) { return rref_rank(m).rank; }

// Unique solution of a*x = b for square nonsingular a.
inline std::vector<Fe> solve_square(const MatrixGF& a, std::span<const Fe> b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("solve_square needs a square matrix");
    if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length mismatch");
    const std::size_t n = a.rows();
    if (n == 0) return {};
    MatrixGF aug(a.field(), n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n) = b[i];
    }
    RrefResult rr = rref_rank(aug);
    if (rr.rank < n || rr.pivot_cols.size() != n || rr.pivot_cols.back() != n - 1)
        throw SingularMatrix("matrix is singular");
    std::vector<Fe> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rr.rref.at(i, n);
    return x;
}

// Completes the row space of h to a basis of F_q^n: scans e_0, e_1, ... in
// index order, keeping each standard basis vector that strictly increases
// the rank of the stack. Returns the kept vectors as a (n - rows(h)) x n
// matrix; stack(h, result) has rank n.
inline MatrixGF complete_basis(const MatrixGF& h) {
    const Field& f = h.field();
    const std::size_t n = h.cols();
    if (h.rows() > n) throw RankDeficient("more rows than columns");

    // Incremental elimination state: reduced rows keyed by pivot column.
    std::vector<std::vector<Fe>> reduced;
    std::vector<std::size_t> pivot_of;
    auto try_insert = [&](std::span<const Fe> v) -> bool {
        std::vector<Fe> w(v.begin(), v.end());
        for (std::size_t r = 0; r < reduced.size(); ++r) {
            const Fe c = w[pivot_of[r]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < n; ++j) w[j] = f.sub(w[j], f.mul(c, reduced[r][j]));
        }
        std::size_t p = 0;
        while (p < n && w[p] == 0) ++p;
        if (p == n) return false;
        const Fe scale = f.inv(w[p]);
        for (std::size_t j = 0; j < n; ++j) w[j] = f.mul(w[j], scale);
        reduced.push_back(std::move(w));
        pivot_of.push_back(p);
        return true;
    };

    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!try_insert(h.row(i))) throw RankDeficient("parity check lacks full row rank");

    MatrixGF d(f, n - h.rows(), n);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < n && kept < d.rows(); ++i) {
        std::vector<Fe> e(n, 0);
        e[i] = 1;
        if (try_insert(e)) {
            d.at(kept, i) = 1;
            ++kept;
        }
    }
    return d;
}

}  // namespace lsc

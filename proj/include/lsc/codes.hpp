#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/linalg.hpp"
#include "lsc/prng.hpp"
#include "lsc/rational.hpp"

namespace lsc {

// An (n, k) linear list-source code given by its (n-k) x n parity check
// matrix. k is the list exponent: each syndrome names a coset of q^k
// sequences. L = k/n, and d = n-k+1 when the code is known MDS.
class CodeSpec {
  public:
    CodeSpec(Field field, std::size_t n, std::size_t k, MatrixGF h,
             std::optional<std::size_t> min_distance = std::nullopt)
        : field_(std::move(field)), n_(n), k_(k), h_(std::move(h)), d_(min_distance) {
        if (k_ > n_) throw DimensionMismatch("k must not exceed n");
        if (h_.rows() != n_ - k_ || h_.cols() != n_) throw DimensionMismatch("parity check must be (n-k) x n");
        if (!(h_.field() == field_)) throw DimensionMismatch("parity check field mismatch");
        if (rank_of(h_) != n_ - k_) throw RankDeficient("parity check lacks full row rank");
    }

    const Field& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }
    const MatrixGF& h() const { return h_; }
    Ratio list_exponent() const { return Ratio(k_, n_); }
    std::optional<std::size_t> min_distance() const { return d_; }

  private:
    Field field_;
    std::size_t n_, k_;
    MatrixGF h_;
    std::optional<std::size_t> d_;
};

namespace detail {

// min(C(n, k), cap + 1), saturating instead of overflowing.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t r = idx.size();
    std::size_t i = r;
    while (i-- > 0) {
        if (idx[i] != i + n - r) {
            ++idx[i];
            for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Generalized Reed-Solomon parity check: H[i][j] = points[j]^i (0^0 = 1).
// Default evaluation points are 0..n-1, so n <= q.
inline CodeSpec vandermonde_parity_check(const Field& field, std::size_t n, std::size_t k,
                                         std::optional<std::vector<Fe>> points = std::nullopt) {
    if (n > field.order()) throw TooLong("block length exceeds field order");
    if (k > n) throw DimensionMismatch("k must not exceed n");
    std::vector<Fe> pts;
    if (points) {
        pts = *points;
        if (pts.size() != n) throw DimensionMismatch("need exactly n evaluation points");
        std::vector<bool> seen(field.order(), false);
        for (Fe p : pts) {
            if (!field.canonical(p)) throw DimensionMismatch("evaluation point out of range");
            if (seen[p]) throw DuplicatePoints("evaluation points must be distinct");
            seen[p] = true;
        }
    } else {
        pts.resize(n);
        for (std::size_t j = 0; j < n; ++j) pts[j] = static_cast<Fe>(j);
    }
    MatrixGF h(field, n - k, n);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j < n; ++j) h.at(i, j) = field.pow(pts[j], i);
    return CodeSpec(field, n, k, std::move(h), n - k + 1);
}

// Exhaustive MDS check: every (n-k) x (n-k) column submatrix of H must be
// invertible. The secrecy suites use this as their oracle, so it stays a
// direct minor enumeration rather than an algebraic shortcut.
inline bool is_mds(const CodeSpec& code, std::uint64_t minor_cap = 1'000'000) {
    const std::size_t n = code.n();
    const std::size_t r = n - code.k();
    if (detail::binomial_capped(n, r, minor_cap) > minor_cap)
        throw TooManySubsets("too many column subsets to enumerate");
    if (r == 0) return true;
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    do {
        MatrixGF sub(code.field(), r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) sub.at(i, j) = code.h().at(i, idx[j]);
        if (rank_of(sub) != r) return false;
    } while (detail::next_combination(idx, n));
    return true;
}

// Uniform full-row-rank parity check by rejection sampling on rank.
// Reproducible from the seed.
inline CodeSpec random_full_rank_code(const Field& field, std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) throw DimensionMismatch("k must not exceed n");
    SplitMix64 rng(seed);
    for (;;) {
        MatrixGF h(field, n - k, n);
        for (std::size_t i = 0; i < n - k; ++i)
            for (std::size_t j = 0; j < n; ++j) h.at(i, j) = static_cast<Fe>(rng.next_below(field.order()));
        if (rank_of(h) == n - k) return CodeSpec(field, n, k, std::move(h));
    }
}

}  // namespace lsc

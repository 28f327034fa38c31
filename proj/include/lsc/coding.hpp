#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lsc/codes.hpp"
#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/linalg.hpp"
#include "lsc/rational.hpp"
#include "lsc/source.hpp"

namespace lsc {

namespace detail {

// min(q^k, cap + 1), saturating.
inline std::uint64_t pow_capped(std::uint64_t q, std::uint64_t k, std::uint64_t cap) {
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        acc *= q;
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace detail

// Transmitted codeword of Scheme 1: the syndrome H*x naming the coset of x.
struct Syndrome {
    std::vector<Fe> symbols;

    friend bool operator==(const Syndrome& a, const Syndrome& b) = default;
};

inline Syndrome lsc_encode(const CodeSpec& code, std::span<const Fe> x) {
    if (x.size() != code.n()) throw DimensionMismatch("sequence length must equal n");
    return Syndrome{mat_vec_mul(code.h(), x)};
}

// Extension point for compression front ends. The identity coder keeps the
// coded length at n, which is optimal for uniform sources.
struct IdentitySourceCoder {
    std::size_t coded_length(std::size_t n) const { return n; }
    std::vector<Fe> encode(std::span<const Fe> x) const { return {x.begin(), x.end()}; }
    std::vector<Fe> decode(std::span<const Fe> x) const { return {x.begin(), x.end()}; }
};

// The decoded list of Scheme 1: the coset {x : H*x = s}, of size q^k.
// Enumeration is lazy, in lexicographic order of the k free coordinates
// (the complement of the rref pivot columns). Cardinality reporting is
// always available; materializing members requires q^k within the cap.
class CosetList {
  public:
    CosetList(CodeSpec code, Syndrome syndrome, std::uint64_t enumeration_cap = 1'000'000)
        : code_(std::move(code)), syndrome_(std::move(syndrome)), cap_(enumeration_cap) {
        if (syndrome_.symbols.size() != code_.n() - code_.k())
            throw DimensionMismatch("syndrome length must equal n-k");
    }

    const CodeSpec& code() const { return code_; }
    const Syndrome& syndrome() const { return syndrome_; }

    std::uint64_t cardinality() const {
        const std::uint64_t c = detail::pow_capped(code_.field().order(), code_.k(), UINT64_MAX - 1);
        if (c == UINT64_MAX) throw TooLarge("coset cardinality exceeds 2^64-1");
        return c;
    }
    double log2_cardinality() const { return double(code_.k()) * std::log2(double(code_.field().order())); }

    bool contains(std::span<const Fe> x) const {
        if (x.size() != code_.n()) return false;
        return mat_vec_mul(code_.h(), x) == syndrome_.symbols;
    }

    void reset() {
        prepared_ = false;
        done_ = false;
    }

    // Next coset member, or nullopt when exhausted.
    std::optional<std::vector<Fe>> next() {
        if (!prepared_) prepare();
        if (done_) return std::nullopt;
        std::vector<Fe> x = materialize();
        advance();
        return x;
    }

  private:
    void prepare() {
        if (detail::pow_capped(code_.field().order(), code_.k(), cap_) > cap_)
            throw ListTooLarge("coset enumeration exceeds cap");
        const std::size_t n = code_.n();
        const std::size_t r = n - code_.k();
        MatrixGF aug(code_.field(), r, n + 1);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = code_.h().at(i, j);
            aug.at(i, n) = syndrome_.symbols[i];
        }
        RrefResult rr = rref_rank(aug);
        reduced_.emplace(std::move(rr.rref));
        pivot_cols_ = std::move(rr.pivot_cols);
        free_cols_.clear();
        std::size_t pi = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (pi < pivot_cols_.size() && pivot_cols_[pi] == j)
                ++pi;
            else
                free_cols_.push_back(j);
        }
        digits_.assign(free_cols_.size(), 0);
        prepared_ = true;
        done_ = false;
    }

    std::vector<Fe> materialize() const {
        const Field& f = code_.field();
        const std::size_t n = code_.n();
        std::vector<Fe> x(n, 0);
        for (std::size_t j = 0; j < free_cols_.size(); ++j) x[free_cols_[j]] = digits_[j];
        for (std::size_t i = 0; i < pivot_cols_.size(); ++i) {
            Fe v = reduced_->at(i, n);
            for (std::size_t j = 0; j < free_cols_.size(); ++j)
                v = f.sub(v, f.mul(reduced_->at(i, free_cols_[j]), digits_[j]));
            x[pivot_cols_[i]] = v;
        }
        return x;
    }

    void advance() {
        const Fe top = static_cast<Fe>(code_.field().order() - 1);
        std::size_t j = digits_.size();
        while (j-- > 0) {
            if (digits_[j] != top) {
                ++digits_[j];
                for (std::size_t t = j + 1; t < digits_.size(); ++t) digits_[t] = 0;
                return;
            }
        }
        done_ = true;
    }

    CodeSpec code_;
    Syndrome syndrome_;
    std::uint64_t cap_;
    bool prepared_ = false;
    bool done_ = false;
    std::optional<MatrixGF> reduced_;
    std::vector<std::size_t> pivot_cols_, free_cols_;
    std::vector<Fe> digits_;
};

inline CosetList lsc_decode_list(const CodeSpec& code, const Syndrome& s, std::uint64_t cap = 1'000'000) {
    return CosetList(code, s, cap);
}

// The insecure baseline: keep the first n - floor(L*n) symbols, discard the
// rest. The decoded list is the prefix joined with every possible suffix.
struct TrivialEncoding {
    Field field;
    std::size_t n;
    std::size_t suffix_len;
    std::vector<Fe> prefix;

    std::size_t prefix_len() const { return n - suffix_len; }

    bool list_contains(std::span<const Fe> x) const {
        if (x.size() != n) return false;
        for (std::size_t i = 0; i < prefix.size(); ++i)
            if (x[i] != prefix[i]) return false;
        return true;
    }

    std::uint64_t list_size() const {
        const std::uint64_t c = detail::pow_capped(field.order(), suffix_len, UINT64_MAX - 1);
        if (c == UINT64_MAX) throw TooLarge("list size exceeds 2^64-1");
        return c;
    }
    double log2_list_size() const { return double(suffix_len) * std::log2(double(field.order())); }
};

inline TrivialEncoding trivial_encode(const Field& field, std::size_t n, Ratio list_exponent,
                                      std::span<const Fe> x) {
    if (x.size() != n) throw DimensionMismatch("sequence length must equal n");
    if (list_exponent.den == 0 || list_exponent.num > list_exponent.den)
        throw DimensionMismatch("list exponent must be a ratio in [0, 1]");
    const std::size_t suffix = static_cast<std::size_t>(list_exponent.num * n / list_exponent.den);
    TrivialEncoding enc{field, n, suffix, std::vector<Fe>(x.begin(), x.begin() + (n - suffix))};
    return enc;
}

// Lower bound on the achievable rate for normalized list size L:
// max(0, H(X) - L*log2 q) bits per symbol.
inline double rate_list_lower_bound(double entropy_bits, double list_exponent, std::uint32_t alphabet_size) {
    const double r = entropy_bits - list_exponent * std::log2(double(alphabet_size));
    return r > 0.0 ? r : 0.0;
}

struct CodeRate {
    std::uint64_t total_bits;
    double bits_per_symbol;
};

// Achieved rate of Scheme 1: ceil((n-k) log2 q) bits for the whole block.
inline CodeRate code_rate(const CodeSpec& code) {
    const long double bits = static_cast<long double>(code.n() - code.k()) * std::log2(static_cast<long double>(code.field().order()));
    const auto total = static_cast<std::uint64_t>(std::ceil(bits));
    return {total, static_cast<double>(total) / static_cast<double>(code.n())};
}

// Monte-Carlo estimate of Pr(X^n not in decoded list of its own encoding).
// Membership is checked structurally, never by enumerating the list.
inline double error_probability_estimate(
    const std::function<std::vector<Fe>(std::span<const Fe>)>& encoder,
    const std::function<bool(const std::vector<Fe>&, std::span<const Fe>)>& list_contains,
    const SourceModel& source, std::size_t n, std::uint64_t trials, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::vector<Fe> x = source.sample_sequence(rng, n);
        const std::vector<Fe> codeword = encoder(x);
        if (!list_contains(codeword, x)) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(trials);
}

}  // namespace lsc

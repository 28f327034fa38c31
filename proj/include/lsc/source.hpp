#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/prng.hpp"

namespace lsc {

namespace detail {

// Kahan compensated accumulator for entropy sums.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline double entropy_bits_of(std::span<const double> probs) {
    KahanSum h;
    for (double p : probs)
        if (p > 0.0) h.add(-p * std::log2(p));
    return h.value() < 0.0 ? 0.0 : h.value();
}

}  // namespace detail

// i.i.d. per-symbol source over F_q. The pmf must sum to 1 within 1e-12.
class SourceModel {
  public:
    SourceModel(Field field, std::vector<double> pmf) : field_(std::move(field)), pmf_(std::move(pmf)) {
        if (pmf_.size() != field_.order()) throw DimensionMismatch("pmf length must equal field order");
        detail::KahanSum total;
        for (double p : pmf_) {
            if (p < 0.0 || !std::isfinite(p)) throw DimensionMismatch("pmf entries must be finite and nonnegative");
            total.add(p);
        }
        if (std::abs(total.value() - 1.0) > 1e-12) throw DimensionMismatch("pmf must sum to 1 within 1e-12");
        entropy_bits_ = detail::entropy_bits_of(pmf_);
    }

    static SourceModel uniform(const Field& field) {
        return SourceModel(field, std::vector<double>(field.order(), 1.0 / field.order()));
    }

    const Field& field() const { return field_; }
    const std::vector<double>& pmf() const { return pmf_; }
    double entropy_bits() const { return entropy_bits_; }

    double prob(Fe symbol) const { return pmf_[symbol]; }

    double sequence_prob(std::span<const Fe> x) const {
        double p = 1.0;
        for (Fe s : x) p *= pmf_[s];
        return p;
    }

    Fe sample(SplitMix64& rng) const {
        const double u = rng.next_unit();
        double cum = 0.0;
        for (std::size_t v = 0; v + 1 < pmf_.size(); ++v) {
            cum += pmf_[v];
            if (u < cum) return static_cast<Fe>(v);
        }
        return static_cast<Fe>(pmf_.size() - 1);
    }

    std::vector<Fe> sample_sequence(SplitMix64& rng, std::size_t n) const {
        std::vector<Fe> x(n);
        for (auto& s : x) s = sample(rng);
        return x;
    }

  private:
    Field field_;
    std::vector<double> pmf_;
    double entropy_bits_ = 0.0;
};

}  // namespace lsc

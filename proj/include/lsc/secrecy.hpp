#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lsc/coding.hpp"
#include "lsc/codes.hpp"
#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/rational.hpp"
#include "lsc/source.hpp"

namespace lsc {

// A set of symbol positions J within a length-n block.
struct SubsetQuery {
    std::size_t n;
    std::vector<std::size_t> indices;

    SubsetQuery(std::size_t block_len, std::vector<std::size_t> idx) : n(block_len), indices(std::move(idx)) {
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (indices[i] >= n) throw DimensionMismatch("subset index out of range");
            if (i > 0 && indices[i] <= indices[i - 1]) throw DimensionMismatch("subset indices must be sorted and distinct");
        }
    }
};

// Any deterministic map from F_q^n to a finite output set, given as an index.
// Scheme 1 (syndrome) and the trivial prefix scheme both fit this shape, so
// the analyzer has a single code path.
using EncoderFn = std::function<std::uint64_t(std::span<const Fe>)>;

inline EncoderFn syndrome_encoder(const CodeSpec& code) {
    return [code](std::span<const Fe> x) {
        const Syndrome s = lsc_encode(code, x);
        std::uint64_t y = 0;
        for (Fe v : s.symbols) y = y * code.field().order() + v;
        return y;
    };
}

inline EncoderFn prefix_encoder(std::uint32_t q, std::size_t prefix_len) {
    return [q, prefix_len](std::span<const Fe> x) {
        std::uint64_t y = 0;
        for (std::size_t i = 0; i < prefix_len; ++i) y = y * q + x[i];
        return y;
    };
}

// Exhaustive joint-distribution engine: walks all q^n sequences once,
// caching each sequence's probability under the i.i.d. source and its
// encoder output. Subset queries then reduce over the cached table.
class ExhaustiveAnalyzer {
  public:
    ExhaustiveAnalyzer(Field field, std::size_t n, EncoderFn encoder, SourceModel source,
                       std::uint64_t enumeration_cap = 1'000'000)
        : field_(std::move(field)), n_(n), source_(std::move(source)) {
        if (!(source_.field() == field_)) throw DimensionMismatch("source field mismatch");
        const std::uint64_t total = detail::pow_capped(field_.order(), n_, enumeration_cap);
        if (total > enumeration_cap) throw TooLarge("q^n exceeds enumeration cap");
        y_of_.reserve(total);
        p_of_.reserve(total);

        std::vector<Fe> x(n_, 0);
        for (std::uint64_t i = 0; i < total; ++i) {
            const std::uint64_t y = encoder(x);
            if (y > UINT32_MAX) throw TooLarge("encoder output index exceeds 2^32");
            y_of_.push_back(static_cast<std::uint32_t>(y));
            p_of_.push_back(source_.sequence_prob(x));
            next_sequence(x);
        }

        std::unordered_map<std::uint32_t, double> py;
        for (std::uint64_t i = 0; i < total; ++i) py[y_of_[i]] += p_of_[i];
        detail::KahanSum hy;
        for (const auto& [y, p] : py)
            if (p > 0.0) hy.add(-p * std::log2(p));
        output_entropy_bits_ = std::max(hy.value(), 0.0);
    }

    const Field& field() const { return field_; }
    std::size_t n() const { return n_; }
    const SourceModel& source() const { return source_; }
    double output_entropy_bits() const { return output_entropy_bits_; }

    // Exact I(X^(J); Y) in bits over the i.i.d. product measure.
    double mutual_information(const SubsetQuery& j) const {
        if (j.n != n_) throw DimensionMismatch("subset block length mismatch");
        const std::uint32_t q = field_.order();
        std::unordered_map<std::uint64_t, double> joint;
        std::unordered_map<std::uint64_t, double> pproj;
        joint.reserve(y_of_.size());

        std::vector<Fe> x(n_, 0);
        for (std::uint64_t i = 0; i < y_of_.size(); ++i) {
            std::uint64_t proj = 0;
            for (std::size_t t : j.indices) proj = proj * q + x[t];
            joint[(proj << 32) | y_of_[i]] += p_of_[i];
            pproj[proj] += p_of_[i];
            next_sequence(x);
        }

        detail::KahanSum h_joint, h_proj;
        for (const auto& [key, p] : joint)
            if (p > 0.0) h_joint.add(-p * std::log2(p));
        for (const auto& [key, p] : pproj)
            if (p > 0.0) h_proj.add(-p * std::log2(p));
        const double mi = h_proj.value() + output_entropy_bits_ - h_joint.value();
        return mi > 0.0 ? mi : 0.0;
    }

    double mutual_information(std::vector<std::size_t> indices) const {
        return mutual_information(SubsetQuery(n_, std::move(indices)));
    }

  private:
    void next_sequence(std::vector<Fe>& x) const {
        const Fe top = static_cast<Fe>(field_.order() - 1);
        std::size_t j = x.size();
        while (j-- > 0) {
            if (x[j] != top) {
                ++x[j];
                std::fill(x.begin() + j + 1, x.end(), 0);
                return;
            }
            x[j] = 0;
        }
    }

    Field field_;
    std::size_t n_;
    SourceModel source_;
    std::vector<std::uint32_t> y_of_;
    std::vector<double> p_of_;
    double output_entropy_bits_ = 0.0;
};

inline ExhaustiveAnalyzer make_analyzer(const CodeSpec& code, const SourceModel& source,
                                        std::uint64_t cap = 1'000'000) {
    return ExhaustiveAnalyzer(code.field(), code.n(), syndrome_encoder(code), source, cap);
}

inline double mutual_information_brute(const CodeSpec& code, const SourceModel& source, const SubsetQuery& j,
                                       std::uint64_t cap = 1'000'000) {
    return make_analyzer(code, source, cap).mutual_information(j);
}

inline std::vector<double> symbol_leak_profile(const ExhaustiveAnalyzer& analyzer) {
    std::vector<double> leaks(analyzer.n());
    for (std::size_t i = 0; i < analyzer.n(); ++i) leaks[i] = analyzer.mutual_information({i});
    return leaks;
}

inline std::vector<double> symbol_leak_profile(const CodeSpec& code, const SourceModel& source,
                                               std::uint64_t cap = 1'000'000) {
    return symbol_leak_profile(make_analyzer(code, source, cap));
}

// Largest fraction t/n such that every size-t subset leaks at most epsilon
// bits per symbol. Scans t from n down to 1 so no monotonicity in t is
// assumed; returns 0/n if no t qualifies. Comparisons carry a 1e-9 bit
// tolerance for entropy accumulation error.
inline Ratio mu_epsilon(const ExhaustiveAnalyzer& analyzer, double epsilon) {
    const double hx = analyzer.source().entropy_bits();
    if (epsilon < 0.0 || epsilon >= hx) throw EpsilonOutOfRange("epsilon must lie in [0, H(X))");
    const std::size_t n = analyzer.n();
    for (std::size_t t = n; t >= 1; --t) {
        std::vector<std::size_t> idx(t);
        for (std::size_t i = 0; i < t; ++i) idx[i] = i;
        bool all_ok = true;
        do {
            const double mi = analyzer.mutual_information(SubsetQuery(n, idx));
            if (mi / static_cast<double>(t) > epsilon + 1e-9) {
                all_ok = false;
                break;
            }
        } while (detail::next_combination(idx, n));
        if (all_ok) return Ratio(t, n);
    }
    return Ratio(0, n);
}

inline Ratio mu_epsilon(const CodeSpec& code, const SourceModel& source, double epsilon,
                        std::uint64_t cap = 1'000'000) {
    return mu_epsilon(make_analyzer(code, source, cap), epsilon);
}

struct SecrecyReport {
    std::string code_id;
    std::string source_id;
    double epsilon = 0.0;
    Ratio mu_eps;
    Ratio mu_zero;
    std::vector<double> per_symbol_leak;
    double prop3_bound = 0.0;        // min(L log2|X| / (H(X)-eps), 1)
    double prop4_rhs = 0.0;          // H(X) - mu_eps (H(X)-eps)
    double measured_total_leak = 0.0;  // (1/n) I(X^n; Y) = H(Y)/n
    bool prop5_rate_match = false;
};

inline SecrecyReport secrecy_bounds_report(const CodeSpec& code, const SourceModel& source, double epsilon,
                                           std::uint64_t cap = 1'000'000, std::string code_id = "",
                                           std::string source_id = "") {
    const ExhaustiveAnalyzer analyzer = make_analyzer(code, source, cap);
    const double hx = source.entropy_bits();
    const double q_log = std::log2(double(code.field().order()));
    const Ratio l = code.list_exponent();

    SecrecyReport rep;
    rep.code_id = std::move(code_id);
    rep.source_id = std::move(source_id);
    rep.epsilon = epsilon;
    rep.mu_eps = mu_epsilon(analyzer, epsilon);
    rep.mu_zero = epsilon == 0.0 ? rep.mu_eps : mu_epsilon(analyzer, 0.0);
    rep.per_symbol_leak = symbol_leak_profile(analyzer);
    rep.prop3_bound = std::min(l.value() * q_log / (hx - epsilon), 1.0);
    rep.prop4_rhs = hx - rep.mu_eps.value() * (hx - epsilon);
    rep.measured_total_leak = analyzer.output_entropy_bits() / static_cast<double>(code.n());
    const double rate_bound = rate_list_lower_bound(hx, l.value(), code.field().order());
    rep.prop5_rate_match = std::abs(rep.mu_eps.value() - rep.prop3_bound) <= 1e-9 &&
                           std::abs(rep.measured_total_leak - rate_bound) <= 1e-9;
    return rep;
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

// Stable line-delimited "key = value" rendering; per_symbol_leak is a
// comma-separated list.
inline std::string format_report(const SecrecyReport& rep) {
    std::string out;
    if (!rep.code_id.empty()) out += "code = " + rep.code_id + "\n";
    if (!rep.source_id.empty()) out += "source = " + rep.source_id + "\n";
    out += "epsilon = " + detail::fmt_double(rep.epsilon) + "\n";
    out += "mu_epsilon = " + detail::fmt_double(rep.mu_eps.value()) + "\n";
    out += "mu_zero = " + detail::fmt_double(rep.mu_zero.value()) + "\n";
    out += "per_symbol_leak = ";
    for (std::size_t i = 0; i < rep.per_symbol_leak.size(); ++i) {
        if (i > 0) out += ",";
        out += detail::fmt_double(rep.per_symbol_leak[i]);
    }
    out += "\n";
    out += "prop3_bound = " + detail::fmt_double(rep.prop3_bound) + "\n";
    out += "prop4_rhs = " + detail::fmt_double(rep.prop4_rhs) + "\n";
    out += "measured_total_leak = " + detail::fmt_double(rep.measured_total_leak) + "\n";
    out += "prop5_rate_match = " + std::string(rep.prop5_rate_match ? "true" : "false") + "\n";
    return out;
}

}  // namespace lsc

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lsc/secrecy.hpp"

using namespace lsc;
using Catch::Matchers::WithinAbs;

namespace {

// Independent closed-form oracle for the biased parity-bit instance.
double binary_entropy(double p) { return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p); }

CodeSpec parity_bit_code() {
    const Field f2 = Field::prime(2);
    return CodeSpec(f2, 2, 1, MatrixGF::from_rows(f2, {{1, 1}}));
}

}  // namespace

TEST_CASE("brute-force mutual information on the parity bit code") {
    const CodeSpec code = parity_bit_code();
    const SourceModel uniform = SourceModel::uniform(code.field());

    CHECK_THAT(mutual_information_brute(code, uniform, SubsetQuery(2, {0})), WithinAbs(0.0, 1e-12));
    CHECK_THAT(mutual_information_brute(code, uniform, SubsetQuery(2, {0, 1})), WithinAbs(1.0, 1e-12));

    const SourceModel biased(code.field(), {0.1, 0.9});
    const double expect = binary_entropy(0.82) - binary_entropy(0.9);
    CHECK_THAT(mutual_information_brute(code, biased, SubsetQuery(2, {0})), WithinAbs(expect, 1e-6));
}

TEST_CASE("subset queries are validated") {
    CHECK_THROWS_AS(SubsetQuery(3, {2, 1}), DimensionMismatch);
    CHECK_THROWS_AS(SubsetQuery(3, {1, 1}), DimensionMismatch);
    CHECK_THROWS_AS(SubsetQuery(3, {3}), DimensionMismatch);
}

TEST_CASE("symbol leak profiles") {
    const Field f5 = Field::prime(5);
    const SourceModel uniform = SourceModel::uniform(f5);
    const double log5 = std::log2(5.0);

    SECTION("trivial scheme leaks exactly the prefix") {
        const ExhaustiveAnalyzer an(f5, 4, prefix_encoder(5, 2), uniform);
        const std::vector<double> leaks = symbol_leak_profile(an);
        REQUIRE(leaks.size() == 4);
        CHECK_THAT(leaks[0], WithinAbs(log5, 1e-12));
        CHECK_THAT(leaks[1], WithinAbs(log5, 1e-12));
        CHECK_THAT(leaks[2], WithinAbs(0.0, 1e-12));
        CHECK_THAT(leaks[3], WithinAbs(0.0, 1e-12));
    }

    SECTION("MDS scheme leaks nothing per symbol") {
        const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
        for (double leak : symbol_leak_profile(code, uniform)) CHECK_THAT(leak, WithinAbs(0.0, 1e-12));
    }

    SECTION("k = 0 reveals everything") {
        const CodeSpec code = vandermonde_parity_check(f5, 4, 0);
        for (double leak : symbol_leak_profile(code, uniform)) CHECK_THAT(leak, WithinAbs(log5, 1e-12));
    }
}

TEST_CASE("mu_epsilon examples") {
    const Field f5 = Field::prime(5);
    const SourceModel uniform = SourceModel::uniform(f5);

    const CodeSpec mds = vandermonde_parity_check(f5, 4, 2);
    CHECK(mu_epsilon(mds, uniform, 0.0) == Ratio(1, 2));

    const ExhaustiveAnalyzer trivial(f5, 4, prefix_encoder(5, 2), uniform);
    CHECK(mu_epsilon(trivial, 0.0) == Ratio(0, 1));

    CHECK_THROWS_AS(mu_epsilon(mds, uniform, uniform.entropy_bits()), EpsilonOutOfRange);
    CHECK_THROWS_AS(mu_epsilon(mds, uniform, -0.1), EpsilonOutOfRange);
}

TEST_CASE("mu_epsilon is nondecreasing in epsilon") {
    const Field f2 = Field::prime(2);
    const SourceModel uniform = SourceModel::uniform(f2);
    const CodeSpec code = random_full_rank_code(f2, 5, 2, 777);
    const ExhaustiveAnalyzer an = make_analyzer(code, uniform);
    double prev = -1.0;
    for (double eps : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        const double mu = mu_epsilon(an, eps).value();
        CHECK(mu >= prev);
        prev = mu;
    }
}

TEST_CASE("secrecy bounds report for the worked MDS instance") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    const SecrecyReport rep = secrecy_bounds_report(code, SourceModel::uniform(f5), 0.0);

    CHECK(rep.mu_zero == Ratio(1, 2));
    CHECK(rep.mu_eps == Ratio(1, 2));
    CHECK_THAT(rep.prop3_bound, WithinAbs(0.5, 1e-12));
    CHECK_THAT(rep.prop4_rhs, WithinAbs(1.160964047443681, 1e-9));
    CHECK_THAT(rep.measured_total_leak, WithinAbs(1.160964047443681, 1e-9));
    CHECK(rep.prop5_rate_match);

    const std::string text = format_report(rep);
    CHECK(text.find("mu_zero = 0.5") != std::string::npos);
    CHECK(text.find("prop5_rate_match = true") != std::string::npos);
    CHECK(text.find("per_symbol_leak = 0,0,0,0") != std::string::npos);
}

TEST_CASE("k = n transmits nothing and hides everything") {
    const Field f3 = Field::prime(3);
    const CodeSpec code(f3, 3, 3, MatrixGF(f3, 0, 3));
    const SecrecyReport rep = secrecy_bounds_report(code, SourceModel::uniform(f3), 0.0);
    CHECK(rep.mu_zero == Ratio(1, 1));
    CHECK_THAT(rep.measured_total_leak, WithinAbs(0.0, 1e-12));
}

TEST_CASE("bounds hold on random binary codes") {
    const Field f2 = Field::prime(2);
    const SourceModel uniform = SourceModel::uniform(f2);
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const CodeSpec code = random_full_rank_code(f2, 5, 2, seed);
        const SecrecyReport rep = secrecy_bounds_report(code, uniform, 0.0);
        CHECK(rep.measured_total_leak <= rep.prop4_rhs + 1e-9);
        // these pinned codes all happen to be non-MDS, so the bound is strict
        REQUIRE_FALSE(is_mds(code));
        CHECK(rep.mu_zero.value() < rep.prop3_bound);
    }
}

TEST_CASE("mutual information respects entropy ceilings") {
    const Field f3 = Field::prime(3);
    const SourceModel biased(f3, {0.2, 0.3, 0.5});
    const CodeSpec code = random_full_rank_code(f3, 4, 2, 2024);
    const ExhaustiveAnalyzer an = make_analyzer(code, biased);
    const double hy = an.output_entropy_bits();
    std::vector<std::size_t> idx;
    for (std::size_t mask = 1; mask < 16; ++mask) {
        idx.clear();
        for (std::size_t i = 0; i < 4; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        const double hx = biased.entropy_bits() * double(idx.size());
        const double mi = an.mutual_information(SubsetQuery(4, idx));
        CHECK(mi >= 0.0);
        CHECK(mi <= std::min(hx, hy) + 1e-9);
    }
}

TEST_CASE("absolute symbol secrecy is tight at subsets of size k+1 for MDS codes") {
    for (const auto& [q, n, k] : std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>>{
             {3, 3, 1}, {5, 4, 2}, {7, 4, 3}}) {
        const Field f = Field::prime(q);
        const CodeSpec code = vandermonde_parity_check(f, n, k);
        const SourceModel uniform = SourceModel::uniform(f);
        const ExhaustiveAnalyzer an = make_analyzer(code, uniform);
        REQUIRE(mu_epsilon(an, 0.0) == Ratio(k, n));

        // some subset of size k+1 must leak
        std::vector<std::size_t> idx(k + 1);
        bool leaky = false;
        for (std::size_t i = 0; i <= k; ++i) idx[i] = i;
        do {
            if (an.mutual_information(SubsetQuery(n, idx)) > 1e-6) {
                leaky = true;
                break;
            }
        } while (detail::next_combination(idx, n));
        REQUIRE(leaky);
    }
}

TEST_CASE("analyzer enforces the enumeration cap") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    CHECK_THROWS_AS(make_analyzer(code, SourceModel::uniform(f5), 100), TooLarge);
}

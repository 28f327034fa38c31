#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "lsc/scheme.hpp"
#include "lsc/secrecy.hpp"

using namespace lsc;

TEST_CASE("splitmix64 matches the published reference trace") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xE220A8397B1DCDAFull);
    CHECK(g.next() == 0x6E789E6AA1B965F4ull);
    CHECK(g.next() == 0x06C45D188009454Full);
}

TEST_CASE("keystream basics") {
    const Field f5 = Field::prime(5);
    CHECK(keystream(1, f5, 0).empty());
    CHECK(keystream(9, f5, 16) == keystream(9, f5, 16));
    CHECK_FALSE(keystream(9, f5, 16) == keystream(10, f5, 16));
    for (Fe s : keystream(123, f5, 1000)) CHECK(s < 5);
}

TEST_CASE("rejection sampling covers each residue class exactly floor(2^64/q) times") {
    for (std::uint32_t q = 2; q <= 7; ++q) {
        const unsigned __int128 span = (unsigned __int128)1 << 64;
        const std::uint64_t per_residue = static_cast<std::uint64_t>(span / q);

        // acceptance region used by the implementation: [0, 2^64 - rem)
        const std::uint64_t rem = (UINT64_MAX % q + 1) % q;
        const unsigned __int128 accepted = span - rem;
        REQUIRE(accepted == (unsigned __int128)per_residue * q);
        REQUIRE(accepted % q == 0);
    }
}

TEST_CASE("derive_complement examples") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    CHECK(derive_complement(code) == MatrixGF::from_rows(f5, {{1, 0, 0, 0}, {0, 1, 0, 0}}));

    const CodeSpec k0 = vandermonde_parity_check(f5, 4, 0);
    CHECK(derive_complement(k0).rows() == 0);
}

TEST_CASE("two-phase worked example over GF(5)") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    const MatrixGF d = derive_complement(code);
    const std::vector<Fe> x{1, 2, 3, 4};

    const InnerCipher otp = InnerCipher::one_time_pad({3, 1});
    const TwoPhaseBundle bundle = two_phase_encrypt(x, code, d, otp);
    CHECK(bundle.phase1 == std::vector<Fe>{0, 0});
    CHECK(bundle.phase2 == std::vector<Fe>{4, 3});
    CHECK(two_phase_decrypt(bundle, code, d, otp) == x);
}

TEST_CASE("zero key acts as the identity cipher") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    const MatrixGF d = derive_complement(code);
    const std::vector<Fe> x{1, 2, 3, 4};
    const TwoPhaseBundle bundle = two_phase_encrypt(x, code, d, InnerCipher::one_time_pad({0, 0}));
    CHECK(bundle.phase2 == mat_vec_mul(d, x));
}

TEST_CASE("k = 0 leaves phase2 empty and still decrypts") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 0);
    const MatrixGF d = derive_complement(code);
    const std::vector<Fe> x{4, 0, 2, 1};
    const InnerCipher otp = InnerCipher::one_time_pad({});
    const TwoPhaseBundle bundle = two_phase_encrypt(x, code, d, otp);
    CHECK(bundle.phase2.empty());
    CHECK(two_phase_decrypt(bundle, code, d, otp) == x);
}

TEST_CASE("roundtrip holds for both ciphers on random messages") {
    SplitMix64 rng(41);
    for (const Field& f : {Field::prime(5), Field::prime(257), Field::binary8()}) {
        const CodeSpec code = vandermonde_parity_check(f, 5, 2);
        const MatrixGF d = derive_complement(code);
        for (int trial = 0; trial < 100; ++trial) {
            debug_reset_otp_registry();  // each trial is its own session
            std::vector<Fe> x(5);
            for (auto& v : x) v = Fe(rng.next_below(f.order()));

            std::vector<Fe> key(2);
            for (auto& v : key) v = Fe(rng.next_below(f.order()));
            const InnerCipher otp = InnerCipher::one_time_pad(key);
            CHECK(two_phase_decrypt(two_phase_encrypt(x, code, d, otp), code, d, otp) == x);

            const InnerCipher prg = InnerCipher::prg_stream(rng.next());
            const TwoPhaseBundle bundle = two_phase_encrypt(x, code, d, prg);
            CHECK(bundle.prg_seed == prg.seed());
            CHECK(two_phase_decrypt(bundle, code, d, prg) == x);
        }
    }
}

TEST_CASE("phase 1 is identical across a coset") {
    const Field f3 = Field::prime(3);
    const CodeSpec code = vandermonde_parity_check(f3, 3, 1);
    const std::vector<Fe> x{1, 2, 0};
    const Syndrome s = lsc_encode(code, x);
    CosetList list(code, s);
    while (auto member = list.next()) CHECK(lsc_encode(code, *member).symbols == s.symbols);
}

TEST_CASE("wrong key decrypts into the right coset") {
    SplitMix64 rng(43);
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    const MatrixGF d = derive_complement(code);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        debug_reset_otp_registry();
        std::vector<Fe> x(4), key(2), wrong(2);
        for (auto& v : x) v = Fe(rng.next_below(5));
        for (auto& v : key) v = Fe(rng.next_below(5));
        do {
            for (auto& v : wrong) v = Fe(rng.next_below(5));
        } while (wrong == key);

        const TwoPhaseBundle bundle = two_phase_encrypt(x, code, d, InnerCipher::one_time_pad(key));
        const std::vector<Fe> guess = two_phase_decrypt(bundle, code, d, InnerCipher::one_time_pad(wrong));
        REQUIRE(mat_vec_mul(code.h(), guess) == bundle.phase1);
        if (guess != x) ++mismatches;
    }
    CHECK(mismatches == 200);  // distinct keys always move within the coset
}

TEST_CASE("key length must match k") {
    const Field f5 = Field::prime(5);
    const CodeSpec code = vandermonde_parity_check(f5, 4, 2);
    const MatrixGF d = derive_complement(code);
    const std::vector<Fe> x{1, 2, 3, 4};
    CHECK_THROWS_AS(two_phase_encrypt(x, code, d, InnerCipher::one_time_pad({1, 2, 3})), KeyLengthMismatch);
}

TEST_CASE("prg randomization is invertible and matches the keystream") {
    SplitMix64 rng(47);
    for (const Field& f : {Field::prime(5), Field::binary8()}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::uint64_t seed = rng.next();
            std::vector<Fe> x(8);
            for (auto& v : x) v = Fe(rng.next_below(f.order()));

            const std::vector<Fe> ks = keystream(seed, f, x.size());
            const std::vector<Fe> randomized = prg_randomize(x, f, seed);
            for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(randomized[i] == f.add(x[i], ks[i]));
            REQUIRE(prg_derandomize(randomized, f, seed) == x);
        }
    }
}

TEST_CASE("overlap chain encoding") {
    const Field f2 = Field::prime(2);
    const CodeSpec code2n(f2, 4, 2, MatrixGF::from_rows(f2, {{1, 1, 1, 1}, {0, 1, 0, 1}}));

    const std::vector<std::vector<Fe>> blocks{{1, 0}, {0, 1}, {1, 1}};
    const std::vector<Syndrome> out = overlap_chain_encode(blocks, code2n);
    REQUIRE(out.size() == 2);
    CHECK(out[0].symbols == std::vector<Fe>{0, 1});
    CHECK(out[1].symbols == std::vector<Fe>{1, 0});

    CHECK_THROWS_AS(overlap_chain_encode(std::vector<std::vector<Fe>>{{1, 0}}, code2n), TooFewBlocks);
    CHECK_THROWS_AS(overlap_chain_encode(std::vector<std::vector<Fe>>{{1}, {0}}, code2n), DimensionMismatch);
}

TEST_CASE("chained syndromes show the dependence induced by the shared block") {
    const Field f2 = Field::prime(2);
    const CodeSpec code2n(f2, 4, 2, MatrixGF::from_rows(f2, {{1, 1, 1, 1}, {0, 1, 0, 1}}));

    // exact I(Y1; Y2) by enumerating all 64 block triples
    auto pack = [](const Syndrome& s) { return s.symbols[0] * 2 + s.symbols[1]; };
    std::map<std::pair<int, int>, double> joint;
    for (int bits = 0; bits < 64; ++bits) {
        std::vector<std::vector<Fe>> blocks{{Fe(bits & 1), Fe((bits >> 1) & 1)},
                                            {Fe((bits >> 2) & 1), Fe((bits >> 3) & 1)},
                                            {Fe((bits >> 4) & 1), Fe((bits >> 5) & 1)}};
        const auto ys = overlap_chain_encode(blocks, code2n);
        joint[{pack(ys[0]), pack(ys[1])}] += 1.0 / 64.0;
    }
    double exact = 0.0;
    std::map<int, double> m1, m2;
    for (const auto& [yy, p] : joint) {
        m1[yy.first] += p;
        m2[yy.second] += p;
    }
    for (const auto& [yy, p] : joint) exact += p * std::log2(p / (m1[yy.first] * m2[yy.second]));

    // seed-pinned empirical estimate from independent uniform blocks
    SplitMix64 rng(53);
    std::map<std::pair<int, int>, double> emp;
    const int samples = 20000;
    for (int t = 0; t < samples; ++t) {
        std::vector<std::vector<Fe>> blocks(3, std::vector<Fe>(2));
        for (auto& b : blocks)
            for (auto& v : b) v = Fe(rng.next_below(2));
        const auto ys = overlap_chain_encode(blocks, code2n);
        emp[{pack(ys[0]), pack(ys[1])}] += 1.0 / samples;
    }
    double estimate = 0.0;
    std::map<int, double> e1, e2;
    for (const auto& [yy, p] : emp) {
        e1[yy.first] += p;
        e2[yy.second] += p;
    }
    for (const auto& [yy, p] : emp) estimate += p * std::log2(p / (e1[yy.first] * e2[yy.second]));

    CHECK_THAT(estimate, Catch::Matchers::WithinAbs(exact, 0.05));
}

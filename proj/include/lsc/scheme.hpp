#pragma once

#include <cassert>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "lsc/coding.hpp"
#include "lsc/codes.hpp"
#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/linalg.hpp"
#include "lsc/prng.hpp"

namespace lsc {

// Deterministic keystream of uniform field symbols from a 64-bit seed.
// splitmix64 with rejection sampling; reproducible, not cryptographic.
inline std::vector<Fe> keystream(std::uint64_t seed, const Field& field, std::size_t len) {
    SplitMix64 rng(seed);
    std::vector<Fe> out(len);
    for (auto& s : out) s = static_cast<Fe>(rng.next_below(field.order()));
    return out;
}

inline std::vector<Fe> prg_randomize(std::span<const Fe> x, const Field& field, std::uint64_t seed) {
    const std::vector<Fe> ks = keystream(seed, field, x.size());
    std::vector<Fe> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = field.add(x[i], ks[i]);
    return out;
}

inline std::vector<Fe> prg_derandomize(std::span<const Fe> x, const Field& field, std::uint64_t seed) {
    const std::vector<Fe> ks = keystream(seed, field, x.size());
    std::vector<Fe> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = field.sub(x[i], ks[i]);
    return out;
}

enum class CipherKind : std::uint8_t { OneTimePad = 0, PrgStream = 1 };

namespace detail {

// Debug-build OTP single-use tracking. One registry per process; the CLI
// resets it per invocation since each real invocation is its own process.
inline std::set<std::vector<Fe>>& otp_key_registry() {
    static std::set<std::vector<Fe>> reg;
    return reg;
}
inline std::mutex& otp_key_registry_mutex() {
    static std::mutex m;
    return m;
}

inline bool otp_key_mark_used(const std::vector<Fe>& key) {
    std::lock_guard<std::mutex> lock(otp_key_registry_mutex());
    return otp_key_registry().insert(key).second;
}

}  // namespace detail

inline void debug_reset_otp_registry() {
    std::lock_guard<std::mutex> lock(detail::otp_key_registry_mutex());
    detail::otp_key_registry().clear();
}

// Phase-II cipher (Enc', Dec'). One-time pad adds a uniform key of length k;
// prg-stream adds a splitmix64 keystream and is a demonstrator only, with no
// cryptographic claim.
class InnerCipher {
  public:
    static InnerCipher one_time_pad(std::vector<Fe> key) {
        InnerCipher c;
        c.kind_ = CipherKind::OneTimePad;
        c.key_ = std::move(key);
        return c;
    }

    static InnerCipher prg_stream(std::uint64_t seed) {
        InnerCipher c;
        c.kind_ = CipherKind::PrgStream;
        c.seed_ = seed;
        return c;
    }

    CipherKind kind() const { return kind_; }
    const std::vector<Fe>& key() const { return key_; }
    std::uint64_t seed() const { return seed_; }

    std::vector<Fe> encrypt(const Field& field, std::span<const Fe> plain) const {
        const std::vector<Fe> pad = pad_for(field, plain.size());
        // OTP keys are single-use; reuse trips this in debug builds.
        if (kind_ == CipherKind::OneTimePad && !plain.empty())
            assert(detail::otp_key_mark_used(key_) && "one-time pad key reused");
        std::vector<Fe> out(plain.size());
        for (std::size_t i = 0; i < plain.size(); ++i) out[i] = field.add(plain[i], pad[i]);
        return out;
    }

    std::vector<Fe> decrypt(const Field& field, std::span<const Fe> cipher) const {
        const std::vector<Fe> pad = pad_for(field, cipher.size());
        std::vector<Fe> out(cipher.size());
        for (std::size_t i = 0; i < cipher.size(); ++i) out[i] = field.sub(cipher[i], pad[i]);
        return out;
    }

  private:
    std::vector<Fe> pad_for(const Field& field, std::size_t len) const {
        if (kind_ == CipherKind::OneTimePad) {
            if (key_.size() != len) throw KeyLengthMismatch("one-time pad key length must equal message length");
            return key_;
        }
        return keystream(seed_, field, len);
    }

    CipherKind kind_ = CipherKind::OneTimePad;
    std::vector<Fe> key_;
    std::uint64_t seed_ = 0;
};

// Two-phase payload: phase1 = H*x travels key-free ahead of time, phase2 =
// Enc'(D*x) closes the coset once keys exist. For prg-stream the seed rides
// along with phase2 on the wire (8-byte little-endian envelope).
struct TwoPhaseBundle {
    std::vector<Fe> phase1;
    std::vector<Fe> phase2;
    CipherKind cipher_kind = CipherKind::OneTimePad;
    std::optional<std::uint64_t> prg_seed;
};

// D completing H to a basis of F_q^n, so stacking recovers x. Deterministic
// per code.
inline MatrixGF derive_complement(const CodeSpec& code) { return complete_basis(code.h()); }

inline TwoPhaseBundle two_phase_encrypt(std::span<const Fe> x, const CodeSpec& code, const MatrixGF& d,
                                        const InnerCipher& cipher) {
    if (x.size() != code.n()) throw DimensionMismatch("message length must equal n");
    if (d.rows() != code.k() || d.cols() != code.n()) throw DimensionMismatch("complement must be k x n");
    TwoPhaseBundle bundle;
    bundle.phase1 = mat_vec_mul(code.h(), x);
    bundle.phase2 = cipher.encrypt(code.field(), mat_vec_mul(d, x));
    bundle.cipher_kind = cipher.kind();
    if (cipher.kind() == CipherKind::PrgStream) bundle.prg_seed = cipher.seed();
    return bundle;
}

inline std::vector<Fe> two_phase_decrypt(const TwoPhaseBundle& bundle, const CodeSpec& code, const MatrixGF& d,
                                         const InnerCipher& cipher) {
    if (bundle.phase1.size() != code.n() - code.k()) throw DimensionMismatch("phase1 length must equal n-k");
    if (bundle.phase2.size() != code.k()) throw DimensionMismatch("phase2 length must equal k");
    if (d.rows() != code.k() || d.cols() != code.n()) throw DimensionMismatch("complement must be k x n");
    const std::vector<Fe> t = cipher.decrypt(code.field(), bundle.phase2);
    std::vector<Fe> rhs = bundle.phase1;
    rhs.insert(rhs.end(), t.begin(), t.end());
    return solve_square(stack_rows(code.h(), d), rhs);
}

// Edge-effect mitigation for correlated sources: encode consecutive block
// pairs with a length-2n code, so each syndrome covers an overlap.
inline std::vector<Syndrome> overlap_chain_encode(std::span<const std::vector<Fe>> blocks,
                                                  const CodeSpec& code2n) {
    if (blocks.size() < 2) throw TooFewBlocks("overlap chaining needs at least two blocks");
    if (code2n.n() % 2 != 0) throw DimensionMismatch("chaining code must have even block length");
    const std::size_t n = code2n.n() / 2;
    for (const auto& b : blocks)
        if (b.size() != n) throw DimensionMismatch("every block must have length n");
    std::vector<Syndrome> out;
    out.reserve(blocks.size() - 1);
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
        std::vector<Fe> joined = blocks[i];
        joined.insert(joined.end(), blocks[i + 1].begin(), blocks[i + 1].end());
        out.push_back(lsc_encode(code2n, joined));
    }
    return out;
}

}  // namespace lsc

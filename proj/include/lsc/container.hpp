#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsc/codes.hpp"
#include "lsc/errors.hpp"
#include "lsc/gf.hpp"
#include "lsc/linalg.hpp"

namespace lsc {

// "LSC1" container, version 1. Little-endian throughout.
//
//   0  magic "LSC1"
//   4  version (0x01)
//   5  field-kind: 0 prime, 1 binary-extension
//   6  field-param (u32): prime p, or reduction polynomial
//  10  n (u32)
//  14  k (u32)
//  18  payload-kind: 0 syndrome, 1 phase1, 2 phase2, 3 matrix, 4 plaintext
//  19  row-count (u32): matrices only, else 0
//  23  symbol-count (u64)
//  31  phase2 seed envelope (u64), present only for prg-stream phase2
//  31+ symbols, one byte each when q <= 256, else two bytes LE
//
// The seed envelope is not self-describing; whoever parses a phase2 payload
// states the cipher kind (the CLI knows it from --cipher).
enum class PayloadKind : std::uint8_t {
    Syndrome = 0,
    Phase1 = 1,
    Phase2 = 2,
    Matrix = 3,
    Plaintext = 4,
};

struct Container {
    FieldKind field_kind = FieldKind::Prime;
    std::uint32_t field_param = 2;
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    PayloadKind payload_kind = PayloadKind::Plaintext;
    std::uint32_t row_count = 0;
    std::optional<std::uint64_t> seed_envelope;
    std::vector<Fe> symbols;

    Field field() const { return Field::of(field_kind, field_param); }
};

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
inline std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | in[off + i];
    return v;
}
inline std::uint64_t get_u64(std::span<const std::uint8_t> in, std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | in[off + i];
    return v;
}

}  // namespace detail

inline constexpr char kContainerMagic[4] = {'L', 'S', 'C', '1'};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::size_t kContainerHeaderSize = 31;

inline std::vector<std::uint8_t> serialize(const Container& c) {
    const Field f = c.field();
    const bool wide = f.order() > 256;
    std::vector<std::uint8_t> out;
    out.reserve(kContainerHeaderSize + (c.seed_envelope ? 8 : 0) + c.symbols.size() * (wide ? 2 : 1));
    out.insert(out.end(), std::begin(kContainerMagic), std::end(kContainerMagic));
    out.push_back(kContainerVersion);
    out.push_back(static_cast<std::uint8_t>(c.field_kind));
    detail::put_u32(out, c.field_param);
    detail::put_u32(out, c.n);
    detail::put_u32(out, c.k);
    out.push_back(static_cast<std::uint8_t>(c.payload_kind));
    detail::put_u32(out, c.row_count);
    detail::put_u64(out, c.symbols.size());
    if (c.seed_envelope) detail::put_u64(out, *c.seed_envelope);
    for (Fe s : c.symbols) {
        out.push_back(static_cast<std::uint8_t>(s & 0xFF));
        if (wide) out.push_back(static_cast<std::uint8_t>(s >> 8));
    }
    return out;
}

inline Container parse(std::span<const std::uint8_t> bytes, bool expect_seed_envelope = false) {
    if (bytes.size() < kContainerHeaderSize) throw FormatError(bytes.size(), "truncated header");
    for (std::size_t i = 0; i < 4; ++i)
        if (bytes[i] != static_cast<std::uint8_t>(kContainerMagic[i])) throw FormatError(i, "bad magic");
    if (bytes[4] != kContainerVersion) throw FormatError(4, "unsupported version");
    if (bytes[5] > 1) throw FormatError(5, "unknown field kind");

    Container c;
    c.field_kind = static_cast<FieldKind>(bytes[5]);
    c.field_param = detail::get_u32(bytes, 6);
    Field f = [&] {
        try {
            return Field::of(c.field_kind, c.field_param);
        } catch (const InvalidField& e) {
            throw FormatError(6, e.what());
        }
    }();
    c.n = detail::get_u32(bytes, 10);
    c.k = detail::get_u32(bytes, 14);
    if (c.k > c.n) throw FormatError(14, "k exceeds n");
    if (bytes[18] > 4) throw FormatError(18, "unknown payload kind");
    c.payload_kind = static_cast<PayloadKind>(bytes[18]);
    c.row_count = detail::get_u32(bytes, 19);
    if (c.payload_kind != PayloadKind::Matrix && c.row_count != 0)
        throw FormatError(19, "row count must be 0 for non-matrix payloads");
    const std::uint64_t count = detail::get_u64(bytes, 23);
    if (count > bytes.size()) throw FormatError(23, "declared symbol count does not match body length");
    if (c.payload_kind == PayloadKind::Matrix &&
        count != std::uint64_t(c.row_count) * c.n)
        throw FormatError(23, "matrix symbol count must be row-count * n");

    std::size_t off = kContainerHeaderSize;
    const bool envelope = expect_seed_envelope && c.payload_kind == PayloadKind::Phase2;
    if (envelope) {
        if (bytes.size() < off + 8) throw FormatError(bytes.size(), "truncated seed envelope");
        c.seed_envelope = detail::get_u64(bytes, off);
        off += 8;
    }
    const std::size_t width = f.order() > 256 ? 2 : 1;
    if (bytes.size() != off + count * width)
        throw FormatError(bytes.size() < off + count * width ? bytes.size() : off + count * width,
                          "declared symbol count does not match body length");
    c.symbols.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint32_t v = bytes[off];
        if (width == 2) v |= std::uint32_t(bytes[off + 1]) << 8;
        if (v >= f.order()) throw FormatError(off, "symbol value out of range for field");
        c.symbols.push_back(static_cast<Fe>(v));
        off += width;
    }
    return c;
}

inline Container make_payload_container(const CodeSpec& code, PayloadKind kind, std::vector<Fe> symbols,
                                        std::optional<std::uint64_t> seed = std::nullopt) {
    Container c;
    c.field_kind = code.field().kind();
    c.field_param = code.field().param();
    c.n = static_cast<std::uint32_t>(code.n());
    c.k = static_cast<std::uint32_t>(code.k());
    c.payload_kind = kind;
    c.seed_envelope = seed;
    c.symbols = std::move(symbols);
    return c;
}

inline Container make_matrix_container(const Field& field, std::uint32_t n, std::uint32_t k, const MatrixGF& m) {
    Container c;
    c.field_kind = field.kind();
    c.field_param = field.param();
    c.n = n;
    c.k = k;
    c.payload_kind = PayloadKind::Matrix;
    c.row_count = static_cast<std::uint32_t>(m.rows());
    c.symbols = m.elements();
    return c;
}

inline MatrixGF matrix_from_container(const Container& c) {
    if (c.payload_kind != PayloadKind::Matrix) throw FormatError(18, "expected a matrix payload");
    return MatrixGF(c.field(), c.row_count, c.n, c.symbols);
}

// Interprets a matrix container holding an (n-k) x n parity check.
inline CodeSpec code_from_container(const Container& c) {
    MatrixGF h = matrix_from_container(c);
    if (h.rows() != c.n - c.k) throw FormatError(19, "parity check must have n-k rows");
    return CodeSpec(c.field(), c.n, c.k, std::move(h));
}

}  // namespace lsc

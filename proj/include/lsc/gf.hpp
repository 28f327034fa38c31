#pragma once

#include <array>
#include <cstdint>

#include "lsc/errors.hpp"

namespace lsc {

// Canonical field element, always in [0, q). Equality is bitwise.
using Fe = std::uint16_t;

enum class FieldKind : std::uint8_t { Prime = 0, Binary8 = 1 };

namespace detail {

inline bool is_prime_u32(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

// Carry-less product of two GF(2)[x] polynomials given as bit masks.
inline std::uint32_t clmul(std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = 0;
    while (b != 0) {
        if (b & 1u) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p != 0) {
        ++d;
        p >>= 1;
    }
    return d;
}

inline std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
    const int dm = poly_degree(m);
    for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
    return a;
}

// Product in GF(2^8) straight from the definition: carry-less multiply, then
// reduce by the degree-8 polynomial. The table path is checked against this.
inline std::uint8_t gf256_mul_ref(std::uint8_t a, std::uint8_t b, std::uint32_t poly) {
    return static_cast<std::uint8_t>(poly_mod(clmul(a, b), poly));
}

inline bool irreducible_deg8(std::uint32_t poly) {
    if (poly_degree(poly) != 8) return false;
    // A reducible degree-8 polynomial has a factor of degree <= 4.
    for (std::uint32_t d = 2; d < 32; ++d)
        if (poly_mod(poly, d) == 0) return false;
    return true;
}

}  // namespace detail

// The alphabet F_q: a prime field (p <= 2^16) or GF(2^8) with an explicit
// reduction polynomial. Immutable after construction; all operations are pure.
class Field {
  public:
    static Field prime(std::uint32_t p) {
        if (p > 65536 || !detail::is_prime_u32(p))
            throw InvalidField("prime field modulus must be a prime <= 2^16, got " + std::to_string(p));
        return Field(FieldKind::Prime, p, p);
    }

    static Field binary8(std::uint32_t poly = 0x11B) {
        if (!detail::irreducible_deg8(poly))
            throw InvalidField("reduction polynomial must be degree 8 and irreducible, got " + std::to_string(poly));
        Field f(FieldKind::Binary8, 256, poly);
        f.build_tables();
        return f;
    }

    static Field of(FieldKind kind, std::uint32_t param) {
        return kind == FieldKind::Prime ? prime(param) : binary8(param);
    }

    FieldKind kind() const { return kind_; }
    std::uint32_t order() const { return q_; }
    // Prime p, or the reduction polynomial.
    std::uint32_t param() const { return param_; }

    bool canonical(std::uint32_t v) const { return v < q_; }

    Fe add(Fe a, Fe b) const {
        if (kind_ == FieldKind::Binary8) return a ^ b;
        std::uint32_t s = std::uint32_t(a) + b;
        if (s >= q_) s -= q_;
        return static_cast<Fe>(s);
    }

    Fe neg(Fe a) const {
        if (kind_ == FieldKind::Binary8) return a;
        return a == 0 ? 0 : static_cast<Fe>(q_ - a);
    }

    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    Fe mul(Fe a, Fe b) const {
        if (kind_ == FieldKind::Binary8) {
            if (a == 0 || b == 0) return 0;
            return alog_[(std::uint32_t(log_[a]) + log_[b]) % 255];
        }
        return static_cast<Fe>(std::uint64_t(a) * b % q_);
    }

    Fe inv(Fe a) const {
        if (a == 0) throw ZeroInverse("0 has no multiplicative inverse");
        if (kind_ == FieldKind::Binary8) return alog_[(255 - log_[a]) % 255];
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1, r = q_, new_r = a;
        while (new_r != 0) {
            std::int64_t quo = r / new_r;
            std::int64_t tmp = t - quo * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - quo * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += q_;
        return static_cast<Fe>(t);
    }

    Fe pow(Fe base, std::uint64_t e) const {
        Fe r = 1, b = base;
        while (e != 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Field& a, const Field& b) { return a.kind_ == b.kind_ && a.param_ == b.param_; }

  private:
    Field(FieldKind kind, std::uint32_t q, std::uint32_t param) : kind_(kind), q_(q), param_(param) {}

    // log/antilog tables over a generator found by exhausting candidates.
    // The polynomial is only required to be irreducible, not primitive, so
    // the generator need not be x.
    void build_tables() {
        std::uint32_t g = 0;
        for (std::uint32_t cand = 2; cand < 256; ++cand) {
            std::uint32_t acc = cand, ord = 1;
            while (acc != 1) {
                acc = detail::gf256_mul_ref(static_cast<std::uint8_t>(acc), static_cast<std::uint8_t>(cand), param_);
                ++ord;
            }
            if (ord == 255) {
                g = cand;
                break;
            }
        }
        std::uint32_t acc = 1;
        for (std::uint32_t i = 0; i < 255; ++i) {
            alog_[i] = static_cast<std::uint8_t>(acc);
            log_[acc] = static_cast<std::uint8_t>(i);
            acc = detail::gf256_mul_ref(static_cast<std::uint8_t>(acc), static_cast<std::uint8_t>(g), param_);
        }
    }

    FieldKind kind_;
    std::uint32_t q_;
    std::uint32_t param_;
    std::array<std::uint8_t, 256> log_{};
    std::array<std::uint8_t, 256> alog_{};
};

}  // namespace lsc

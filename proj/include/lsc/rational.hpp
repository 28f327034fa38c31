#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace lsc {

// Exact nonnegative ratio. Used where fractions like k/n or t/n must be
// reported without floating-point rounding.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    constexpr Ratio() = default;
    constexpr Ratio(std::uint64_t n, std::uint64_t d) : num(n), den(d) {}

    double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
    }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return a < b || a == b; }

    std::string str() const {
        std::uint64_t g = std::gcd(num, den);
        if (g == 0) return "0";
        return std::to_string(num / g) + "/" + std::to_string(den / g);
    }
};

}  // namespace lsc

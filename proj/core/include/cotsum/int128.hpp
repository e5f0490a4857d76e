#pragma once

#include <cstdint>
#include <string>
#include <stdexcept>

namespace cotsum {

// 128-bit unsigned arithmetic. A dyadic angle is a u128 F read as F / 2^128;
// n*alpha mod 1 is then the wrapping product n*F, exact for any n.
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u128 u128_from_parts(std::uint64_t hi, std::uint64_t lo) {
    return (u128(hi) << 64) | u128(lo);
}
inline constexpr std::uint64_t u128_hi(u128 x) { return std::uint64_t(x >> 64); }
inline constexpr std::uint64_t u128_lo(u128 x) { return std::uint64_t(x); }

inline constexpr u128 U128_HALF = u128(1) << 127;   // represents 1/2

double u128_to_double(u128 x);

// fraction (x / 2^128) as a double in [0,1)
inline double frac_to_double(u128 x) { return u128_to_double(x) * 0x1p-128; }

// signed fractional part of x/2^128, value in (-1/2, 1/2]; the boundary
// x = 2^127 maps to +1/2
inline double frac_to_signed_double(u128 x) {
    if (x <= U128_HALF) return frac_to_double(x);
    return -frac_to_double(u128(0) - x);
}

// does F * n >= 2^127, computed in full 192-bit precision (F < 2^128, n < 2^64)
inline bool mul_frac_ge_half(u128 f, std::uint64_t n) {
    u128 hi_prod = u128(u128_hi(f)) * n;
    u128 lo_prod = u128(u128_lo(f)) * n;
    if (hi_prod >> 63) return true;                // hi_prod*2^64 alone >= 2^127
    u128 shifted = hi_prod << 64;
    u128 sum = shifted + lo_prod;
    if (sum < shifted) return true;                // carried past 2^128
    return sum >= U128_HALF;
}

// parse "0xhex" or decimal digit string of a fraction numerator (mod 2^128)
u128 u128_parse(const std::string& s);
std::string u128_to_string(u128 x);

} // namespace cotsum

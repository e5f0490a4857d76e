#include "cotsum/angle.hpp"

#include <cmath>
#include <numeric>

namespace cotsum {

double u128_to_double(u128 x) {
    return std::ldexp(double(u128_hi(x)), 64) + double(u128_lo(x));
}

u128 u128_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty 128-bit literal");
    u128 v = 0;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        for (std::size_t i = 2; i < s.size(); ++i) {
            char c = s[i];
            int d = c >= '0' && c <= '9' ? c - '0'
                  : c >= 'a' && c <= 'f' ? c - 'a' + 10
                  : c >= 'A' && c <= 'F' ? c - 'A' + 10 : -1;
            if (d < 0) throw std::invalid_argument("bad hex digit in 128-bit literal");
            v = (v << 4) | u128(d);
        }
        return v;
    }
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in 128-bit literal");
        v = v * 10 + u128(c - '0');
    }
    return v;
}

std::string u128_to_string(u128 x) {
    if (x == 0) return "0";
    std::string out;
    while (x > 0) {
        out.push_back(char('0' + int(x % 10)));
        x /= 10;
    }
    return {out.rbegin(), out.rend()};
}

Angle Angle::rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("angle denominator must be >= 1");
    num %= den;
    std::uint64_t g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
    Angle a;
    a.rational_ = true;
    a.num_ = num;
    a.den_ = den;
    return a;
}

Angle Angle::dyadic(u128 fraction) {
    Angle a;
    a.rational_ = false;
    a.frac_ = fraction;
    return a;
}

Angle Angle::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::uint64_t p = std::stoull(text.substr(0, slash));
        std::uint64_t q = std::stoull(text.substr(slash + 1));
        return rational(p, q);
    }
    double v = std::stod(text);
    if (!(v >= 0.0) || v >= 1.0) {
        v = v - std::floor(v);
    }
    // decimal input: keep the 53 significant bits, zero-fill below
    u128 f = u128(std::ldexp(v, 64));
    return dyadic(f << 64);
}

double Angle::value() const {
    if (rational_) return double(num_) / double(den_);
    return frac_to_double(frac_);
}

std::string Angle::to_string() const {
    if (rational_) return std::to_string(num_) + "/" + std::to_string(den_);
    return "dyadic:" + u128_to_string(frac_) + "/2^128";
}

std::uint64_t Angle::residue(std::uint64_t n) const {
    if (!rational_) throw std::logic_error("residue() needs a rational angle");
    // n*num mod den; num,den < 2^64 so the product fits in u128
    return std::uint64_t((u128(n % den_) * num_) % den_);
}

double Angle::signed_frac_of_multiple(std::uint64_t n) const {
    if (rational_) {
        std::uint64_t r = residue(n);
        if (2 * r <= den_) return double(r) / double(den_);
        return -double(den_ - r) / double(den_);
    }
    u128 f = frac_ * n;   // wraps mod 2^128: exact reduction
    return frac_to_signed_double(f);
}

double signed_frac(double x) {
    double f = x - std::floor(x);          // [0,1)
    if (f > 0.5) return f - 1.0;
    return f;                              // boundary 0.5 stays +1/2
}

double dist_nearest_int(double x) { return std::abs(signed_frac(x)); }

BigRat signed_frac(const BigRat& x) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);   // > 0, reduced
    BigInt r = num % den;
    if (r < 0) r += den;
    // r/den in [0,1); signed: subtract 1 when strictly above 1/2
    if (2 * r > den) return BigRat(r - den, den);
    return BigRat(r, den);
}

BigRat dist_nearest_int(const BigRat& x) {
    BigRat s = signed_frac(x);
    return s < 0 ? BigRat(-s) : s;
}

} // namespace cotsum

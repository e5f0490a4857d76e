#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cotsum/int128.hpp"
#include "cotsum/rational.hpp"

namespace cotsum {

// thrown when a sum hits an integer multiple of alpha (cot/reciprocal pole)
class singular_term_error : public std::runtime_error {
public:
    singular_term_error(std::uint64_t n)
        : std::runtime_error("singular term at n=" + std::to_string(n)), n_(n) {}
    std::uint64_t n() const { return n_; }
private:
    std::uint64_t n_;
};

// An angle alpha in [0,1). Either an exact rational num/den in lowest terms,
// or a dyadic 128-bit fixed-point fraction F/2^128. Both support exact mod-1
// arithmetic for n*alpha, which is all the sum evaluators need.
class Angle {
public:
    static Angle rational(std::uint64_t num, std::uint64_t den);
    static Angle dyadic(u128 fraction);
    // "p/q" or a decimal like "0.318309" (decimals convert to dyadic)
    static Angle parse(const std::string& text);

    bool is_rational() const { return rational_; }
    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    u128 fraction() const { return frac_; }

    double value() const;
    bool is_zero() const { return rational_ ? num_ == 0 : frac_ == 0; }
    std::string to_string() const;

    // signed fractional part of n*alpha as a double (exact integer reduction,
    // one rounding at the end); in (-1/2, 1/2]
    double signed_frac_of_multiple(std::uint64_t n) const;

    // exact residue of n*num mod den (rational angles only)
    std::uint64_t residue(std::uint64_t n) const;

private:
    Angle() = default;
    bool rational_ = false;
    std::uint64_t num_ = 0, den_ = 1;  // rational form
    u128 frac_ = 0;                    // dyadic form
};

// <x> : signed distance to the nearest integer, in (-1/2, 1/2]; 1-periodic,
// the half-integer boundary maps to +1/2
double signed_frac(double x);
// ||x|| = |<x>|, in [0, 1/2]
double dist_nearest_int(double x);

// exact versions on rationals
BigRat signed_frac(const BigRat& x);
BigRat dist_nearest_int(const BigRat& x);

} // namespace cotsum

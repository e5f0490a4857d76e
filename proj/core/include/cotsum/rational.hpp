#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace cotsum {

// Exact arithmetic used by the oracle/verification paths. Hot loops never
// touch these; they work on machine words and convert at the end.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& r) { return r.convert_to<double>(); }

inline BigRat big_pow(const BigRat& base, unsigned e) {
    BigRat r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

} // namespace cotsum

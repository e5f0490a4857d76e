#pragma once

#include <cstdint>
#include <vector>

#include "cotsum/angle.hpp"

namespace cotsum {

// Continued fraction expansion alpha = [0; a_1, a_2, ...] with convergents
// p_k/q_k, p_0/q_0 = 0/1. For rational alpha the canonical form ends with a
// last partial quotient >= 2, which the Euclidean algorithm produces on its
// own for alpha in (0,1) in lowest terms.
struct ContinuedFraction {
    std::vector<std::uint64_t> a;   // a_1..a_K (1-indexed via a[k-1])
    std::vector<u128> p, q;         // p_0..p_K, q_0..q_K
    bool exhausted = false;         // rational alpha fully expanded

    std::size_t terms() const { return a.size(); }
    std::uint64_t quotient(std::size_t k) const { return a.at(k - 1); }  // a_k, k>=1
};

ContinuedFraction cf_expand(const Angle& alpha, std::size_t max_terms);

// convergent pairs (p_k, q_k), k = 0..K
std::vector<std::pair<u128, u128>> convergents(const ContinuedFraction& cf);

enum class UMethod { denominator_form, tail_head_form };

// u_k = 1/(q_{k-1} ||q_{k-1} alpha||), equal to the continued-fraction tail
// [a_k; a_{k+1}, ...] plus the reversed head [0; a_{k-1}, ..., a_1].
// Exact rational on rational alpha (tail_head_form requires the full finite
// expansion); on dyadic alpha the value is exact up to the final rounding.
BigRat u_value(const ContinuedFraction& cf, const Angle& alpha, std::size_t k,
               UMethod method);
double u_value_double(const ContinuedFraction& cf, const Angle& alpha, std::size_t k);

// the index K with q_K <= N < q_{K+1}
class bracket_error : public std::runtime_error {
public:
    bracket_error(std::string msg, std::size_t last) : std::runtime_error(std::move(msg)), last_index(last) {}
    std::size_t last_index;
};
std::size_t k_n_star(const ContinuedFraction& cf, std::uint64_t N);

// deterministic even surrogate: the even integer nearest to (12 log2/pi^2) log N
long k_n_even(std::uint64_t N);

// stationary law of a partial quotient under the Gauss measure
double gauss_pmf(std::uint64_t n);

} // namespace cotsum

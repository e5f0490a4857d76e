#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cotsum/angle.hpp"
#include "cotsum/cf.hpp"

namespace cotsum {

enum class Kernel {
    signed_reciprocal,    // 1/<x>
    unsigned_reciprocal,  // 1/||x||
    positive_part,        // (1/<x>) 1{<x> > 0}
    negative_part,        // (1/|<x>|) 1{<x> < 0}
    cot,                  // cot(pi x)
    abs_cot,              // |cot(pi x)|
    signed_power,         // sgn<x> / |<x>|^p
    unsigned_power,       // 1/||x||^p
};

Kernel kernel_from_string(const std::string& name);
std::string kernel_name(Kernel k);

// Optional bounded part g added to the kernel, with its declared integral
// over [0,1] and growth exponent p' (|g| << 1/||x||^p').
struct BoundedPart {
    std::function<double(double)> fn;  // of the signed fractional part
    double integral = 0.0;
    double growth_exponent = 0.0;
};

// Which sum to evaluate: sum_{n<=N} (kernel(<n alpha>) + g(n alpha)) / n^p.
// The kernel singularity and the weight share the exponent p; the four
// order-1 kernels and the cot kernels require p = 1.
struct SumKind {
    Kernel kernel = Kernel::signed_reciprocal;
    double p = 1.0;
    std::optional<BoundedPart> g;

    void validate() const;
};

// Plain O(N) evaluation; floating kernels accumulate in descending n.
double direct_sum(const Angle& alpha, std::uint64_t N, const SumKind& kind);

// Exact rational evaluation for the algebraic kernels (p must be integral).
BigRat direct_sum_exact(const Angle& alpha, std::uint64_t N, Kernel kernel, unsigned p);

enum class SingularitySide { positive, negative };

struct SplitSum {
    double near = 0, far = 0;
};
struct SplitSumExact {
    BigRat near, far;
};

// One-sided sum split at the Legendre threshold: near means
// 0 < <n alpha> < 1/(2n) (resp. the mirrored negative strip); the boundary
// <n alpha> = 1/(2n) counts as far. near + far recomposes the one-sided sum.
SplitSum split_sum(const Angle& alpha, std::uint64_t N, SingularitySide side, double p);
SplitSumExact split_sum_exact(const Angle& alpha, std::uint64_t N, SingularitySide side,
                              unsigned p);

// R_p(x) = sum_{1<=j<sqrt(x/2)} x^p/j^(2p); piecewise r_{m,p} x^p on
// (2m^2, 2(m+1)^2]
double r_func(double x, double p);
BigRat r_func_exact(const BigRat& x, unsigned p);
// p = 1 fast path, r_m x with r_m = zeta(2) - trigamma(m+1); O(1) for any x
double r_func1(double x);

// Contribution of the block q_k <= n < q_{k+1} to the near sum on one side:
// R_p(u_{k+1}) when the block parity matches the side (even k feeds the
// positive side), zero otherwise.
BigRat block_sum_via_r(const ContinuedFraction& cf, const Angle& alpha, std::size_t k,
                       SingularitySide side, unsigned p);

struct BlockReport {
    struct Mismatch {
        std::size_t block = 0;
        SingularitySide side = SingularitySide::positive;
        BigRat enumerated, via_r;
    };
    std::size_t blocks_checked = 0;
    std::vector<Mismatch> mismatches;
    bool all_exact() const { return mismatches.empty(); }
};

// Exact per-block check of the near-sum identity on every complete block of
// a rational angle, both sides, in big-rational arithmetic.
BlockReport verify_block_identity(const Angle& alpha, unsigned p);

struct ZetaAkPowerSum {
    double value = 0;           // zeta(2p) * sum of a_k^p over the parity class
    double residual_bound = 0;  // sum_{k<=K} a_k^(p-1)
};

enum class IndexParity { odd, even };

ZetaAkPowerSum zeta_ak_power_sum(const ContinuedFraction& cf, std::size_t K, double p,
                                 IndexParity parity);

} // namespace cotsum

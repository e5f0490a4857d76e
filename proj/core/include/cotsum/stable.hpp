#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "cotsum/rng.hpp"

namespace cotsum {

// Stab(alpha0, beta0): the stable law with characteristic function
//   phi(t) = exp(-|t|^a (1 - i b sgn(t) w)),
//   w = tan(a pi/2) for a != 1,  w = -(2/pi) log|t| for a = 1.
// Stab(1,0) is the standard Cauchy law; Stab(1/2,1) is the unit Levy law.
struct StableParams {
    double alpha0 = 1.0;
    double beta0 = 0.0;
    void validate() const;
};

std::complex<double> stable_char_fn(const StableParams& params, double t);

class StableDist {
public:
    explicit StableDist(StableParams params);

    const StableParams& params() const { return params_; }
    std::complex<double> char_fn(double t) const { return stable_char_fn(params_, t); }

    // CDF by inversion of the characteristic function; absolute error < 1e-6
    // (typically ~1e-9 in the bulk, asymptotic series in the far tails)
    double cdf(double x) const;
    // inverse CDF: cdf(quantile(q)) = q within 1e-6
    double quantile(double q) const;
    double sample(Rng& rng) const;

    // monotone interpolation table over the bulk for bulk-heavy workloads
    // (KS statistics); falls back to the tail series outside the table
    std::function<double(double)> cdf_fast() const;

private:
    double cdf_integral(double x) const;
    double tail_series(double x) const;   // P(X > x) for x >= tail_switch_
    StableParams params_;
    double tail_switch_ = 0;
    double trunc_t_ = 0;
    mutable std::shared_ptr<const std::vector<std::pair<double, double>>> table_;
};

// sup_x |F_emp(x) - F(x)| over the jump points of the empirical CDF;
// samples must be sorted ascending
double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf_fn);

} // namespace cotsum

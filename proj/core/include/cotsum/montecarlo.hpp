#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cotsum/angle.hpp"
#include "cotsum/rng.hpp"
#include "cotsum/stable.hpp"

namespace cotsum {

// ---------------------------------------------------------------------------
// sampling densities for alpha
// ---------------------------------------------------------------------------

struct DensitySpec {
    enum class Kind { uniform, linear_lipschitz, gauss_measure, table };
    Kind kind = Kind::uniform;
    // linear_lipschitz: density 1 + L(x - 1/2); Lipschitz constant L,
    // lower bound A = 1 - |L|/2 > 0
    double L = 0.0;
    // table: piecewise-linear density as (x, h(x)) knots, x ascending 0..1
    std::vector<std::pair<double, double>> knots;

    void validate() const;
    double lower_bound() const;            // the A of the Lipschitz condition
    static DensitySpec uniform_();
    static DensitySpec gauss_();
    static DensitySpec linear(double L);
    std::string name() const;
};

// draw a 128-bit dyadic alpha ~ density (inverse CDF on the dyadic grid;
// the 75 bits below the inverse-CDF resolution are filled uniformly)
Angle sample_alpha(const DensitySpec& density, Rng& rng);

// ---------------------------------------------------------------------------
// statistics
// ---------------------------------------------------------------------------

enum class Family {
    thm1_signed_cot,     // (1/logN) sum cot(pi n a)/n                   -> Cauchy
    thm1_abs_cot,        // (1/logN)(sum |cot|/n - E_N)                  -> Stab(1,1)
    main_pair,           // one-sided reciprocal pair / (pi/2 logN)      -> Stab(1,1)^2
    cor_signed,          // (1/pi logN)(sum 1/<na>/n - logN int g)       -> Cauchy
    cor_unsigned,        // (1/pi logN)(sum 1/||na||/n - E_N)            -> Stab(1,1)
    p_pair,              // one-sided power pair                         -> Stab(1/p,1)^2
    p_cor_signed,        // signed power sum / (2^p sigma log^p N)       -> Stab(1/p,0)
    p_cor_unsigned,      // unsigned power sum                           -> Stab(1/p,1)
    sum_ak,              // (sum a_k - A_K)/((pi/2log2)K)                -> Stab(1,1)
    sum_ak_power,        // odd/even power sums of a_k                   -> Stab(1/p,1)^2
    sum_R_ak,            // odd/even sums of R(a_k)                      -> Stab(1,1)^2
    far_concentration,   // positive far sum / ((logN)^2/2)              -> 1
    bv_average,          // (1/logN) sum g(na)/n                         -> int g
    tail_ak,             // raw sum a_k (tail studies)
    ru_mean,             // R(u_k) - R(a_k) at fixed k                   -> kappa in mean
};

Family family_from_string(const std::string& name);
std::string family_name(Family f);
const std::vector<std::string>& family_names();

// optional 1-periodic bounded part, evaluated at the fractional part in [0,1)
struct GSpec {
    enum class Kind { none, frac_part, centered_frac, indicator_low_half };
    Kind kind = Kind::none;
    double integral() const;
    double growth_exponent() const { return 0.0; }   // all built-ins are bounded
    double eval(double frac01) const;
    static GSpec from_string(const std::string& name);
    std::string name() const;
};

struct StatisticKind {
    Family family = Family::thm1_signed_cot;
    double p = 2.0;          // power families only
    GSpec g;                 // optional bounded part
    std::size_t ru_k = 20;   // the fixed index of ru_mean

    void validate() const;
    bool is_pair() const;
    bool uses_digit_chain() const;    // driven by partial quotients, not an orbit
    bool wants_loglog() const;        // families whose centering uses log log N
    std::string label() const;
};

struct StatValue {
    double x = 0;
    double y = 0;
    bool has_y = false;
};

// the normalized statistic of one alpha at one N (or K for digit families)
StatValue statistic_value(const Angle& alpha, std::uint64_t n_or_k,
                          const StatisticKind& kind);

// the limit law of a 1-D family, when it has one
std::optional<StableParams> family_limit(const StatisticKind& kind);

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    StatisticKind statistic;
    std::vector<std::uint64_t> n_ladder;
    std::uint64_t samples = 0;           // M per ladder point
    DensitySpec density;
    std::uint64_t seed = 0;
    unsigned worker_count = 0;           // 0 = all hardware threads

    void validate() const;
};

struct ResultRow {
    std::string statistic;
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    std::uint64_t seed = 0;
    double ks = 0, q01 = 0, q25 = 0, q50 = 0, q75 = 0, q99 = 0, mean = 0;
    double elapsed_s = 0;
};

// per-sample values at one ladder point, in sample-index order; identical for
// any worker_count
struct RawSamples {
    std::vector<double> x, y;
    bool has_y = false;
};
RawSamples run_samples(const ExperimentConfig& config, std::uint64_t N);

// Full run. Pair families emit two rows per ladder point, named
// "<family>:sum" and "<family>:diff" (their two 1-D limit-law reductions);
// on_row, when given, is called as each row completes.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const std::function<void(const ResultRow&)>& on_row = {});

struct TailRow {
    double t = 0;
    double p_emp = 0;     // empirical P(sum a_k^p >= t K^p)
    double envelope = 0;  // fitted C / t^(1/p)
};
std::vector<TailRow> empirical_tail(const ExperimentConfig& config,
                                    const std::vector<double>& thresholds);

struct RuMeanResult {
    double mean = 0;
    double half_width = 0;   // one standard error
};
RuMeanResult ru_mean_check(std::size_t k, std::uint64_t M, std::uint64_t seed);

// stationary Gauss-measure digit process (Broden-Borel-Levy chain); uniform
// start gives the digit law of a Lebesgue-random alpha
class DigitChain {
public:
    static DigitChain gauss_start(Rng& rng);
    static DigitChain uniform_start();
    std::uint64_t next(Rng& rng);
    double past() const { return y_; }   // [0; a_k, a_{k-1}, ...] extended past
private:
    double y_ = 0;
};

} // namespace cotsum

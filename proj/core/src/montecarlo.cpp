#include "cotsum/montecarlo.hpp"
#include "cotsum/cf.hpp"
#include "cotsum/constants.hpp"
#include "cotsum/sums.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace cotsum {

namespace {
constexpr double PI = M_PI;
constexpr double LOG2 = M_LN2;
}

// ---------------------------------------------------------------------------
// densities
// ---------------------------------------------------------------------------

void DensitySpec::validate() const {
    switch (kind) {
        case Kind::uniform:
        case Kind::gauss_measure:
            break;
        case Kind::linear_lipschitz:
            if (!(std::abs(L) < 2.0))
                throw std::invalid_argument("density: linear_lipschitz needs |L| < 2 (A > 0)");
            break;
        case Kind::table: {
            if (knots.size() < 2) throw std::invalid_argument("density: table needs >= 2 knots");
            if (knots.front().first != 0.0 || knots.back().first != 1.0)
                throw std::invalid_argument("density: table knots must span [0,1]");
            double mass = 0;
            for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
                if (!(knots[i + 1].first > knots[i].first))
                    throw std::invalid_argument("density: table knots must be ascending");
                if (knots[i].second < 0 || knots[i + 1].second < 0)
                    throw std::invalid_argument("density: table density must be nonnegative");
                mass += 0.5 * (knots[i].second + knots[i + 1].second)
                      * (knots[i + 1].first - knots[i].first);
            }
            if (std::abs(mass - 1.0) > 1e-9)
                throw std::invalid_argument("density: table density must integrate to 1");
            break;
        }
    }
}

double DensitySpec::lower_bound() const {
    switch (kind) {
        case Kind::uniform: return 1.0;
        case Kind::gauss_measure: return 1.0 / (2.0 * LOG2);
        case Kind::linear_lipschitz: return 1.0 - std::abs(L) / 2.0;
        case Kind::table: {
            double a = knots.front().second;
            for (auto& kv : knots) a = std::min(a, kv.second);
            return a;
        }
    }
    return 0.0;
}

DensitySpec DensitySpec::uniform_() { return DensitySpec{}; }
DensitySpec DensitySpec::gauss_() {
    DensitySpec d;
    d.kind = Kind::gauss_measure;
    return d;
}
DensitySpec DensitySpec::linear(double L) {
    DensitySpec d;
    d.kind = Kind::linear_lipschitz;
    d.L = L;
    return d;
}

std::string DensitySpec::name() const {
    switch (kind) {
        case Kind::uniform: return "uniform";
        case Kind::gauss_measure: return "gauss_measure";
        case Kind::linear_lipschitz: return "linear_lipschitz";
        case Kind::table: return "table";
    }
    return "?";
}

namespace {

// place a unit-interval point on the dyadic grid: the top 53 bits come from
// the inverse CDF, the rest are uniform within the 2^-53 cell
u128 dyadic_from_unit(double x, Rng& rng) {
    if (x < 0) x = 0;
    if (x >= 1.0) x = std::nextafter(1.0, 0.0);
    u128 cell = u128(std::ldexp(x, 53));          // < 2^53
    u128 low = rng.next_u128() & ((u128(1) << 75) - 1);
    return (cell << 75) | low;
}

} // namespace

Angle sample_alpha(const DensitySpec& density, Rng& rng) {
    density.validate();
    switch (density.kind) {
        case DensitySpec::Kind::uniform:
            return Angle::dyadic(rng.next_u128());
        case DensitySpec::Kind::gauss_measure: {
            double u = rng.next_open01();
            return Angle::dyadic(dyadic_from_unit(std::exp2(u) - 1.0, rng));
        }
        case DensitySpec::Kind::linear_lipschitz: {
            double u = rng.next_open01();
            double L = density.L;
            if (std::abs(L) < 1e-12) return Angle::dyadic(dyadic_from_unit(u, rng));
            double b = 1.0 - L / 2.0;
            double x = (-b + std::sqrt(b * b + 2.0 * L * u)) / L;
            return Angle::dyadic(dyadic_from_unit(x, rng));
        }
        case DensitySpec::Kind::table: {
            double u = rng.next_open01();
            const auto& kn = density.knots;
            double acc = 0;
            for (std::size_t i = 0; i + 1 < kn.size(); ++i) {
                double w = kn[i + 1].first - kn[i].first;
                double seg = 0.5 * (kn[i].second + kn[i + 1].second) * w;
                if (u > acc + seg && i + 2 < kn.size()) {
                    acc += seg;
                    continue;
                }
                double target = u - acc;
                double h0 = kn[i].second;
                double slope = (kn[i + 1].second - kn[i].second) / w;
                // solve h0 s + slope s^2/2 = target on s in [0,w]
                double s;
                if (std::abs(slope) < 1e-12) {
                    s = target / std::max(h0, 1e-300);
                } else {
                    s = (-h0 + std::sqrt(h0 * h0 + 2.0 * slope * target)) / slope;
                }
                s = std::min(std::max(s, 0.0), w);
                return Angle::dyadic(dyadic_from_unit(kn[i].first + s, rng));
            }
            return Angle::dyadic(dyadic_from_unit(0.5, rng));
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// families / kinds
// ---------------------------------------------------------------------------

namespace {
const std::vector<std::pair<std::string, Family>>& family_table() {
    static const std::vector<std::pair<std::string, Family>> t = {
        {"thm1_signed_cot", Family::thm1_signed_cot},
        {"thm1_abs_cot", Family::thm1_abs_cot},
        {"main_pair", Family::main_pair},
        {"cor_signed", Family::cor_signed},
        {"cor_unsigned", Family::cor_unsigned},
        {"p_pair", Family::p_pair},
        {"p_cor_signed", Family::p_cor_signed},
        {"p_cor_unsigned", Family::p_cor_unsigned},
        {"sum_ak", Family::sum_ak},
        {"sum_ak_power", Family::sum_ak_power},
        {"sum_R_ak", Family::sum_R_ak},
        {"far_concentration", Family::far_concentration},
        {"bv_average", Family::bv_average},
        {"tail_ak", Family::tail_ak},
        {"ru_mean", Family::ru_mean},
    };
    return t;
}
} // namespace

Family family_from_string(const std::string& name) {
    for (auto& [n, f] : family_table())
        if (n == name) return f;
    throw std::invalid_argument("unknown statistic family: " + name);
}

std::string family_name(Family f) {
    for (auto& [n, g] : family_table())
        if (g == f) return n;
    return "?";
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto& [n, f] : family_table()) v.push_back(n);
        return v;
    }();
    return names;
}

double GSpec::integral() const {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::frac_part: return 0.5;
        case Kind::centered_frac: return 0.0;
        case Kind::indicator_low_half: return 0.5;
    }
    return 0.0;
}

double GSpec::eval(double frac01) const {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::frac_part: return frac01;
        case Kind::centered_frac: return frac01 - 0.5;
        case Kind::indicator_low_half: return frac01 < 0.5 ? 1.0 : 0.0;
    }
    return 0.0;
}

GSpec GSpec::from_string(const std::string& name) {
    GSpec g;
    if (name == "none" || name.empty()) g.kind = Kind::none;
    else if (name == "frac_part") g.kind = Kind::frac_part;
    else if (name == "centered_frac") g.kind = Kind::centered_frac;
    else if (name == "indicator_low_half") g.kind = Kind::indicator_low_half;
    else throw std::invalid_argument("unknown g spec: " + name);
    return g;
}

std::string GSpec::name() const {
    switch (kind) {
        case Kind::none: return "none";
        case Kind::frac_part: return "frac_part";
        case Kind::centered_frac: return "centered_frac";
        case Kind::indicator_low_half: return "indicator_low_half";
    }
    return "?";
}

bool StatisticKind::is_pair() const {
    return family == Family::main_pair || family == Family::p_pair
        || family == Family::sum_ak_power || family == Family::sum_R_ak;
}

bool StatisticKind::uses_digit_chain() const {
    return family == Family::sum_ak || family == Family::sum_ak_power
        || family == Family::sum_R_ak || family == Family::tail_ak;
}

bool StatisticKind::wants_loglog() const {
    return family == Family::thm1_abs_cot || family == Family::main_pair
        || family == Family::cor_unsigned;
}

void StatisticKind::validate() const {
    bool powerish = family == Family::p_pair || family == Family::p_cor_signed
                 || family == Family::p_cor_unsigned || family == Family::sum_ak_power;
    if (powerish && !(p > 1.0))
        throw std::invalid_argument("statistic: power families need p > 1");
    if (family == Family::bv_average && g.kind == GSpec::Kind::none)
        throw std::invalid_argument("statistic: bv_average needs a g spec");
    if (family == Family::ru_mean && ru_k < 1)
        throw std::invalid_argument("statistic: ru_mean needs k >= 1");
}

std::string StatisticKind::label() const { return family_name(family); }

std::optional<StableParams> family_limit(const StatisticKind& kind) {
    switch (kind.family) {
        case Family::thm1_signed_cot:
        case Family::cor_signed:
            return StableParams{1.0, 0.0};
        case Family::thm1_abs_cot:
        case Family::cor_unsigned:
        case Family::sum_ak:
            return StableParams{1.0, 1.0};
        case Family::p_cor_signed:
            return StableParams{1.0 / kind.p, 0.0};
        case Family::p_cor_unsigned:
            return StableParams{1.0 / kind.p, 1.0};
        default:
            return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// orbit traversal: exact n*alpha for n = 1..N
// ---------------------------------------------------------------------------

namespace {

class OrbitCursor {
public:
    OrbitCursor(const Angle& alpha, std::uint64_t)
        : rational_(alpha.is_rational()), den_(alpha.den()), num_(alpha.num()),
          step_(alpha.fraction()) {}

    // advance to multiple n (must be called with n = 1,2,3,...)
    void advance() {
        ++n_;
        if (rational_) {
            r_ += num_;
            if (r_ >= den_) r_ -= den_;
        } else {
            f_ += step_;
        }
    }

    std::uint64_t n() const { return n_; }

    bool at_integer() const { return rational_ ? r_ == 0 : f_ == 0; }

    // signed fractional part in (-1/2, 1/2]
    double signed_frac() const {
        if (rational_) {
            if (2 * r_ <= den_) return double(r_) / double(den_);
            return -double(den_ - r_) / double(den_);
        }
        return frac_to_signed_double(f_);
    }

    // fractional part in [0,1)
    double frac01() const {
        if (rational_) return double(r_) / double(den_);
        return frac_to_double(f_);
    }

    // ||n alpha|| < 1/(2n), decided exactly
    bool is_near() const {
        if (rational_) {
            std::uint64_t dist = 2 * r_ <= den_ ? r_ : den_ - r_;
            return (u128(2) * n_) * dist < u128(den_);
        }
        u128 dist = f_ <= U128_HALF ? f_ : u128(0) - f_;
        return !mul_frac_ge_half(dist, n_);
    }

private:
    bool rational_;
    std::uint64_t den_ = 1, num_ = 0, r_ = 0;
    u128 step_ = 0, f_ = 0;
    std::uint64_t n_ = 0;
};

double cot_pi(double s) { return 1.0 / std::tan(PI * s); }

struct OrbitSums {
    double signed_cot = 0, abs_cot = 0;
    double pos_recip = 0, neg_recip = 0;
    double pos_power = 0, neg_power = 0;
    double g_weighted = 0;        // sum g(n a)/n^p
    double far_pos = 0;
    bool want_cot = false, want_recip = false, want_power = false,
         want_far = false, want_g = false;
    double p = 1.0;
};

void orbit_accumulate(const Angle& alpha, std::uint64_t N, OrbitSums& s, const GSpec& g) {
    OrbitCursor cur(alpha, N);
    const double p = s.p;
    for (std::uint64_t n = 1; n <= N; ++n) {
        cur.advance();
        if (cur.at_integer()) throw singular_term_error(n);
        double sf = cur.signed_frac();
        double invn = 1.0 / double(n);
        if (s.want_cot) {
            double c = cot_pi(sf) * invn;
            s.signed_cot += c;
            s.abs_cot += std::abs(c);
        }
        if (s.want_recip) {
            if (sf > 0) s.pos_recip += 1.0 / sf * invn;
            else s.neg_recip += -1.0 / sf * invn;
        }
        if (s.want_power) {
            double wp = std::pow(double(n), -p);
            double kp = std::pow(std::abs(sf), -p) * wp;
            if (sf > 0) s.pos_power += kp;
            else s.neg_power += kp;
        }
        if (s.want_far && sf > 0 && !cur.is_near()) s.far_pos += 1.0 / sf * invn;
        if (s.want_g) {
            double w = (p == 1.0) ? invn : std::pow(double(n), -p);
            s.g_weighted += g.eval(cur.frac01()) * w;
        }
    }
}

// digit statistics straight off a continued fraction expansion
struct DigitStats {
    double sum_a = 0;
    double odd_pow = 0, even_pow = 0;   // sum a_k^p by parity
    double odd_r = 0, even_r = 0;       // sum R(a_k) by parity
};

template <class NextDigit>
DigitStats digit_stats(std::uint64_t K, double p, bool want_pow, bool want_r, NextDigit&& next) {
    DigitStats d;
    for (std::uint64_t k = 1; k <= K; ++k) {
        double a = double(next());
        d.sum_a += a;
        if (want_pow) {
            double ap = std::pow(a, p);
            ((k % 2) ? d.odd_pow : d.even_pow) += ap;
        }
        if (want_r) {
            double ra = r_func1(a);
            ((k % 2) ? d.odd_r : d.even_r) += ra;
        }
    }
    return d;
}

StatValue reduce_digit_stats(const DigitStats& d, std::uint64_t K, const StatisticKind& kind) {
    StatValue out;
    double Kd = double(K);
    switch (kind.family) {
        case Family::sum_ak:
            out.x = (d.sum_a - constants::sum_ak_centering(Kd)) / (PI / (2.0 * LOG2) * Kd);
            break;
        case Family::sum_ak_power: {
            double A = constants::sum_ak_power_centering(Kd, kind.p);
            double scale = constants::sigma_ak_power(kind.p) * std::pow(Kd, kind.p);
            out.x = (d.odd_pow + A) / scale;
            out.y = (d.even_pow + A) / scale;
            out.has_y = true;
            break;
        }
        case Family::sum_R_ak: {
            double A = constants::sum_r_ak_centering(Kd);
            double scale = PI * PI * PI / (24.0 * LOG2) * Kd;
            out.x = (d.odd_r - A) / scale;
            out.y = (d.even_r - A) / scale;
            out.has_y = true;
            break;
        }
        case Family::tail_ak:
            out.x = d.sum_a;
            break;
        default:
            throw std::logic_error("reduce_digit_stats: not a digit family");
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// DigitChain
// ---------------------------------------------------------------------------

DigitChain DigitChain::gauss_start(Rng& rng) {
    DigitChain c;
    c.y_ = std::exp2(rng.next_open01()) - 1.0;
    return c;
}

DigitChain DigitChain::uniform_start() { return DigitChain{}; }

std::uint64_t DigitChain::next(Rng& rng) {
    double u = rng.next_open01();
    double v = (1.0 + y_) * u / (1.0 - u);
    std::uint64_t a = v < 1.0 ? 1 : std::uint64_t(std::ceil(std::min(v, 1.8e18)));
    y_ = 1.0 / (double(a) + y_);
    return a;
}

// ---------------------------------------------------------------------------
// statistic_value
// ---------------------------------------------------------------------------

StatValue statistic_value(const Angle& alpha, std::uint64_t n_or_k,
                          const StatisticKind& kind) {
    kind.validate();
    const std::uint64_t N = n_or_k;
    StatValue out;

    if (kind.uses_digit_chain()) {
        ContinuedFraction cf = cf_expand(alpha, N);
        if (cf.terms() < N)
            throw std::invalid_argument(
                "statistic_value: expansion of alpha has fewer than K partial quotients");
        std::size_t idx = 0;
        auto next = [&] { return cf.a[idx++]; };
        bool want_pow = kind.family == Family::sum_ak_power;
        bool want_r = kind.family == Family::sum_R_ak;
        return reduce_digit_stats(digit_stats(N, kind.p, want_pow, want_r, next), N, kind);
    }

    if (kind.family == Family::ru_mean) {
        ContinuedFraction cf = cf_expand(alpha, kind.ru_k);
        if (cf.terms() < kind.ru_k)
            throw std::invalid_argument("statistic_value: expansion shorter than ru_k");
        double u = u_value_double(cf, alpha, kind.ru_k);
        out.x = r_func1(u) - r_func1(double(cf.quotient(kind.ru_k)));
        return out;
    }

    if (N < 2)
        throw std::invalid_argument("statistic_value: orbit families need N >= 2");
    const double lnN = std::log(double(N));
    OrbitSums s;
    s.p = kind.p;
    switch (kind.family) {
        case Family::thm1_signed_cot:
        case Family::thm1_abs_cot:
            s.want_cot = true;
            break;
        case Family::main_pair:
        case Family::cor_signed:
        case Family::cor_unsigned:
            s.want_recip = true;
            s.want_g = kind.g.kind != GSpec::Kind::none;
            s.p = 1.0;
            break;
        case Family::p_pair:
        case Family::p_cor_signed:
        case Family::p_cor_unsigned:
            s.want_power = true;
            s.want_g = kind.g.kind != GSpec::Kind::none;
            break;
        case Family::far_concentration:
            s.want_far = true;
            s.p = 1.0;
            break;
        case Family::bv_average:
            s.want_g = true;
            s.p = 1.0;
            break;
        default:
            break;
    }
    orbit_accumulate(alpha, N, s, kind.g);

    switch (kind.family) {
        case Family::thm1_signed_cot:
            out.x = s.signed_cot / lnN;
            break;
        case Family::thm1_abs_cot:
            out.x = (s.abs_cot - constants::thm1_e_n(double(N))) / lnN;
            break;
        case Family::main_pair: {
            double E = constants::main_e_jn(double(N), kind.g.integral());
            double scale = PI / 2.0 * lnN;
            out.x = (s.pos_recip + s.g_weighted - E) / scale;
            out.y = (s.neg_recip + s.g_weighted - E) / scale;
            out.has_y = true;
            break;
        }
        case Family::cor_signed:
            out.x = (s.pos_recip - s.neg_recip + s.g_weighted - lnN * kind.g.integral())
                  / (PI * lnN);
            break;
        case Family::cor_unsigned:
            out.x = (s.pos_recip + s.neg_recip + s.g_weighted
                     - constants::cor_e_n(double(N), kind.g.integral()))
                  / (PI * lnN);
            break;
        case Family::p_pair: {
            double c = constants::p_sum_centering(double(N), kind.p);
            double scale = constants::sigma_p(kind.p) * std::pow(lnN, kind.p);
            out.x = (s.pos_power + s.g_weighted + c) / scale;
            out.y = (s.neg_power + s.g_weighted + c) / scale;
            out.has_y = true;
            break;
        }
        case Family::p_cor_signed: {
            double scale = std::pow(2.0, kind.p) * constants::sigma_p(kind.p)
                         * std::pow(lnN, kind.p);
            out.x = (s.pos_power - s.neg_power + s.g_weighted) / scale;
            break;
        }
        case Family::p_cor_unsigned: {
            double c = constants::p_sum_centering(double(N), kind.p);
            double scale = std::pow(2.0, kind.p) * constants::sigma_p(kind.p)
                         * std::pow(lnN, kind.p);
            out.x = (s.pos_power + s.neg_power + s.g_weighted + 2.0 * c) / scale;
            break;
        }
        case Family::far_concentration:
            out.x = s.far_pos / (0.5 * lnN * lnN);
            break;
        case Family::bv_average:
            out.x = s.g_weighted / lnN;
            break;
        default:
            throw std::logic_error("statistic_value: unhandled family");
    }
    return out;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    statistic.validate();
    density.validate();
    if (n_ladder.empty()) throw std::invalid_argument("config: N_ladder must be nonempty");
    if (samples < 100) throw std::invalid_argument("config: M must be >= 100");
    bool orbitish = !statistic.uses_digit_chain() && statistic.family != Family::ru_mean;
    for (auto N : n_ladder) {
        if (N < 1) throw std::invalid_argument("config: ladder entries must be >= 1");
        if (orbitish && N < 2)
            throw std::invalid_argument("config: orbit families need N >= 2");
        if (statistic.wants_loglog() && N < 3)
            throw std::invalid_argument("config: this family needs N >= 3 (log log N)");
    }
    if (statistic.uses_digit_chain()
        && density.kind != DensitySpec::Kind::uniform
        && density.kind != DensitySpec::Kind::gauss_measure)
        throw std::invalid_argument(
            "config: partial-quotient families support uniform and gauss_measure densities");
}

RawSamples run_samples(const ExperimentConfig& config, std::uint64_t N) {
    config.validate();
    const std::uint64_t M = config.samples;
    const StatisticKind& kind = config.statistic;
    RawSamples out;
    out.x.assign(M, 0.0);
    bool pair = kind.is_pair();
    if (pair) out.y.assign(M, 0.0);
    out.has_y = pair;

    unsigned workers = config.worker_count ? config.worker_count
                                           : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::uint64_t> counter{0};
    std::exception_ptr first_error = nullptr;
    std::mutex error_mu;

    auto worker = [&] {
        for (;;) {
            std::uint64_t i = counter.fetch_add(1);
            if (i >= M) return;
            try {
                Rng rng = Rng::substream(config.seed, N, i);
                StatValue v;
                if (kind.uses_digit_chain()) {
                    DigitChain chain = config.density.kind == DensitySpec::Kind::gauss_measure
                                         ? DigitChain::gauss_start(rng)
                                         : DigitChain::uniform_start();
                    bool want_pow = kind.family == Family::sum_ak_power;
                    bool want_r = kind.family == Family::sum_R_ak;
                    auto next = [&] { return chain.next(rng); };
                    v = reduce_digit_stats(digit_stats(N, kind.p, want_pow, want_r, next), N, kind);
                } else if (kind.family == Family::ru_mean) {
                    Angle a = sample_alpha(config.density, rng);
                    v = statistic_value(a, N, kind);
                } else {
                    Angle a = sample_alpha(config.density, rng);
                    v = statistic_value(a, N, kind);
                }
                out.x[i] = v.x;
                if (pair) out.y[i] = v.y;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                counter.store(M);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

namespace {

double quantile_type7(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return std::nan("");
    double h = q * double(sorted.size() - 1);
    std::size_t lo = std::size_t(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double w = h - double(lo);
    return sorted[lo] + w * (sorted[lo + 1] - sorted[lo]);
}

ResultRow make_row(std::string name, std::uint64_t N, std::uint64_t seed,
                   const std::vector<double>& values,
                   const std::optional<StableParams>& law, double elapsed,
                   std::map<double, std::function<double(double)>>& cdf_cache,
                   double cache_key) {
    ResultRow row;
    row.statistic = std::move(name);
    row.N = N;
    row.M = values.size();
    row.seed = seed;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    row.q01 = quantile_type7(sorted, 0.01);
    row.q25 = quantile_type7(sorted, 0.25);
    row.q50 = quantile_type7(sorted, 0.50);
    row.q75 = quantile_type7(sorted, 0.75);
    row.q99 = quantile_type7(sorted, 0.99);
    double mean = 0;
    for (double v : values) mean += v;
    row.mean = mean / double(values.size());
    if (law) {
        auto it = cdf_cache.find(cache_key);
        if (it == cdf_cache.end()) {
            StableDist dist(*law);
            it = cdf_cache.emplace(cache_key, dist.cdf_fast()).first;
        }
        row.ks = ks_distance(sorted, it->second);
    } else {
        row.ks = std::nan("");
    }
    row.elapsed_s = elapsed;
    return row;
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      const std::function<void(const ResultRow&)>& on_row) {
    config.validate();
    const StatisticKind& kind = config.statistic;
    std::vector<ResultRow> rows;
    std::map<double, std::function<double(double)>> cdf_cache;

    for (std::uint64_t N : config.n_ladder) {
        auto t0 = std::chrono::steady_clock::now();
        RawSamples raw = run_samples(config, N);
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        auto emit = [&](ResultRow row) {
            if (on_row) on_row(row);
            rows.push_back(std::move(row));
        };

        if (!kind.is_pair()) {
            emit(make_row(kind.label(), N, config.seed, raw.x, family_limit(kind), elapsed,
                          cdf_cache, 0.0));
            continue;
        }
        // the two 1-D reductions of the pair that carry limit laws
        std::vector<double> sum(raw.x.size()), diff(raw.x.size());
        double shift = 0, denom = 2.0;
        StableParams sum_law{1.0, 1.0}, diff_law{1.0, 0.0};
        if (kind.family == Family::p_pair || kind.family == Family::sum_ak_power) {
            denom = std::pow(2.0, kind.p);
            sum_law = {1.0 / kind.p, 1.0};
            diff_law = {1.0 / kind.p, 0.0};
        } else {
            shift = 2.0 * LOG2 / PI;   // (X+Y)/2 - 2log2/pi ~ Stab(1,1)
        }
        for (std::size_t i = 0; i < raw.x.size(); ++i) {
            sum[i] = (raw.x[i] + raw.y[i]) / denom - shift;
            diff[i] = (raw.x[i] - raw.y[i]) / denom;
        }
        emit(make_row(kind.label() + ":sum", N, config.seed, sum, sum_law, elapsed,
                      cdf_cache, 1.0));
        emit(make_row(kind.label() + ":diff", N, config.seed, diff, diff_law, elapsed,
                      cdf_cache, 2.0));
    }
    return rows;
}

std::vector<TailRow> empirical_tail(const ExperimentConfig& config,
                                    const std::vector<double>& thresholds) {
    ExperimentConfig cfg = config;
    cfg.statistic.family = Family::tail_ak;
    cfg.validate();
    if (cfg.n_ladder.size() != 1)
        throw std::invalid_argument("empirical_tail: need exactly one K in the ladder");
    const std::uint64_t K = cfg.n_ladder[0];
    const double p = config.statistic.family == Family::sum_ak_power ? config.statistic.p : 1.0;

    // raw sums per sample (a_k^p when p > 1)
    const std::uint64_t M = cfg.samples;
    std::vector<double> sums(M);
    unsigned workers = cfg.worker_count ? cfg.worker_count
                                        : std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::uint64_t> counter{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = counter.fetch_add(1);
            if (i >= M) return;
            Rng rng = Rng::substream(cfg.seed, K, i);
            DigitChain chain = cfg.density.kind == DensitySpec::Kind::gauss_measure
                                 ? DigitChain::gauss_start(rng)
                                 : DigitChain::uniform_start();
            double s = 0;
            for (std::uint64_t k = 0; k < K; ++k) {
                double a = double(chain.next(rng));
                s += (p == 1.0) ? a : std::pow(a, p);
            }
            sums[i] = s;
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<TailRow> out;
    double Kp = std::pow(double(K), p);
    double fit_c = 0;
    for (double t : thresholds) {
        std::uint64_t hits = 0;
        for (double s : sums)
            if (s >= t * Kp) ++hits;
        TailRow row;
        row.t = t;
        row.p_emp = double(hits) / double(M);
        fit_c = std::max(fit_c, std::pow(t, 1.0 / p) * row.p_emp);
        out.push_back(row);
    }
    for (auto& row : out) row.envelope = fit_c * std::pow(row.t, -1.0 / p);
    return out;
}

RuMeanResult ru_mean_check(std::size_t k, std::uint64_t M, std::uint64_t seed) {
    if (k < 5) throw std::invalid_argument("ru_mean_check: k must be >= 5");
    StatisticKind kind;
    kind.family = Family::ru_mean;
    kind.ru_k = k;
    double sum = 0, sumsq = 0;
    DensitySpec gauss = DensitySpec::gauss_();
    for (std::uint64_t i = 0; i < M; ++i) {
        Rng rng = Rng::substream(seed, k, i);
        Angle a = sample_alpha(gauss, rng);
        double v = statistic_value(a, k, kind).x;
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / double(M);
    double var = std::max(0.0, sumsq / double(M) - mean * mean);
    return {mean, std::sqrt(var / double(M))};
}

} // namespace cotsum

#include "cotsum/sums.hpp"
#include "cotsum/constants.hpp"

#include <cmath>
#include <map>

namespace cotsum {

Kernel kernel_from_string(const std::string& name) {
    static const std::map<std::string, Kernel> table = {
        {"signed_reciprocal", Kernel::signed_reciprocal},
        {"unsigned_reciprocal", Kernel::unsigned_reciprocal},
        {"positive_part", Kernel::positive_part},
        {"negative_part", Kernel::negative_part},
        {"cot", Kernel::cot},
        {"abs_cot", Kernel::abs_cot},
        {"signed_power", Kernel::signed_power},
        {"unsigned_power", Kernel::unsigned_power},
    };
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown sum kind: " + name);
    return it->second;
}

std::string kernel_name(Kernel k) {
    switch (k) {
        case Kernel::signed_reciprocal: return "signed_reciprocal";
        case Kernel::unsigned_reciprocal: return "unsigned_reciprocal";
        case Kernel::positive_part: return "positive_part";
        case Kernel::negative_part: return "negative_part";
        case Kernel::cot: return "cot";
        case Kernel::abs_cot: return "abs_cot";
        case Kernel::signed_power: return "signed_power";
        case Kernel::unsigned_power: return "unsigned_power";
    }
    return "?";
}

void SumKind::validate() const {
    bool power = kernel == Kernel::signed_power || kernel == Kernel::unsigned_power;
    if (power) {
        if (!(p > 1.0)) throw std::invalid_argument("power kernels need p > 1");
    } else {
        if (p != 1.0) throw std::invalid_argument("order-1 and cot kernels need p = 1");
    }
    if (g && !(g->growth_exponent < p))
        throw std::invalid_argument("bounded part must have growth exponent p' < p");
}

namespace {

inline double kernel_value(Kernel k, double s, double p) {
    switch (k) {
        case Kernel::signed_reciprocal: return 1.0 / s;
        case Kernel::unsigned_reciprocal: return 1.0 / std::abs(s);
        case Kernel::positive_part: return s > 0 ? 1.0 / s : 0.0;
        case Kernel::negative_part: return s < 0 ? -1.0 / s : 0.0;
        case Kernel::cot: return 1.0 / std::tan(M_PI * s);
        case Kernel::abs_cot: return std::abs(1.0 / std::tan(M_PI * s));
        case Kernel::signed_power: {
            double v = std::pow(std::abs(s), -p);
            return s > 0 ? v : -v;
        }
        case Kernel::unsigned_power: return std::pow(std::abs(s), -p);
    }
    return 0.0;
}

// checks n*alpha == 0 (mod 1) exactly
inline void check_singular(const Angle& alpha, std::uint64_t n) {
    if (alpha.is_rational()) {
        if (alpha.residue(n) == 0) throw singular_term_error(n);
    } else {
        if (alpha.fraction() * n == 0) throw singular_term_error(n);
    }
}

} // namespace

double direct_sum(const Angle& alpha, std::uint64_t N, const SumKind& kind) {
    kind.validate();
    if (alpha.is_zero()) throw singular_term_error(1);
    double total = 0.0;
    const double p = kind.p;
    // descending n: the 1/n^p weight makes late terms the big ones, so the
    // small ones accumulate first
    for (std::uint64_t n = N; n >= 1; --n) {
        double s = alpha.signed_frac_of_multiple(n);
        if (s == 0.0) {
            check_singular(alpha, n);  // throws when truly singular
            throw singular_term_error(n);
        }
        double term = kernel_value(kind.kernel, s, p);
        if (kind.g) term += kind.g->fn(s);
        total += (p == 1.0) ? term / double(n) : term * std::pow(double(n), -p);
    }
    return total;
}

BigRat direct_sum_exact(const Angle& alpha, std::uint64_t N, Kernel kernel, unsigned p) {
    if (!alpha.is_rational())
        throw std::invalid_argument("direct_sum_exact needs a rational angle");
    bool power = kernel == Kernel::signed_power || kernel == Kernel::unsigned_power;
    if (!power && p != 1) throw std::invalid_argument("order-1 kernels need p = 1");
    if (kernel == Kernel::cot || kernel == Kernel::abs_cot)
        throw std::invalid_argument("cot kernels have no exact rational value");

    const std::uint64_t den = alpha.den(), num = alpha.num();
    if (num == 0) throw singular_term_error(1);
    // binary tree reduction keeps the bignum sizes balanced
    std::vector<BigRat> terms;
    terms.reserve(N);
    std::uint64_t r = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        r += num;
        if (r >= den) r -= den;
        if (r == 0) throw singular_term_error(n);
        bool positive = 2 * r <= den;
        std::uint64_t dist = positive ? r : den - r;
        // kernel(<n alpha>) / n^p = +- (den/dist)^p / n^p
        BigRat mag = big_pow(BigRat(BigInt(den), BigInt(dist) * n), p);
        switch (kernel) {
            case Kernel::signed_reciprocal:
            case Kernel::signed_power:
                terms.push_back(positive ? mag : -mag);
                break;
            case Kernel::unsigned_reciprocal:
            case Kernel::unsigned_power:
                terms.push_back(mag);
                break;
            case Kernel::positive_part:
                if (positive) terms.push_back(mag);
                break;
            case Kernel::negative_part:
                if (!positive) terms.push_back(mag);
                break;
            default: break;
        }
    }
    while (terms.size() > 1) {
        std::vector<BigRat> next;
        next.reserve((terms.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
        if (terms.size() % 2) next.push_back(terms.back());
        terms.swap(next);
    }
    return terms.empty() ? BigRat(0) : terms[0];
}

SplitSum split_sum(const Angle& alpha, std::uint64_t N, SingularitySide side, double p) {
    SplitSum out;
    const bool want_positive = side == SingularitySide::positive;
    for (std::uint64_t n = N; n >= 1; --n) {
        double s = alpha.signed_frac_of_multiple(n);
        if (s == 0.0) throw singular_term_error(n);
        if ((s > 0) != want_positive) continue;
        double term = std::pow(std::abs(s), -p) * std::pow(double(n), -p);
        bool near;
        if (alpha.is_rational()) {
            // <n alpha> = r/den (or -(den-r)/den); near iff 2 n dist < den
            std::uint64_t r = alpha.residue(n);
            std::uint64_t dist = 2 * r <= alpha.den() ? r : alpha.den() - r;
            near = (u128(2) * n * dist) < u128(alpha.den());
        } else {
            u128 f = alpha.fraction() * n;
            u128 dist = f <= U128_HALF ? f : u128(0) - f;
            near = !mul_frac_ge_half(dist, n);  // dist * n < 2^127 <=> ||..|| < 1/(2n)
        }
        (near ? out.near : out.far) += term;
    }
    return out;
}

SplitSumExact split_sum_exact(const Angle& alpha, std::uint64_t N, SingularitySide side,
                              unsigned p) {
    if (!alpha.is_rational())
        throw std::invalid_argument("split_sum_exact needs a rational angle");
    const std::uint64_t den = alpha.den(), num = alpha.num();
    const bool want_positive = side == SingularitySide::positive;
    std::vector<BigRat> near_terms, far_terms;
    std::uint64_t r = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        r += num;
        if (r >= den) r -= den;
        if (r == 0) throw singular_term_error(n);
        bool positive = 2 * r <= den;
        if (positive != want_positive) continue;
        std::uint64_t dist = positive ? r : den - r;
        BigRat mag = big_pow(BigRat(BigInt(den), BigInt(dist) * n), p);
        bool near = (u128(2) * n * dist) < u128(den);
        (near ? near_terms : far_terms).push_back(mag);
    }
    auto reduce = [](std::vector<BigRat>& v) {
        BigRat s = 0;
        for (auto& t : v) s += t;
        return s;
    };
    return {reduce(near_terms), reduce(far_terms)};
}

double r_func(double x, double p) {
    if (!(x > 0)) throw std::domain_error("r_func: x must be positive");
    double jmax = std::sqrt(x / 2.0);
    double s = 0;
    if (p == 1.0) {
        for (double j = 1; j < jmax; ++j) s += x / (j * j);
    } else {
        double xp = std::pow(x, p);
        for (double j = 1; j < jmax; ++j) s += xp / std::pow(j, 2.0 * p);
    }
    return s;
}

double r_func1(double x) {
    if (!(x > 0)) throw std::domain_error("r_func1: x must be positive");
    long m = long(std::ceil(std::sqrt(x / 2.0))) - 1;
    while (2.0 * double(m + 1) * double(m + 1) < x) ++m;
    while (m >= 1 && 2.0 * double(m) * double(m) >= x) --m;
    if (m < 1) return 0.0;
    return (M_PI * M_PI / 6.0 - constants::trigamma(double(m) + 1.0)) * x;
}

BigRat r_func_exact(const BigRat& x, unsigned p) {
    if (!(x > 0)) throw std::domain_error("r_func: x must be positive");
    // j < sqrt(x/2)  <=>  2 j^2 < x, decided exactly
    BigRat sum = 0;
    BigRat xp = big_pow(x, p);
    for (BigInt j = 1; BigRat(2 * j * j) < x; ++j) {
        BigInt j2p = 1;
        for (unsigned i = 0; i < 2 * p; ++i) j2p *= j;
        sum += xp / BigRat(j2p);
    }
    return sum;
}

BigRat block_sum_via_r(const ContinuedFraction& cf, const Angle& alpha, std::size_t k,
                       SingularitySide side, unsigned p) {
    if (k + 1 > cf.terms()) throw std::out_of_range("block_sum_via_r: q_{k+1} not available");
    bool gate = (k % 2 == 0) == (side == SingularitySide::positive);
    if (!gate) return BigRat(0);
    return r_func_exact(u_value(cf, alpha, k + 1, UMethod::denominator_form), p);
}

BlockReport verify_block_identity(const Angle& alpha, unsigned p) {
    if (!alpha.is_rational() || alpha.is_zero())
        throw std::invalid_argument("verify_block_identity needs a nonzero rational angle");
    const std::uint64_t den = alpha.den(), num = alpha.num();
    ContinuedFraction cf = cf_expand(alpha, 300);
    if (!cf.exhausted) throw std::logic_error("rational expansion did not terminate");

    // per-block exact near sums, found by scanning the whole orbit n < q_K
    const std::size_t K = cf.terms();
    std::vector<BigRat> near_pos(K), near_neg(K);
    std::uint64_t r = 0;
    std::size_t block = 0;  // q_block <= n < q_{block+1}
    for (std::uint64_t n = 1; n < den; ++n) {
        r += num;
        if (r >= den) r -= den;
        while (block + 1 < cf.q.size() && u128(n) >= cf.q[block + 1]) ++block;
        bool positive = 2 * r <= den;
        std::uint64_t dist = positive ? r : den - r;
        if (u128(2) * n * dist >= u128(den)) continue;  // far
        BigRat mag = big_pow(BigRat(BigInt(den), BigInt(dist) * n), p);
        (positive ? near_pos : near_neg)[block] += mag;
    }

    BlockReport report;
    for (std::size_t k = 0; k + 1 <= K; ++k) {
        BigRat expect_pos = block_sum_via_r(cf, alpha, k, SingularitySide::positive, p);
        BigRat expect_neg = block_sum_via_r(cf, alpha, k, SingularitySide::negative, p);
        ++report.blocks_checked;
        if (near_pos[k] != expect_pos)
            report.mismatches.push_back({k, SingularitySide::positive, near_pos[k], expect_pos});
        if (near_neg[k] != expect_neg)
            report.mismatches.push_back({k, SingularitySide::negative, near_neg[k], expect_neg});
    }
    return report;
}

ZetaAkPowerSum zeta_ak_power_sum(const ContinuedFraction& cf, std::size_t K, double p,
                                 IndexParity parity) {
    if (K > cf.terms()) throw std::out_of_range("zeta_ak_power_sum: K out of range");
    if (!(p > 1.0)) throw std::domain_error("zeta_ak_power_sum needs p > 1");
    double zeta2p = constants::zeta(2.0 * p);
    ZetaAkPowerSum out;
    double s = 0, resid = 0;
    for (std::size_t k = 1; k <= K; ++k) {
        double a = double(cf.quotient(k));
        resid += std::pow(a, p - 1.0);
        bool is_odd = (k % 2) == 1;
        if ((parity == IndexParity::odd) == is_odd) s += std::pow(a, p);
    }
    out.value = zeta2p * s;
    out.residual_bound = resid;
    return out;
}

} // namespace cotsum

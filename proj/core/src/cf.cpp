#include "cotsum/cf.hpp"

#include <cmath>

namespace cotsum {

namespace {

// quotient and remainder of 2^128 / d (the dyadic denominator is one past
// the top of u128, so the first Euclidean step is special-cased)
void divmod_2pow128(u128 d, u128& quot, u128& rem) {
    u128 all_ones = ~u128(0);          // 2^128 - 1
    quot = all_ones / d;
    rem = all_ones % d;
    if (rem + 1 == d) { quot += 1; rem = 0; }
    else rem += 1;
}

constexpr u128 Q_LIMIT = u128(1) << 126;

} // namespace

ContinuedFraction cf_expand(const Angle& alpha, std::size_t max_terms) {
    if (max_terms < 1) throw std::invalid_argument("max_terms must be >= 1");
    if (alpha.is_zero()) throw std::domain_error("zero angle has no partial quotients");

    ContinuedFraction cf;
    cf.p = {0};
    cf.q = {1};
    u128 p_prev = 1, q_prev = 0;   // p_{-1}, q_{-1}

    // Euclid on (num, den); first step from 2^128 for dyadic angles
    u128 num, den;
    bool first_dyadic = false;
    if (alpha.is_rational()) {
        num = alpha.num();
        den = alpha.den();
    } else {
        num = alpha.fraction();
        den = 0;                    // marker: denominator is 2^128
        first_dyadic = true;
    }

    while (cf.a.size() < max_terms) {
        u128 quot, rem;
        if (first_dyadic) {
            divmod_2pow128(num, quot, rem);
            first_dyadic = false;
        } else {
            if (num == 0) { cf.exhausted = true; break; }
            quot = den / num;
            rem = den % num;
        }
        // q grows by at least the golden ratio each step; stop before the
        // convergents leave u128 (only reachable for dyadic angles)
        if (cf.q.back() > Q_LIMIT / (quot + 1)) break;
        u128 pk = quot * cf.p.back() + p_prev;
        u128 qk = quot * cf.q.back() + q_prev;
        p_prev = cf.p.back();
        q_prev = cf.q.back();
        cf.p.push_back(pk);
        cf.q.push_back(qk);
        cf.a.push_back(std::uint64_t(quot));
        den = num;
        num = rem;
        if (num == 0) { cf.exhausted = true; break; }
    }
    return cf;
}

std::vector<std::pair<u128, u128>> convergents(const ContinuedFraction& cf) {
    std::vector<std::pair<u128, u128>> out;
    out.reserve(cf.p.size());
    for (std::size_t i = 0; i < cf.p.size(); ++i) out.emplace_back(cf.p[i], cf.q[i]);
    return out;
}

BigRat u_value(const ContinuedFraction& cf, const Angle& alpha, std::size_t k,
               UMethod method) {
    if (k < 1 || k > cf.terms()) throw std::out_of_range("u_value: k out of range");
    if (method == UMethod::denominator_form) {
        // The distance in u_k = 1/(q_{k-1} |q_{k-1} a - p_{k-1}|) is to the
        // convergent, whose error has sign (-1)^(k-1). For k >= 2 this is the
        // nearest integer anyway; at k = 1 with a_1 = 1 it is alpha itself
        // (p_0 = 0), which keeps the tail+head identity and makes the empty
        // q_0 = q_1 = 1 block contribute R(u_1) = 0.
        bool err_positive = (k - 1) % 2 == 0;
        if (alpha.is_rational()) {
            std::uint64_t q = std::uint64_t(cf.q[k - 1]);
            std::uint64_t r = alpha.residue(q);
            std::uint64_t dist = err_positive ? r : alpha.den() - r;
            return BigRat(BigInt(alpha.den()), BigInt(q) * dist);
        }
        u128 q = cf.q[k - 1];
        u128 f = alpha.fraction() * q;                  // wraps mod 2^128: exact
        u128 dist = err_positive ? f : u128(0) - f;
        BigInt two128 = BigInt(1) << 128;
        BigInt d(u128_to_string(dist));
        BigInt qq(u128_to_string(q));
        return BigRat(two128, qq * d);
    }
    // tail [a_k; a_{k+1}, ..., a_K] + head [0; a_{k-1}, ..., a_1]
    if (!cf.exhausted)
        throw std::domain_error("tail_head_form needs a fully expanded (rational) angle");
    BigRat tail = BigRat(BigInt(cf.a.back()));
    for (std::size_t j = cf.terms() - 1; j >= k; --j)
        tail = BigRat(BigInt(cf.a[j - 1])) + BigRat(1) / tail;
    BigRat head = 0;
    for (std::size_t j = 1; j < k; ++j)            // innermost a_1 outwards
        head = BigRat(1) / (BigRat(BigInt(cf.a[j - 1])) + head);
    return tail + head;
}

double u_value_double(const ContinuedFraction& cf, const Angle& alpha, std::size_t k) {
    if (k < 1 || k > cf.terms()) throw std::out_of_range("u_value: k out of range");
    if (alpha.is_rational())
        return to_double(u_value(cf, alpha, k, UMethod::denominator_form));
    bool err_positive = (k - 1) % 2 == 0;
    u128 q = cf.q[k - 1];
    u128 f = alpha.fraction() * q;
    u128 dist = err_positive ? f : u128(0) - f;
    // 2^128 / (q * dist), carried out in doubles after exact reduction
    return 0x1p128 / (u128_to_double(q) * u128_to_double(dist));
}

std::size_t k_n_star(const ContinuedFraction& cf, std::uint64_t N) {
    if (N < 1) throw std::invalid_argument("k_n_star: N must be >= 1");
    // q_0 = 1 <= N always; find K with q_K <= N < q_{K+1}
    std::size_t K = 0;
    for (std::size_t i = 1; i < cf.q.size(); ++i) {
        if (cf.q[i] <= u128(N)) K = i;
        else return K;
    }
    if (cf.exhausted)
        throw bracket_error("k_n_star: expansion exhausted at q_K <= N (rational angle too coarse)",
                            cf.q.size() - 1);
    throw bracket_error("k_n_star: expansion too short to bracket N", cf.q.size() - 1);
}

long k_n_even(std::uint64_t N) {
    if (N < 2) throw std::invalid_argument("k_n_even: N must be >= 2");
    double target = 12.0 * M_LN2 / (M_PI * M_PI) * std::log(double(N));
    long lower = 2 * long(std::floor(target / 2.0));
    long upper = lower + 2;
    return (target - lower <= upper - target) ? lower : upper;
}

double gauss_pmf(std::uint64_t n) {
    if (n < 1) throw std::domain_error("gauss_pmf: n must be >= 1");
    double nn = double(n);
    return std::log1p(1.0 / (nn * (nn + 2.0))) / M_LN2;
}

} // namespace cotsum

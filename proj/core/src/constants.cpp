#include "cotsum/constants.hpp"
#include "cotsum/quadrature.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cotsum::constants {

namespace {
constexpr double PI = M_PI;
constexpr double LOG2 = M_LN2;
}

// ---------------------------------------------------------------------------
// zeta / digamma primitives (Euler-Maclaurin)
// ---------------------------------------------------------------------------

double zeta_tail(double s, std::uint64_t N) {
    // sum_{n>N} n^-s for s > 1, Euler-Maclaurin from a = N+1
    double a = double(N) + 1.0;
    double ia = 1.0 / a;
    double as = std::pow(a, -s);
    double t = as * a / (s - 1.0);        // a^(1-s)/(s-1)
    t += 0.5 * as;
    t += s * as * ia / 12.0;
    t -= s * (s + 1) * (s + 2) * as * ia * ia * ia / 720.0;
    t += s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * as * ia * ia * ia * ia * ia / 30240.0;
    return t;
}

double zeta(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta: need s > 1");
    const std::uint64_t M = 100;
    double sum = 0;
    for (std::uint64_t n = M; n >= 1; --n) sum += std::pow(double(n), -s);
    return sum + zeta_tail(s, M);
}

double zeta_prime_2() {
    static const double value = [] {
        const std::uint64_t M = 2000;
        double sum = 0;
        for (std::uint64_t n = M; n >= 2; --n) {
            double x = double(n);
            sum += std::log(x) / (x * x);
        }
        double a = double(M) + 1.0;
        double la = std::log(a);
        double tail = (la + 1.0) / a;                         // integral
        tail += la / (a * a) / 2.0;                           // f(a)/2
        tail -= (1.0 - 2.0 * la) / (a * a * a) / 12.0;        // -f'(a)/12
        tail += (26.0 - 24.0 * la) / std::pow(a, 5) / 720.0;  // +f'''(a)/720
        return -(sum + tail);
    }();
    return value;
}

double digamma(double y) {
    if (!(y > 0)) throw std::domain_error("digamma: need y > 0");
    double acc = 0;
    while (y < 14.0) {
        acc -= 1.0 / y;
        y += 1.0;
    }
    double iy = 1.0 / y, iy2 = iy * iy;
    // asymptotic series: log y - 1/(2y) - sum B_2k/(2k y^2k)
    double v = std::log(y) - 0.5 * iy
             - iy2 * (1.0 / 12.0 - iy2 * (1.0 / 120.0 - iy2 * (1.0 / 252.0 - iy2 * (1.0 / 240.0 - iy2 / 132.0))));
    return acc + v;
}

double trigamma(double y) {
    if (!(y > 0)) throw std::domain_error("trigamma: need y > 0");
    double acc = 0;
    while (y < 14.0) {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    double iy = 1.0 / y, iy2 = iy * iy;
    double v = iy + 0.5 * iy2
             + iy * iy2 * (1.0 / 6.0 - iy2 * (1.0 / 30.0 - iy2 * (1.0 / 42.0 - iy2 / 30.0)));
    return acc + v;
}

double euler_gamma() {
    static const double value = -digamma(1.0);
    return value;
}

// ---------------------------------------------------------------------------
// order-1 constants
// ---------------------------------------------------------------------------

double c_j(double g_integral) {
    return euler_gamma() + std::log(2.0 * PI / 3.0) - 12.0 * zeta_prime_2() / (PI * PI)
         - 1.0 - g_integral;
}

double c_cor(double g_integral) {
    return 2.0 * (euler_gamma() + std::log(PI / 3.0) - 12.0 * zeta_prime_2() / (PI * PI) - 1.0)
         - g_integral;
}

double c_thm1() {
    static const double value =
        (2.0 / PI) * (euler_gamma() + std::log(PI * PI / 6.0)
                      - 12.0 * zeta_prime_2() / (PI * PI) - 1.0);
    return value;
}

// ---------------------------------------------------------------------------
// kappa family. The two slowly converging series are rearranged so the tails
// are explicit zeta tails:
//   S1 = sum_m [ log(1+1/(2m^2))/m^2 - 2 log(1+1/(2m^2+1)) ]  (kappa)
//   S2 = S1 + sum_m log(2m^2)/m^2 = S1 + log2 zeta(2) - 2 zeta'(2)  (kappa',kappa'')
// ---------------------------------------------------------------------------

namespace {

double kappa_series_s1() {
    static const double value = [] {
        const std::uint64_t M = 400000;
        double a = 0, b = 0;
        for (std::uint64_t mi = M; mi >= 1; --mi) {
            double m = double(mi), m2 = 2.0 * m * m;
            a += std::log1p(1.0 / m2) / (m * m);
            b += 2.0 * std::log1p(1.0 / (m2 + 1.0));
        }
        // tails: log1p(1/(2m^2))/m^2 = 1/(2m^4) - 1/(8m^6) + ...
        double ta = 0.5 * zeta_tail(4, M) - 0.125 * zeta_tail(6, M);
        // 2 log1p(u), u = 1/(2m^2+1): u = 1/(2m^2) - 1/(4m^4) + 1/(8 m^6) ...
        // sum u  = zt(2)/2 - zt(4)/4 + zt(6)/8
        // sum u^2 = zt(4)/4 - zt(6)/4 ;  sum u^3 = zt(6)/8
        double su = 0.5 * zeta_tail(2, M) - 0.25 * zeta_tail(4, M) + 0.125 * zeta_tail(6, M);
        double su2 = 0.25 * zeta_tail(4, M) - 0.25 * zeta_tail(6, M);
        double su3 = 0.125 * zeta_tail(6, M);
        double tb = 2.0 * (su - su2 / 2.0 + su3 / 3.0);
        return (a + ta) - (b + tb);
    }();
    return value;
}

double kappa_series_s2() {
    return kappa_series_s1() + LOG2 * zeta(2.0) - 2.0 * zeta_prime_2();
}

} // namespace

double kappa() {
    static const double value = PI * PI / (6.0 * LOG2) + kappa_series_s1() / LOG2;
    return value;
}

double kappa_prime() {
    static const double value =
        PI * PI / (6.0 * LOG2) * (euler_gamma() + std::log(PI * PI / 6.0))
        + kappa_series_s2() / LOG2;
    return value;
}

double kappa_double_prime() {
    static const double value =
        PI * PI / (12.0 * LOG2) * (euler_gamma() + std::log(4.0 * LOG2 / PI))
        + kappa_series_s2() / (2.0 * LOG2);
    return value;
}

// ---------------------------------------------------------------------------
// W(y): closed form via digamma, and a genuine integration route.
// R(x) = r_m x on (2m^2, 2(m+1)^2], r_m = sum_{j<=m} 1/j^2.
// ---------------------------------------------------------------------------

namespace {

double r_of(double x) {
    long m = long(std::ceil(std::sqrt(x / 2.0))) - 1;
    while (2.0 * double(m + 1) * double(m + 1) < x) ++m;   // guard fp edges
    while (m >= 1 && 2.0 * double(m) * double(m) >= x) --m;
    if (m < 1) return 0.0;
    // r_m = zeta(2) - psi'(m+1)
    return (PI * PI / 6.0 - trigamma(double(m) + 1.0)) * x;
}

double w_closed(double y) {
    const std::uint64_t M = 4000;
    double psi2y = digamma(2.0 + y);
    double s = 0;
    for (std::uint64_t mi = M; mi >= 1; --mi) {
        double m = double(mi), z = 2.0 * m * m;
        s += -std::log(z) / (m * m) - 2.0 / (z + 1.0 + y)
           + (digamma(z + 1.0 + y) - psi2y) / (m * m);
    }
    // t_m = -(psi(2+y)+1)/m^2 + ((1+y) - 1/4)/m^4 + O(m^-6)
    s += -(psi2y + 1.0) * zeta_tail(2, M) + (y + 0.75) * zeta_tail(4, M);
    return (1.0 + y) * (s + PI * PI / 6.0 * (1.0 + digamma(1.0 + y) + 1.0 / (1.0 + y)));
}

// sum_{n=A}^{B} [log((n+1+y)/(n+y)) - n/((n+y)(n+1+y))], telescoped
double block_inner_sum(double A, double B, double y) {
    return std::log((B + 1.0 + y) / (A + y))
         + y * (digamma(B + 1.0 + y) - digamma(A + y))
         - (1.0 + y) * (digamma(B + 2.0 + y) - digamma(A + 1.0 + y));
}

double w_quadrature(double y) {
    // head x in [1, 2*32^2]: raw Gauss-Legendre on pieces split at the
    // R(x+y) jump points 2k^2 - y and at integers
    const long MHEAD = 32;
    const auto& g = gl16();
    auto f = [y](double x) { return (r_of(x + y) - r_of(std::floor(x))) / ((x + y) * (x + y)); };
    double total = 0;
    long head_end = 2 * MHEAD * MHEAD;
    for (long n = 1; n < head_end; ++n) {
        double a = double(n), b = double(n + 1);
        // at most one jump of R(x+y) inside: x + y = 2k^2
        double k = std::ceil(std::sqrt((a + y) / 2.0));
        double jump = 2.0 * k * k - y;
        if (jump > a && jump < b) {
            total += g.integrate(f, a, jump);
            total += g.integrate(f, jump, b);
        } else {
            total += g.integrate(f, a, b);
        }
    }
    // body: exact per-block integration, blocks (2m^2, 2(m+1)^2]
    const std::uint64_t MBODY = 20000;
    for (std::uint64_t mi = MHEAD; mi <= MBODY; ++mi) {
        double m = double(mi);
        double a = 2.0 * m * m, b = 2.0 * (m + 1.0) * (m + 1.0);
        double rm = PI * PI / 6.0 - trigamma(m + 1.0);
        total += rm * block_inner_sum(a, b - 1.0, y)
               + 2.0 / ((a + y) * (a + 1.0 + y))
               + std::log((b + y) / b) / ((m + 1.0) * (m + 1.0));
    }
    // tail: I_m ~ (pi^2/6)(y+1/2)/m^3
    total += PI * PI / 6.0 * (y + 0.5) * zeta_tail(3, MBODY);
    return (1.0 + y) * total;
}

} // namespace

double w_function(double y, WMethod method) {
    if (y < 0.0 || y > 1.0) throw std::domain_error("w_function: y must lie in [0,1]");
    return method == WMethod::closed_form ? w_closed(y) : w_quadrature(y);
}

double kappa_via_w() {
    static const double value = [] {
        const auto& g = gl32();
        double s = 0;
        const int panels = 8;
        for (int i = 0; i < panels; ++i) {
            double a = double(i) / panels, b = double(i + 1) / panels;
            s += g.integrate([](double y) { return w_closed(y) / (1.0 + y); }, a, b);
        }
        return s / LOG2;
    }();
    return value;
}

// ---------------------------------------------------------------------------
// p-indexed constants (1 < p < 2 for d_p/b_p/c_p/kappa_p, 1/2 <= p < 1 for m_p)
// ---------------------------------------------------------------------------

namespace {

void require_open12(double p, const char* who) {
    if (!(p > 1.0 && p < 2.0))
        throw std::domain_error(std::string(who) + ": p must lie in (1,2)");
}

// cache for the p-indexed constants; the underlying evaluations are pure, so
// a lost race just recomputes the same value
template <class F>
double memoized(int which, double p, F&& compute) {
    static std::mutex mu;
    static std::map<std::pair<int, long long>, double> cache;
    long long bits;
    std::memcpy(&bits, &p, sizeof bits);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({which, bits});
        if (it != cache.end()) return it->second;
    }
    double v = compute();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::pair<int, long long>{which, bits}, v);
    return v;
}

// integral_X^inf x^e/(x^2+x) dx as a geometric series in 1/X (X >= 2, e < 1)
double tail_over_x2px(double e, double X) {
    double s = 0, xp = std::pow(X, e - 1.0);
    for (int j = 0; j < 70; ++j) {
        s += xp / (1.0 + j - e);
        xp = -xp / X;
    }
    return s;
}

// J(p) = int_1^inf (x^p - floor(x)^p + x^(p-1))/(x^2+x) dx
double j_integral(double p, long X) {
    double total = integrate_unit_intervals(
        [p](double x) {
            double fl = std::floor(x);
            return (std::pow(x, p) - std::pow(fl, p) + std::pow(x, p - 1.0)) / (x * x + x);
        },
        1, X);
    double C2 = p * (p - 1.0) / 2.0, C3 = p * (p - 1.0) * (p - 2.0) / 6.0;
    double XX = double(X);
    total += (1.0 + p / 2.0) * tail_over_x2px(p - 1.0, XX)
           - (C2 / 3.0) * tail_over_x2px(p - 2.0, XX)
           + (C3 / 4.0) * tail_over_x2px(p - 3.0, XX)
           - (p / 12.0) * std::pow(XX, p - 1.0) / (XX * XX + XX)
           + (C2 / 12.0) * std::pow(XX, p - 2.0) / (XX * XX + XX);
    return total;
}

// int_1^inf x^(p-2)(6x+4)/((x+1)(x+2)) dx ; (6x+4)/((x+1)(x+2)) = -2/(x+1)+8/(x+2)
double i2_integral(double p, long X) {
    double total = integrate_unit_intervals(
        [p](double x) { return std::pow(x, p - 2.0) * (6.0 * x + 4.0) / ((x + 1.0) * (x + 2.0)); },
        1, X);
    double XX = double(X);
    double t1 = 0, t2 = 0, xp = std::pow(XX, p - 2.0);
    double f1 = xp, f2 = xp;
    for (int j = 0; j < 80; ++j) {
        t1 += f1 / (2.0 + j - p);
        t2 += f2 / (2.0 + j - p);
        f1 = -f1 / XX;
        f2 = -2.0 * f2 / XX;
    }
    return total + (-2.0 * t1 + 8.0 * t2);
}

// int_1^inf ({x}-1/2) x^(p-1) (p log(1+1/(x(x+2))) - 2/((x+1)(x+2))) dx
double i3_integral(double p, long X) {
    auto g = [p](double x) {
        return std::pow(x, p - 1.0)
             * (p * std::log1p(1.0 / (x * (x + 2.0))) - 2.0 / ((x + 1.0) * (x + 2.0)));
    };
    double total = integrate_unit_intervals(
        [&](double x) { return (x - std::floor(x) - 0.5) * g(x); }, 1, X);
    return total - g(double(X)) / 12.0;
}

double l_p(double p, long X) {
    return 2.0 / ((p - 1.0) * (p + 1.0))
         - (p - 1.0) / (2.0 * (p + 1.0)) * std::log(4.0 / 3.0)
         + i2_integral(p, X) / (p + 1.0) - i3_integral(p, X);
}

// D_p = sum_m m^(-2p) H_p(2m^2), H_p(N) = sum_{n<=N} n^p log(1+1/(n(n+2)))
double d_series(double p) {
    const std::uint64_t M = 1500;
    double total = 0, H = 0;
    std::uint64_t n = 0;
    for (std::uint64_t m = 1; m <= M; ++m) {
        std::uint64_t upto = 2 * m * m;
        while (n < upto) {
            ++n;
            double x = double(n);
            H += std::pow(x, p) * std::log1p(1.0 / (x * (x + 2.0)));
        }
        total += H * std::pow(double(m), -2.0 * p);
    }
    // H_p(2m^2) = (2m^2)^(p-1)/(p-1) - L_p + c1 (2m^2)^(p-2) + O(m^(2p-6))
    double c1 = 0.5 - 2.0 / (p - 2.0);
    total += std::pow(2.0, p - 1.0) / (p - 1.0) * zeta_tail(2, M)
           - l_p(p, 700) * zeta_tail(2.0 * p, M)
           + c1 * std::pow(2.0, p - 2.0) * zeta_tail(4.0, M);
    return total;
}

} // namespace

double d_p(double p) {
    require_open12(p, "d_p");
    return memoized(1, p, [p] { return 1.0 / ((p - 1.0) * LOG2) + j_integral(p, 12000) / LOG2; });
}

double b_p(double p) {
    require_open12(p, "b_p");
    return memoized(2, p, [p] {
        return j_integral(p, 12000) - i2_integral(p, 12000) / (p + 1.0) + i3_integral(p, 12000);
    });
}

double c_p(double p) {
    require_open12(p, "c_p");
    return memoized(3, p, [p] {
        return 6.0 * zeta(2.0 * p) / (PI * PI)
             * (1.0 / (p + 1.0) + (p - 1.0) / (2.0 * (p + 1.0)) * std::log(4.0 / 3.0) + b_p(p));
    });
}

double kappa_p(double p) {
    require_open12(p, "kappa_p");
    return memoized(4, p, [p] {
        return -PI * PI / (12.0 * LOG2) * std::pow(2.0, p) / (p - 1.0)
             + d_series(p) / LOG2 + zeta(2.0 * p) / LOG2 * l_p(p, 700);
    });
}

double kappa_p_prime(double p) {
    require_open12(p, "kappa_p_prime");
    return memoized(5, p, [p] {
        // its own truncation, so the c_p cross-route is numerically independent
        double dp2 = 1.0 / ((p - 1.0) * LOG2) + j_integral(p, 7000) / LOG2;
        return zeta(2.0 * p) * dp2 + d_series(p) / LOG2;
    });
}

double c_p_via_kappa(double p) {
    require_open12(p, "c_p_via_kappa");
    return 6.0 * LOG2 / (PI * PI) * (kappa_p_prime(p) - kappa_p(p))
         - std::pow(2.0, p - 1.0) / (p - 1.0);
}

double m_p(double p) {
    if (!(p >= 0.5 && p < 1.0)) throw std::domain_error("m_p: p must lie in [1/2, 1)");
    return memoized(6, p, [p] {
        const std::uint64_t N = 20000;
        double s = 0;
        for (std::uint64_t n = N; n >= 1; --n) {
            double x = double(n);
            s += std::pow(x, p) * std::log1p(1.0 / (x * (x + 2.0)));
        }
        // n^p log(1+1/(n(n+2))) = n^(p-2) - 2n^(p-3) + 7/2 n^(p-4) - 6 n^(p-5) + 31/3 n^(p-6) ...
        s += zeta_tail(2.0 - p, N) - 2.0 * zeta_tail(3.0 - p, N) + 3.5 * zeta_tail(4.0 - p, N)
           - 6.0 * zeta_tail(5.0 - p, N) + (31.0 / 3.0) * zeta_tail(6.0 - p, N);
        return s / LOG2;
    });
}

double sigma_p(double p) {
    if (!(p > 1.0)) throw std::domain_error("sigma_p: p must be > 1");
    return zeta(2.0 * p)
         * std::pow(6.0 / (PI * PI) * std::cos(PI / (2.0 * p)) * std::tgamma(1.0 - 1.0 / p), p);
}

double sigma_ak_power(double p) {
    if (!(p > 1.0)) throw std::domain_error("sigma_ak_power: p must be > 1");
    return std::pow(std::cos(PI / (2.0 * p)) * std::tgamma(1.0 - 1.0 / p) / (2.0 * LOG2), p);
}

double sigma_cot3() {
    return 64.0 / (35.0 * std::pow(std::tgamma(1.0 / 3.0), 3));
}

// ---------------------------------------------------------------------------
// centerings
// ---------------------------------------------------------------------------

double thm1_e_n(double N) {
    if (!(N >= 3)) throw std::domain_error("thm1_e_n: N must be >= 3");
    double ln = std::log(N), lln = std::log(ln);
    return ln * ln / PI + 2.0 / PI * ln * lln - c_thm1() * ln;
}

double main_e_jn(double N, double g_integral) {
    if (!(N >= 3)) throw std::domain_error("main_e_jn: N must be >= 3");
    double ln = std::log(N), lln = std::log(ln);
    return 0.5 * ln * ln + ln * lln - c_j(g_integral) * ln;
}

double cor_e_n(double N, double g_integral) {
    if (!(N >= 3)) throw std::domain_error("cor_e_n: N must be >= 3");
    double ln = std::log(N), lln = std::log(ln);
    return ln * ln + 2.0 * ln * lln - c_cor(g_integral) * ln;
}

double sum_ak_centering(double K) {
    if (!(K >= 1)) throw std::domain_error("sum_ak_centering: K must be >= 1");
    double lk = std::log(K);
    return K * lk / LOG2 + (std::log(PI / (2.0 * LOG2)) - euler_gamma()) * K / LOG2;
}

double sum_r_ak_centering(double K) {
    if (!(K >= 1)) throw std::domain_error("sum_r_ak_centering: K must be >= 1");
    return PI * PI / (12.0 * LOG2) * K * std::log(K) - kappa_double_prime() * K;
}

double sum_ak_power_centering(double K, double p) {
    if (!(K >= 1)) throw std::domain_error("sum_ak_power_centering: K must be >= 1");
    if (!(p > 1.0)) throw std::domain_error("sum_ak_power_centering: p must be > 1");
    if (p < 2.0) return d_p(p) / 2.0 * K;
    if (p == 2.0) return K * std::log(K) / LOG2;
    return 0.0;
}

double p_sum_centering(double N, double p) {
    if (!(p > 1.0)) throw std::domain_error("p_sum_centering: p must be > 1");
    if (p >= 2.0) return 0.0;
    return c_p(p) * std::log(N);
}

// ---------------------------------------------------------------------------
// table dump
// ---------------------------------------------------------------------------

std::vector<Entry> table() {
    std::vector<Entry> t;
    auto add = [&](std::string name, double v, double err, int routes) {
        t.push_back({std::move(name), v, err, routes});
    };
    add("gamma_euler", euler_gamma(), 1e-14, 2);
    add("zeta_prime_2", zeta_prime_2(), 1e-12, 2);
    add("c_thm1", c_thm1(), 1e-10, 2);
    add("c_j_0", c_j(0.0), 1e-10, 1);
    add("c_cor_0", c_cor(0.0), 1e-10, 2);
    add("kappa", kappa(), std::abs(kappa() - kappa_via_w()) + 1e-9, 2);
    add("kappa_prime", kappa_prime(), 1e-9, 1);
    add("kappa_double_prime", kappa_double_prime(), 1e-9, 2);
    add("w_0", w_function(0.0, WMethod::closed_form),
        std::abs(w_function(0.0, WMethod::closed_form) - w_function(0.0, WMethod::quadrature)) + 1e-10, 2);
    add("sigma_cot3", sigma_cot3(), 1e-13, 2);
    for (double p : {1.1, 1.25, 1.5, 1.9}) {
        std::string sp = std::to_string(p).substr(0, 4);
        add("d_p_" + sp, d_p(p), 1e-8, 1);
        add("B_p_" + sp, b_p(p), 1e-8, 1);
        add("c_p_" + sp, c_p(p), std::abs(c_p(p) - c_p_via_kappa(p)) + 1e-8, 2);
        add("kappa_p_" + sp, kappa_p(p), 1e-7, 1);
        add("kappa_p_prime_" + sp, kappa_p_prime(p), 1e-7, 1);
    }
    for (double p : {0.5, 0.75, 0.9}) {
        std::string sp = std::to_string(p).substr(0, 4);
        add("m_p_" + sp, m_p(p), 1e-10, 1);
    }
    for (double p : {1.5, 2.0, 3.0}) {
        std::string sp = std::to_string(p).substr(0, 4);
        add("sigma_p_" + sp, sigma_p(p), 1e-12, 2);
    }
    return t;
}

} // namespace cotsum::constants

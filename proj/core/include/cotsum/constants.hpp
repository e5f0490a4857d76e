#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cotsum::constants {

// Every named constant of the theory, each evaluated to ~1e-10 or better,
// with a second independent route wherever one exists. Values are computed
// once and cached (magic statics); everything here is pure.

double zeta(double s);                         // s > 1
double zeta_tail(double s, std::uint64_t N);   // sum_{n>N} n^-s
double zeta_prime_2();                         // zeta'(2) = -sum log n / n^2
double euler_gamma();
double digamma(double y);                      // y > 0
double trigamma(double y);                     // y > 0

// c of the cotangent limit law: (2/pi)(gamma + log(pi^2/6) - 12 zeta'(2)/pi^2 - 1)
double c_thm1();
// c_j = gamma + log(2pi/3) - 12 zeta'(2)/pi^2 - 1 - integral(g_j)
double c_j(double g_integral);
// c = 2(gamma + log(pi/3) - 12 zeta'(2)/pi^2 - 1) - integral(g)
double c_cor(double g_integral);

// kappa = pi^2/(6 log2) + (1/log2) sum_m [log((2m^2+1)/(2m^2))/m^2
//                                         - 2 log((2m^2+2)/(2m^2+1))]
double kappa();

enum class WMethod { closed_form, quadrature };
// W(y) = (1+y) Int_1^inf (R(x+y) - R(floor x))/(x+y)^2 dx on [0,1]
double w_function(double y, WMethod method);
// (1/log2) Int_0^1 W(y)/(1+y) dy; equals kappa
double kappa_via_w();

double kappa_prime();
double kappa_double_prime();

// p-indexed constants. Stated domains are enforced: d_p, b_p, c_p, kappa_p,
// kappa_p_prime on 1 < p < 2; m_p on 1/2 <= p < 1; sigma on p > 1.
double d_p(double p);
double b_p(double p);
double c_p(double p);
double c_p_via_kappa(double p);   // (6 log2/pi^2)(kappa_p' - kappa_p) - 2^(p-1)/(p-1)
double m_p(double p);
double kappa_p(double p);
double kappa_p_prime(double p);
double sigma_p(double p);         // zeta(2p) ((6/pi^2) cos(pi/2p) Gamma(1-1/p))^p
double sigma_ak_power(double p);  // ((1/(2 log2)) cos(pi/2p) Gamma(1-1/p))^p
double sigma_cot3();              // 64/(35 Gamma(1/3)^3)

// centering sequences
double thm1_e_n(double N);                        // (1/pi)ln^2 N + (2/pi)lnN lnlnN - c lnN
double main_e_jn(double N, double g_integral);    // (1/2)ln^2 N + lnN lnlnN - c_j lnN
double cor_e_n(double N, double g_integral);      // ln^2 N + 2 lnN lnlnN - c lnN
double sum_ak_centering(double K);                // (1/log2)K lnK + (1/log2)(ln(pi/(2log2)) - gamma)K
double sum_r_ak_centering(double K);              // (pi^2/(12log2))K lnK - kappa'' K
double sum_ak_power_centering(double K, double p);// d_p K/2 | K lnK/log2 | 0
double p_sum_centering(double N, double p);   // 1{1<p<2} c_p lnN

struct Entry {
    std::string name;
    double value = 0;
    double error_estimate = 0;
    int route_count = 1;
};
std::vector<Entry> table();

} // namespace cotsum::constants

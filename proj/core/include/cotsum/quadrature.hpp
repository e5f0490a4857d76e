#pragma once

#include <array>
#include <cmath>
#include <functional>

namespace cotsum {

// Fixed-order Gauss-Legendre rule on [-1,1]; nodes found once by Newton on
// the Legendre polynomial.
template <int N>
struct GaussLegendre {
    std::array<double, N> x{}, w{};
    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (N + 0.5));
            double p0 = 0, p1 = 0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1; p1 = 0;
                for (int j = 0; j < N; ++j) {
                    double p2 = p1; p1 = p0;
                    p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
                }
                double dp = N * (t * p0 - p1) / (t * t - 1.0);
                double dt = p0 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            p1 = 0; p0 = 1;
            for (int j = 0; j < N; ++j) {
                double p2 = p1; p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            double dp = N * (t * p0 - p1) / (t * t - 1.0);
            x[i] = -t; x[N - 1 - i] = t;
            w[i] = w[N - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
    template <class F>
    double integrate(F&& f, double a, double b) const {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a), s = 0;
        for (int i = 0; i < N; ++i) s += w[i] * f(mid + half * x[i]);
        return s * half;
    }
};

inline const GaussLegendre<16>& gl16() { static GaussLegendre<16> g; return g; }
inline const GaussLegendre<32>& gl32() { static GaussLegendre<32> g; return g; }

// Gauss7/Kronrod15 pair for adaptive panels.
double gk15(const std::function<double(double)>& f, double a, double b, double& err);

// Adaptive integration on [a,b]; plain bisection on the G7K15 error estimate.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

// Double-exponential rule on (a,b] for integrable endpoint singularities at a.
double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                           double abs_tol);

// Composite: one fixed-order GL panel per unit interval [n, n+1), n = lo..hi-1.
template <class F>
double integrate_unit_intervals(F&& f, long lo, long hi) {
    const auto& g = gl16();
    double s = 0;
    for (long n = lo; n < hi; ++n) s += g.integrate(f, double(n), double(n + 1));
    return s;
}

} // namespace cotsum

#include "popdyn/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace popdyn {

namespace {

// ln(k!) - Stirling main term; lookup below 10, series tail above.
double stirling_tail(double k) {
    static const double table[] = {
        0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
        0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
        0.01189670994589177, 0.01041126526197209, 0.00925546218271273,
        0.00833056343336287,
    };
    if (k <= 9.0) return table[static_cast<int>(k)];
    const double kp1 = k + 1.0;
    const double kp1sq = kp1 * kp1;
    return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / 1260.0 / kp1sq) / kp1sq) / kp1;
}

// CDF walk; expected n*p + O(sqrt(n*p)) iterations, used when n*p < 10.
std::int64_t binomial_inversion(SplitMix64& rng, std::int64_t n, double p) {
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = static_cast<double>(n + 1) * s;
    double f = std::exp(static_cast<double>(n) * std::log1p(-p));
    double u = rng.next_double();
    std::int64_t k = 0;
    while (u > f) {
        u -= f;
        ++k;
        if (k > n) {  // guard against accumulated rounding in the tail
            k = 0;
            f = std::exp(static_cast<double>(n) * std::log1p(-p));
            u = rng.next_double();
            continue;
        }
        f *= a / static_cast<double>(k) - s;
    }
    return k;
}

// Hormann (1993) BTRS, valid for p <= 0.5 and n*p >= 10.
std::int64_t binomial_btrs(SplitMix64& rng, std::int64_t n, double p) {
    const double nd = static_cast<double>(n);
    const double stddev = std::sqrt(nd * p * (1.0 - p));
    const double b = 1.15 + 2.53 * stddev;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = nd * p + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double r = p / (1.0 - p);
    const double alpha = (2.83 + 5.1 / b) * stddev;
    const double m = std::floor((nd + 1.0) * p);

    for (;;) {
        const double u = rng.next_double() - 0.5;
        double v = rng.next_double();
        const double us = 0.5 - std::fabs(u);
        const double kd = std::floor((2.0 * a / us + b) * u + c);
        if (kd < 0.0 || kd > nd) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kd);

        v = std::log(v * alpha / (a / (us * us) + b));
        const double bound =
            (m + 0.5) * std::log((m + 1.0) / (r * (nd - m + 1.0))) +
            (nd + 1.0) * std::log((nd - m + 1.0) / (nd - kd + 1.0)) +
            (kd + 0.5) * std::log(r * (nd - kd + 1.0) / (kd + 1.0)) +
            stirling_tail(m) + stirling_tail(nd - m) - stirling_tail(kd) -
            stirling_tail(nd - kd);
        if (v <= bound) return static_cast<std::int64_t>(kd);
    }
}

}  // namespace

std::int64_t binomial(SplitMix64& rng, std::int64_t n, double p) {
    if (n < 0) throw std::invalid_argument("binomial needs n >= 0");
    if (std::isnan(p)) throw std::invalid_argument("binomial needs a valid probability");
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    if (p > 0.5) return n - binomial(rng, n, 1.0 - p);
    if (static_cast<double>(n) * p < 10.0) return binomial_inversion(rng, n, p);
    return binomial_btrs(rng, n, p);
}

}  // namespace popdyn

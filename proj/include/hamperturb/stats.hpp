#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hamperturb {

/// Single-pass mean and variance accumulator.
struct RunningStat {
    long long count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void add(double x) {
        ++count;
        double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double mean_stderr() const {
        return count > 0 ? stddev() / std::sqrt(static_cast<double>(count)) : 0.0;
    }
    double radius3() const { return 3.0 * mean_stderr(); }
};

inline double harmonic(int n) {
    double h = 0.0;
    for (int i = 1; i <= n; ++i) h += 1.0 / i;
    return h;
}

namespace numeric {

inline constexpr double eps = 3e-12;
inline constexpr double tiny = 1e-300;

inline double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

inline double beta_cf(double a, double b, double x) {
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace numeric

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return numeric::gamma_p_series(a, x);
    return 1.0 - numeric::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

/// Survival function of the chi-square distribution with df degrees.
inline double chi_square_sf(double x, int df) {
    if (df <= 0) throw std::invalid_argument("chi_square_sf: df <= 0");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

/// Regularized incomplete beta I_x(a, b).
inline double beta_inc(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0 || x < 0.0 || x > 1.0)
        throw std::invalid_argument("beta_inc: bad arguments");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                         b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * numeric::beta_cf(a, b, x) / a;
    return 1.0 - bt * numeric::beta_cf(b, a, 1.0 - x) / b;
}

struct BinomialCi {
    double lo = 0.0;
    double hi = 1.0;
};

/// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
/// proportion, by bisection on the incomplete beta.
inline BinomialCi clopper_pearson(long long k, long long n, double alpha = 0.05) {
    if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("clopper_pearson: bad counts");
    auto solve = [](double a, double b, double target) {
        double lo = 0.0, hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (beta_inc(a, b, mid) < target) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    BinomialCi ci;
    ci.lo = k == 0 ? 0.0
                   : solve(static_cast<double>(k), static_cast<double>(n - k + 1), alpha / 2.0);
    ci.hi = k == n ? 1.0
                   : solve(static_cast<double>(k + 1), static_cast<double>(n - k), 1.0 - alpha / 2.0);
    return ci;
}

/// Goodness-of-fit p-value for observed counts against expected counts.
inline double chi_square_gof_pvalue(const std::vector<long long>& observed,
                                    const std::vector<double>& expected) {
    if (observed.size() != expected.size() || observed.size() < 2)
        throw std::invalid_argument("chi_square_gof_pvalue: shape mismatch");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi_square_gof_pvalue: nonpositive expected");
        double d = static_cast<double>(observed[i]) - expected[i];
        stat += d * d / expected[i];
    }
    return chi_square_sf(stat, static_cast<int>(observed.size()) - 1);
}

} // namespace hamperturb

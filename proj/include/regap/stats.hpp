#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace regap {

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double beta_cf(double a, double b, double x) {
    const double tiny = 1e-30;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-12) break;
    }
    return h;
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_cf(a, b, x) / a;
    return 1.0 - front * detail::beta_cf(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a Student t statistic with df degrees of freedom.
inline double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_two_sided_p: df must be positive");
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

struct WelchResult {
    double t;
    double df;
    double p;  // two-sided
};

// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of freedom.
inline WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: need at least 2 samples per group");
    const auto mean_var = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double s2 = 0.0;
        for (double x : v) s2 += (x - m) * (x - m);
        s2 /= static_cast<double>(v.size() - 1);  // unbiased
        return std::pair{m, s2};
    };
    const auto [ma, va] = mean_var(a);
    const auto [mb, vb] = mean_var(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double sa = va / na;
    const double sb = vb / nb;
    if (sa + sb <= 0.0) {
        if (ma == mb) return {0.0, na + nb - 2.0, 1.0};
        throw std::invalid_argument("welch_t_test: both samples constant with different means");
    }
    const double t = (ma - mb) / std::sqrt(sa + sb);
    const double df = (sa + sb) * (sa + sb) /
                      (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    return {t, df, student_t_two_sided_p(t, df)};
}

}  // namespace regap

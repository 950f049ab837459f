#include "artcode/special_functions.hpp"

#include "artcode/error.hpp"

#include <cmath>
#include <limits>

namespace artcode {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        result *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return result;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double regularized_lower_gamma(double a, double x) {
    if (!(a > 0.0)) throw InvalidArgument("incomplete gamma needs a > 0");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) {
        // series representation
        double term = 1.0 / a, sum = term, ap = a;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * kEps) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    return 1.0 - regularized_upper_gamma(a, x);
}

double regularized_upper_gamma(double a, double x) {
    if (!(a > 0.0)) throw InvalidArgument("incomplete gamma needs a > 0");
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - regularized_lower_gamma(a, x);
    // continued fraction (modified Lentz)
    double b = x + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / b, result = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return result * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double f_survival(double f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw InvalidArgument("F distribution needs positive df");
    if (std::isinf(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

double t_survival_two_sided(double t, double df) {
    if (!(df > 0.0)) throw InvalidArgument("t distribution needs positive df");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double chi_squared_survival(double x, double df) {
    if (!(df > 0.0)) throw InvalidArgument("chi-squared needs positive df");
    if (std::isinf(x)) return 0.0;
    if (x <= 0.0) return 1.0;
    return regularized_upper_gamma(0.5 * df, 0.5 * x);
}

} // namespace artcode

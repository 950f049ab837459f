#pragma once

namespace artcode {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
/// absolute accuracy ~1e-14 for moderate parameters.
double regularized_incomplete_beta(double a, double b, double x);

/// Regularized lower/upper incomplete gamma P(a, x), Q(a, x) via series and
/// continued fraction.
double regularized_lower_gamma(double a, double x);
double regularized_upper_gamma(double a, double x);

/// P(F >= f) for an F distribution with (d1, d2) degrees of freedom.
double f_survival(double f, double d1, double d2);

/// Two-sided p-value P(|T| >= |t|) for Student's t with df degrees of freedom.
double t_survival_two_sided(double t, double df);

/// P(X >= x) for a chi-squared distribution with df degrees of freedom.
double chi_squared_survival(double x, double df);

} // namespace artcode

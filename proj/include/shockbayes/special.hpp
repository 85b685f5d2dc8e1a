#pragma once

namespace shockbayes {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation. All distribution quantiles below are built on this one
// primitive and its inverse.
double incomplete_beta(double a, double b, double x);

// Inverse of I_x(a, b) in x for p in [0, 1]. Newton iteration with a
// bisection safeguard, refined until |I_x - p| <= 1e-12.
double incomplete_beta_inv(double a, double b, double p);

// Student t.
double student_t_cdf(double x, double nu);
double student_t_pdf(double x, double nu);
double student_t_quantile(double p, double nu);

// Fisher F with d1 (positive integer in this codebase's usage) and d2 > 0.
double f_cdf(double x, double d1, double d2);
double f_quantile(double p, double d1, double d2);

// Inverse gamma density, shape a, scale b.
double inverse_gamma_pdf(double x, double a, double b);

}  // namespace shockbayes

#pragma once

namespace elastica {

/// Regularized incomplete beta I_x(a, b), by Lentz's continued fraction on
/// whichever of (x; a, b) or (1-x; b, a) converges faster.
double incomplete_beta(double a, double b, double x);

/// P(F > f) for F ~ F(d1, d2).
double f_survival(double f, double d1, double d2);

/// P(T <= t) for Student's t with `df` degrees of freedom.
double t_cdf(double t, double df);

/// Inverse of t_cdf, by bisection on t_cdf. Accurate to about 1e-12 in t.
double t_quantile(double q, double df);

}  // namespace elastica

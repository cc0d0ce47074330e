#pragma once

namespace erw::stats {

// Standard normal CDF.
double normal_cdf(double x);

// Complementary CDF of the Kolmogorov distribution,
//   Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2),
// the asymptotic p-value of the two-sided KS statistic at lambda = sqrt(n) D.
double kolmogorov_sf(double lambda);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x)
// (series expansion below a+1, Lentz continued fraction above).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with dof degrees.
double chi_square_sf(double x, int dof);

}  // namespace erw::stats

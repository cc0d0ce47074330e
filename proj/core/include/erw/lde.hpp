#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace erw::analytic {

// First-order linear difference equation x_{j+1} = a x_j + b_j, j >= 1, with
// x_1 given. solve_lde1 iterates exactly; the asymptote helpers give the
// stationary forms valid for |a| < 1.
std::vector<double> solve_lde1(double a, const std::vector<double>& b, double x1, long n);
std::vector<double> solve_lde1_const(double a, double b, double x1, long n);

// Stationary value b/(1-a) of x_{j+1} = a x_j + b; requires |a| < 1.
double lde1_fixed_point(double a, double b);

// Leading term b_{n-1}/(1-a) for power forcing b_j = b j^gamma; requires
// |a| < 1 and gamma > -1.
double lde1_asymptote_power(double a, double b, double gamma, long n);

// Second-order equation x_{j+1} = a x_j + b x_{j-1} + d_{j}, j >= 2, with
// x_1, x_2 given. Iteration is unconditional; the characteristic-root form
// needs a^2 + 4b != 0.
struct Lde2Roots {
    std::complex<double> lambda1, lambda2;
    double spectral_radius() const;
};

std::vector<double> solve_lde2(double a, double b, const std::vector<double>& d, double x1,
                               double x2, long n);
std::vector<double> solve_lde2_const(double a, double b, double d, double x1, double x2, long n);

// Roots (a +- sqrt(a^2+4b)) / 2; throws std::invalid_argument at the double
// root a^2 + 4b = 0 where the form degenerates.
Lde2Roots lde2_roots(double a, double b);

// Particular solution d/(1-a-b) for constant forcing; requires a + b != 1.
double lde2_fixed_point(double a, double b, double d);

// Closed form c1 l1^j + c2 l2^j + y fitted to x_1, x_2 (y = particular
// solution, 0 for the homogeneous case). Complex root pairs recombine to a
// real value; the imaginary residue stays at rounding level.
double lde2_closed_form(double a, double b, double d, double x1, double x2, long j);

}  // namespace erw::analytic

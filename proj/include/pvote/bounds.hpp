#pragma once

// The constants gamma_mid / gamma_out derived from a pairwise-probability
// function, and every closed-form distortion bound built on them.

#include <string>

#include "pvote/gfunction.hpp"

namespace pvote {

struct DerivedConstants {
  double gamma_mid = 0.0;   // sup_{x in (0,1)}  g(x/(1-x)) / x
  double gamma_out = 0.0;   // sup_{x in (0,inf)} g(x/(1+x)) / x
  double x_star_mid = 0.0;  // unique interior maximizer of the mid ratio
  double x_star_out = 0.0;  // unique interior maximizer of the out ratio
  std::string g_name;
};

// Golden-section search for both maximizers; requires g to pass check_shape.
DerivedConstants compute_constants(const GFunction& g);

// The zero-randomness limit exposed explicitly: (gamma_mid, gamma_out) = (2, 0).
DerivedConstants deterministic_limit_constants();

// Stationarity residual |x g_branch'(x) - g_branch(x)| at the two maximizers.
double stationarity_residual_mid(const GFunction& g, const DerivedConstants& c);
double stationarity_residual_out(const GFunction& g, const DerivedConstants& c);

// r with g(r) = t; closed form for PL, bisection otherwise.
double g_inverse(const GFunction& g, double t);

// Plurality, large elections: max(m*gamma_mid - 1, m*gamma_out + 1).
double plurality_bound_limit(int m, const DerivedConstants& c);
// Plurality, finite n >= m^2, any eps in (0, 1/2).
double plurality_bound_finite(double n, int m, double eps, const DerivedConstants& c);

// Copeland, large elections: max((2 gamma_mid - 1)^2, (2 gamma_out + 1)^2).
double copeland_bound_limit(const DerivedConstants& c);
// Copeland, finite n >= 4.
double copeland_bound_finite(double n, int m, double eps, const DerivedConstants& c);

// WeightedUncovered, large elections, lambda in [0.5, 1] (golden ratio default).
double wu_bound_limit(const DerivedConstants& c, double lambda = 0.61803398874989484820);

// RandomDictator upper bound (m-1) gamma_mid + 1.
double rd_upper_bound(int m, const DerivedConstants& c);
// RandomDictator adversarial lower bound 2 + 1/g^-1(1/(m-1)) - 2/n, m >= 3, n >= 2.
double rd_lower_bound(int m, double n, const GFunction& g);
double rd_lower_bound_limit(int m, const GFunction& g);
// RandomDictator lower bound under PL: 1 + (m-1)^(1/theta) / 2.
double rd_lower_bound_pl(int m, double theta);

// Borda distortion order under PL: m^max(1 - 2/theta, 0).
double borda_order(int m, double theta);

// Any well-behaved deterministic rule: max(2 gamma_mid - 1, 2 gamma_out + 1).
double generic_det_lower(const DerivedConstants& c);

}  // namespace pvote

#pragma once

// Pairwise-order probability functions g: ratio of distances -> [0,1].
// The Plackett-Luce family g(r) = 1/(1 + r^-theta) is the built-in member;
// custom functions can be supplied with optional analytic derivative/inverse.

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace pvote {

class GFunction {
 public:
  using Eval = std::function<double(double)>;

  static GFunction plackett_luce(double theta);
  static GFunction custom(std::string name, Eval eval, Eval deriv = nullptr,
                          Eval inverse = nullptr);

  // g(r) for r in [0, +inf]; g(0)=0, g(+inf)=1.
  double operator()(double r) const;
  // g'(r), analytic when available, otherwise central difference with h=1e-6.
  double derivative(double r) const;
  // r with g(r)=t for t in (0,1); closed form for PL, bisection otherwise.
  double inverse(double t) const;
  bool has_closed_inverse() const;

  // g(x/(1-x)) on [0,1) and g(x/(1+x)) on [0,inf).
  double mid(double x) const;
  double out(double x) const;
  double mid_derivative(double x) const;
  double out_derivative(double x) const;

  bool is_pl() const { return is_pl_; }
  double theta() const { return theta_; }
  const std::string& name() const { return name_; }

 private:
  GFunction() = default;
  bool is_pl_ = false;
  double theta_ = std::numeric_limits<double>::quiet_NaN();
  std::string name_;
  Eval eval_, deriv_, inverse_;
};

// Numerical check of the defining properties of the function class
// (value at zero, strict monotonicity, complementarity g(r)+g(1/r)=1,
// convex/concave structure of the mid and out transforms) on fixed grids.
struct ShapeReport {
  bool ok = false;
  bool zero_ok = false;
  bool increasing_ok = false;
  bool complement_ok = false;
  bool mid_shape_ok = false;  // convex on (0,1/2), concave on (1/2,1)
  bool out_shape_ok = false;  // single convex->concave switch on (0,inf)
  double max_complement_err = 0.0;
};

ShapeReport check_shape(const GFunction& g);

// Grid used by shape and axiom checks: log-spaced ratios.
std::vector<double> shape_check_grid();  // 512 points on [1e-4, 1e4]

}  // namespace pvote

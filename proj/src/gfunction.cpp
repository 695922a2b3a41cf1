#include "pvote/gfunction.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pvote {

namespace {

double logistic(double t) {
  // 1 / (1 + e^-t) without overflow.
  if (t >= 0.0) {
    return 1.0 / (1.0 + std::exp(-t));
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// g(r) = 1/(1 + r^-theta) = logistic(theta * ln r).
double pl_eval(double theta, double r) {
  if (r == 0.0) return 0.0;
  if (std::isinf(r)) return 1.0;
  return logistic(theta * std::log(r));
}

double pl_deriv(double theta, double r) {
  if (r <= 0.0 || std::isinf(r)) return 0.0;
  const double t = theta * std::log(r);
  const double s = logistic(t);
  return theta / r * s * (1.0 - s);
}

}  // namespace

GFunction GFunction::plackett_luce(double theta) {
  if (!(theta > 1.0)) throw std::invalid_argument("PL requires theta > 1");
  GFunction g;
  g.is_pl_ = true;
  g.theta_ = theta;
  g.name_ = "pl(theta=" + std::to_string(theta) + ")";
  return g;
}

GFunction GFunction::custom(std::string name, Eval eval, Eval deriv, Eval inverse) {
  if (!eval) throw std::invalid_argument("custom g needs an eval function");
  GFunction g;
  g.name_ = std::move(name);
  g.eval_ = std::move(eval);
  g.deriv_ = std::move(deriv);
  g.inverse_ = std::move(inverse);
  return g;
}

double GFunction::operator()(double r) const {
  if (r < 0.0) throw std::invalid_argument("g is defined on nonnegative ratios");
  if (is_pl_) return pl_eval(theta_, r);
  if (r == 0.0) return 0.0;
  if (std::isinf(r)) return 1.0;
  return eval_(r);
}

double GFunction::derivative(double r) const {
  if (is_pl_) return pl_deriv(theta_, r);
  if (deriv_) return deriv_(r);
  const double h = 1e-6;
  const double lo = r > h ? r - h : 0.0;
  return ((*this)(r + h) - (*this)(lo)) / (r + h - lo);
}

bool GFunction::has_closed_inverse() const { return is_pl_ || static_cast<bool>(inverse_); }

double GFunction::inverse(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("g inverse requires t in (0,1)");
  if (is_pl_) return std::pow(t / (1.0 - t), 1.0 / theta_);
  if (inverse_) return inverse_(t);
  // Bisection in log space on the monotone g.
  double lo = -64.0, hi = 64.0;  // ln r bracket, expanded if needed
  while ((*this)(std::exp(lo)) > t && lo > -700.0) lo -= 64.0;
  while ((*this)(std::exp(hi)) < t && hi < 700.0) hi += 64.0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (lo + hi);
    if ((*this)(std::exp(m)) < t) {
      lo = m;
    } else {
      hi = m;
    }
  }
  const double r = std::exp(0.5 * (lo + hi));
  if (std::fabs((*this)(r)-t) > 1e-12) throw std::runtime_error("g inverse failed to converge");
  return r;
}

double GFunction::mid(double x) const {
  if (x < 0.0 || x >= 1.0) throw std::domain_error("mid transform needs x in [0,1)");
  if (x == 0.0) return 0.0;
  if (is_pl_) return logistic(theta_ * (std::log(x) - std::log1p(-x)));
  return (*this)(x / (1.0 - x));
}

double GFunction::out(double x) const {
  if (x < 0.0) throw std::domain_error("out transform needs x >= 0");
  if (x == 0.0) return 0.0;
  if (is_pl_) return logistic(theta_ * (std::log(x) - std::log1p(x)));
  return (*this)(x / (1.0 + x));
}

double GFunction::mid_derivative(double x) const {
  const double u = 1.0 - x;
  return derivative(x / u) / (u * u);
}

double GFunction::out_derivative(double x) const {
  const double u = 1.0 + x;
  return derivative(x / u) / (u * u);
}

std::vector<double> shape_check_grid() {
  constexpr int kPoints = 512;
  std::vector<double> grid(kPoints);
  const double lo = std::log(1e-4), hi = std::log(1e4);
  for (int i = 0; i < kPoints; ++i) {
    grid[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (kPoints - 1));
  }
  return grid;
}

namespace {

// Divided second difference on three abscissae.
double second_difference(double x0, double f0, double x1, double f1, double x2, double f2) {
  return ((f2 - f1) / (x2 - x1) - (f1 - f0) / (x1 - x0)) / (x2 - x0);
}

}  // namespace

ShapeReport check_shape(const GFunction& g) {
  ShapeReport rep;
  rep.zero_ok = g(0.0) == 0.0 && g(std::numeric_limits<double>::infinity()) == 1.0;

  const auto grid = shape_check_grid();
  rep.increasing_ok = true;
  rep.complement_ok = true;
  int interior_points = 0;
  double prev = g(grid.front());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = g(grid[i]);
    if (v > 0.01 && v < 0.99) ++interior_points;
    if (i > 0) {
      // Plateaus where both values sit at a double-saturated extreme are
      // representation artifacts (steep g at large theta), not violations.
      const bool saturated = (v >= 1.0 - 1e-9 && prev >= 1.0 - 1e-9) || (v <= 1e-9 && prev <= 1e-9);
      if (!saturated && v <= prev) rep.increasing_ok = false;
      prev = v;
    }
    const double err = std::fabs(v + g(1.0 / grid[i]) - 1.0);
    rep.max_complement_err = std::max(rep.max_complement_err, err);
  }
  // A continuous strictly increasing g must actually cross the interior;
  // a jump function never shows intermediate values.
  if (interior_points < 3) rep.increasing_ok = false;
  rep.complement_ok = rep.max_complement_err <= 1e-12;

  // mid transform: convex on (0, 1/2), concave on (1/2, 1).
  {
    constexpr int kPts = 512;
    std::vector<double> xs(kPts), fs(kPts);
    for (int i = 0; i < kPts; ++i) {
      xs[static_cast<std::size_t>(i)] = (i + 1.0) / (kPts + 1.0);
      fs[static_cast<std::size_t>(i)] = g.mid(xs[static_cast<std::size_t>(i)]);
    }
    rep.mid_shape_ok = true;
    for (int i = 1; i + 1 < kPts; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double d2 =
          second_difference(xs[k - 1], fs[k - 1], xs[k], fs[k], xs[k + 1], fs[k + 1]);
      if (std::fabs(d2) <= 1e-9) continue;  // flat within noise
      if (xs[k + 1] <= 0.5 && d2 < 0.0) rep.mid_shape_ok = false;
      if (xs[k - 1] >= 0.5 && d2 > 0.0) rep.mid_shape_ok = false;
    }
  }

  // out transform: a single convex -> concave switch.
  {
    const auto xs = shape_check_grid();
    bool seen_negative = false;
    rep.out_shape_ok = true;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      const double d2 = second_difference(xs[i - 1], g.out(xs[i - 1]), xs[i], g.out(xs[i]),
                                          xs[i + 1], g.out(xs[i + 1]));
      if (std::fabs(d2) <= 1e-12) continue;
      if (d2 < 0.0) {
        seen_negative = true;
      } else if (seen_negative) {
        rep.out_shape_ok = false;  // went back to convex after the switch
      }
    }
  }

  rep.ok = rep.zero_ok && rep.increasing_ok && rep.complement_ok && rep.mid_shape_ok &&
           rep.out_shape_ok;
  return rep;
}

}  // namespace pvote

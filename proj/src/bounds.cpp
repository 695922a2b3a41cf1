#include "pvote/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace pvote {

namespace {

// Golden-section maximization of a unimodal f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double inv_phi = 0.6180339887498949;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 300 && (d - c) > 1e-13; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

void check_constants(const DerivedConstants& c) {
  if (!(c.gamma_mid > 0.0) || !(c.gamma_out >= 0.0)) {
    throw std::invalid_argument("invalid derived constants");
  }
}

double finite_n_inflation(double n, double eps) {
  // 1 / (1 - n^-(1/2 - eps))
  const double shrink = std::pow(n, -(0.5 - eps));
  if (shrink >= 1.0) throw std::domain_error("n too small for the finite-n bound");
  return 1.0 / (1.0 - shrink);
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("eps must be in (0, 1/2)");
}

}  // namespace

namespace {

// Golden section places the maximizer only to about sqrt(machine epsilon);
// polish it by bisecting the stationarity function x b'(x) - b(x), which
// decreases through zero at the maximizer.
double polish_maximizer(const std::function<double(double)>& stationarity, double x,
                        double upper_limit) {
  double gap = std::max(1e-7 * x, 1e-12);
  double lo = std::max(x - gap, 0.25 * x);
  double hi = std::min(x + gap, upper_limit);
  for (int tries = 0; tries < 60 && stationarity(lo) <= 0.0; ++tries) {
    gap *= 2.0;
    lo = std::max(lo - gap, 1e-15);
  }
  for (int tries = 0; tries < 60 && stationarity(hi) >= 0.0; ++tries) {
    gap *= 2.0;
    hi = std::min(hi + gap, upper_limit);
    if (hi >= upper_limit) break;
  }
  if (!(stationarity(lo) > 0.0 && stationarity(hi) < 0.0)) return x;  // keep the golden point
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (stationarity(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DerivedConstants compute_constants(const GFunction& g) {
  const ShapeReport shape = check_shape(g);
  if (!shape.ok) {
    throw std::domain_error("g failed the function-class shape checks: " + g.name());
  }
  DerivedConstants c;
  c.g_name = g.name();

  const double mid_seed = golden_max([&](double x) { return g.mid(x) / x; }, 1e-9, 1.0 - 1e-9);
  c.x_star_mid = polish_maximizer(
      [&](double x) { return x * g.mid_derivative(x) - g.mid(x); }, mid_seed, 1.0 - 1e-12);
  c.gamma_mid = g.mid(c.x_star_mid) / c.x_star_mid;

  // out ratio on (0, inf), reparameterized by x = u/(1-u) to bound the search.
  const double u_star = golden_max(
      [&](double u) {
        const double x = u / (1.0 - u);
        return g.out(x) / x;
      },
      1e-9, 1.0 - 1e-9);
  const double out_seed = u_star / (1.0 - u_star);
  c.x_star_out = polish_maximizer(
      [&](double x) { return x * g.out_derivative(x) - g.out(x); }, out_seed, 1e12);
  c.gamma_out = g.out(c.x_star_out) / c.x_star_out;
  return c;
}

DerivedConstants deterministic_limit_constants() {
  DerivedConstants c;
  c.gamma_mid = 2.0;
  c.gamma_out = 0.0;
  c.x_star_mid = 0.5;  // limit of the mid maximizer
  c.x_star_out = std::numeric_limits<double>::infinity();
  c.g_name = "deterministic_limit";
  return c;
}

double stationarity_residual_mid(const GFunction& g, const DerivedConstants& c) {
  return std::fabs(c.x_star_mid * g.mid_derivative(c.x_star_mid) - g.mid(c.x_star_mid));
}

double stationarity_residual_out(const GFunction& g, const DerivedConstants& c) {
  return std::fabs(c.x_star_out * g.out_derivative(c.x_star_out) - g.out(c.x_star_out));
}

double g_inverse(const GFunction& g, double t) { return g.inverse(t); }

double plurality_bound_limit(int m, const DerivedConstants& c) {
  if (m < 2) throw std::domain_error("need m >= 2");
  check_constants(c);
  return std::max(m * c.gamma_mid - 1.0, m * c.gamma_out + 1.0);
}

double plurality_bound_finite(double n, int m, double eps, const DerivedConstants& c) {
  if (m < 2) throw std::domain_error("need m >= 2");
  check_eps(eps);
  if (!(n >= static_cast<double>(m) * m)) throw std::domain_error("need n >= m^2");
  check_constants(c);
  const double md = m;
  const double expo =
      (-std::pow(n, 0.5 + eps) + 2.0 * md) / ((2.0 * std::pow(n, 0.5 - eps) - 1.0) * md);
  const double tail = md * (md - 1.0) * (c.gamma_mid + c.gamma_out) * std::exp(expo);
  const double inflation = finite_n_inflation(n, eps);
  return tail +
         std::max(md * c.gamma_mid * inflation - 1.0, md * c.gamma_out * inflation + 1.0);
}

double copeland_bound_limit(const DerivedConstants& c) {
  check_constants(c);
  const double mid = 2.0 * c.gamma_mid - 1.0;
  const double out = 2.0 * c.gamma_out + 1.0;
  return std::max(mid * mid, out * out);
}

double copeland_bound_finite(double n, int m, double eps, const DerivedConstants& c) {
  if (m < 2) throw std::domain_error("need m >= 2");
  check_eps(eps);
  if (!(n >= 4.0)) throw std::domain_error("need n >= 4");
  check_constants(c);
  const double md = m;
  const double expo = (-std::pow(n, 0.5 + eps) + 8.0) / (2.0 * (2.0 * std::pow(n, 0.5 - eps) - 1.0));
  const double sum = c.gamma_mid + c.gamma_out;
  const double tail = 4.0 * md * (md - 1.0) * std::exp(expo) * sum * sum;
  const double inflation = finite_n_inflation(n, eps);
  const double mid = 2.0 * c.gamma_mid * inflation - 1.0;
  const double out = 2.0 * c.gamma_out * inflation + 1.0;
  return tail + std::max(mid * mid, out * out);
}

double wu_bound_limit(const DerivedConstants& c, double lambda) {
  if (lambda < 0.5 || lambda > 1.0) throw std::domain_error("lambda must be in [0.5, 1]");
  check_constants(c);
  const double mid = (c.gamma_mid / (1.0 - lambda) - 1.0) * (c.gamma_mid / lambda - 1.0);
  const double out = (c.gamma_out / (1.0 - lambda) + 1.0) * (c.gamma_out / lambda + 1.0);
  return std::max(mid, out);
}

double rd_upper_bound(int m, const DerivedConstants& c) {
  if (m < 2) throw std::domain_error("need m >= 2");
  check_constants(c);
  return (m - 1.0) * c.gamma_mid + 1.0;
}

double rd_lower_bound(int m, double n, const GFunction& g) {
  if (m < 3) throw std::domain_error("need m >= 3");
  if (!(n >= 2.0)) throw std::domain_error("need n >= 2");
  return 2.0 + 1.0 / g_inverse(g, 1.0 / (m - 1.0)) - 2.0 / n;
}

double rd_lower_bound_limit(int m, const GFunction& g) {
  if (m < 3) throw std::domain_error("need m >= 3");
  return 2.0 + 1.0 / g_inverse(g, 1.0 / (m - 1.0));
}

double rd_lower_bound_pl(int m, double theta) {
  if (m < 2) throw std::domain_error("need m >= 2");
  if (!(theta > 1.0)) throw std::domain_error("need theta > 1");
  return 1.0 + std::pow(m - 1.0, 1.0 / theta) / 2.0;
}

double borda_order(int m, double theta) {
  if (m < 2) throw std::domain_error("need m >= 2");
  if (!(theta > 1.0)) throw std::domain_error("need theta > 1");
  return std::pow(m, std::max(1.0 - 2.0 / theta, 0.0));
}

double generic_det_lower(const DerivedConstants& c) {
  check_constants(c);
  return std::max(2.0 * c.gamma_mid - 1.0, 2.0 * c.gamma_out + 1.0);
}

}  // namespace pvote

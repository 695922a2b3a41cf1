#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "pvote/bounds.hpp"

using namespace pvote;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kGammaMid2 = (kSqrt2 + 1.0) / 2.0;  // theta = 2 closed form
constexpr double kGammaOut2 = (kSqrt2 - 1.0) / 2.0;

// Independent oracle: dense scan of the branch ratio.
double scan_max_mid(const GFunction& g) {
  double best = 0.0;
  constexpr int kPts = 200000;
  for (int i = 1; i < kPts; ++i) {
    const double x = static_cast<double>(i) / kPts;
    best = std::max(best, g.mid(x) / x);
  }
  return best;
}

double scan_max_out(const GFunction& g) {
  double best = 0.0;
  constexpr int kPts = 200000;
  for (int i = 1; i < kPts; ++i) {
    const double u = static_cast<double>(i) / kPts;
    const double x = u / (1.0 - u);
    best = std::max(best, g.out(x) / x);
  }
  return best;
}

}  // namespace

TEST_SUITE("bounds_constants") {

TEST_CASE("constants at theta = 2 match the closed forms") {
  const auto c = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(c.gamma_mid == doctest::Approx(kGammaMid2).epsilon(1e-9));
  CHECK(c.gamma_out == doctest::Approx(kGammaOut2).epsilon(1e-9));
  CHECK(c.x_star_mid == doctest::Approx(1.0 / kSqrt2).epsilon(1e-6));
  CHECK(c.x_star_out == doctest::Approx(1.0 / kSqrt2).epsilon(1e-6));
}

TEST_CASE("golden section agrees with a dense scan at theta = 4") {
  const auto g = GFunction::plackett_luce(4.0);
  const auto c = compute_constants(g);
  CHECK(c.gamma_mid == doctest::Approx(scan_max_mid(g)).epsilon(1e-8));
  CHECK(c.gamma_out == doctest::Approx(scan_max_out(g)).epsilon(1e-8));
  CHECK(c.gamma_mid == doctest::Approx(1.42).epsilon(0.01));
}

TEST_CASE("first-order conditions hold at both maximizers") {
  for (const double theta : {1.5, 2.0, 4.0, 8.0, 64.0}) {
    const auto g = GFunction::plackett_luce(theta);
    const auto c = compute_constants(g);
    CAPTURE(theta);
    CHECK(stationarity_residual_mid(g, c) <= 1e-9);
    CHECK(stationarity_residual_out(g, c) <= 1e-9);
  }
}

TEST_CASE("gamma monotonicity and limits over the theta grid") {
  double prev_mid = 0.0, prev_out = 10.0;
  DerivedConstants last;
  for (int i = 0; i <= 16; ++i) {
    const double theta = 1.1 * std::pow(64.0 / 1.1, i / 16.0);
    const auto c = compute_constants(GFunction::plackett_luce(theta));
    CAPTURE(theta);
    CHECK(c.gamma_mid >= 1.0);
    CHECK(c.gamma_mid >= prev_mid - 1e-9);
    CHECK(c.gamma_out <= prev_out + 1e-9);
    if (theta >= 2.0) CHECK(c.gamma_out <= c.gamma_mid - 1.0 + 1e-9);
    prev_mid = c.gamma_mid;
    prev_out = c.gamma_out;
    last = c;
  }
  // gamma_mid(64) = 1.9121: the deterministic limit 2 is approached slowly.
  CHECK(std::fabs(last.gamma_mid - 2.0) <= 0.1);
  CHECK(last.gamma_out <= 0.05);
}

TEST_CASE("custom g with numeric derivative matches the PL constants") {
  const auto custom = GFunction::custom(
      "pl2-custom", [](double r) { return 1.0 / (1.0 + std::pow(r, -2.0)); });
  const auto cc = compute_constants(custom);
  const auto cp = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(cc.gamma_mid == doctest::Approx(cp.gamma_mid).epsilon(1e-8));
  CHECK(cc.gamma_out == doctest::Approx(cp.gamma_out).epsilon(1e-8));
  CHECK(cc.x_star_mid == doctest::Approx(cp.x_star_mid).epsilon(1e-5));
  CHECK(cc.x_star_out == doctest::Approx(cp.x_star_out).epsilon(1e-5));
}

TEST_CASE("repeated computation is bit-identical") {
  const auto a = compute_constants(GFunction::plackett_luce(3.3));
  const auto b = compute_constants(GFunction::plackett_luce(3.3));
  CHECK(a.gamma_mid == b.gamma_mid);
  CHECK(a.gamma_out == b.gamma_out);
  CHECK(a.x_star_mid == b.x_star_mid);
  CHECK(a.x_star_out == b.x_star_out);
}

TEST_CASE("g inverse identities") {
  const auto g = GFunction::plackett_luce(2.0);
  CHECK(g_inverse(g, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g_inverse(g, 0.2) == doctest::Approx(0.5).epsilon(1e-12));
  for (const int m : {3, 5, 11}) {
    for (const double theta : {1.5, 2.0, 4.0}) {
      const auto gt = GFunction::plackett_luce(theta);
      CHECK(g_inverse(gt, 1.0 / (m - 1.0)) ==
            doctest::Approx(std::pow(m - 2.0, -1.0 / theta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("plurality bound") {
  const auto det = deterministic_limit_constants();
  CHECK(plurality_bound_limit(2, det) == doctest::Approx(3.0));
  const auto c2 = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(plurality_bound_limit(5, c2) == doctest::Approx(5.0 * kGammaMid2 - 1.0).epsilon(1e-9));
  CHECK(plurality_bound_limit(2, c2) == doctest::Approx(kSqrt2).epsilon(1e-9));
}

TEST_CASE("plurality finite-n bound recovers the limit and is monotone") {
  const auto c = compute_constants(GFunction::plackett_luce(2.0));
  const double limit = plurality_bound_limit(3, c);
  CHECK(std::fabs(plurality_bound_finite(1e10, 3, 0.1, c) - limit) <= 1e-3);

  double prev = plurality_bound_finite(9.0, 3, 0.1, c);
  CHECK(std::isfinite(prev));  // n = m^2 boundary
  for (const double n : {20.0, 100.0, 1e4, 1e6, 1e8}) {
    const double v = plurality_bound_finite(n, 3, 0.1, c);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK_THROWS_AS(plurality_bound_finite(8.0, 3, 0.1, c), std::domain_error);
  CHECK_THROWS_AS(plurality_bound_finite(100.0, 3, 0.6, c), std::domain_error);
}

TEST_CASE("copeland bound") {
  const auto c2 = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(copeland_bound_limit(c2) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(copeland_bound_limit(deterministic_limit_constants()) == doctest::Approx(9.0));
  const auto c4 = compute_constants(GFunction::plackett_luce(4.0));
  CHECK(copeland_bound_limit(c4) == doctest::Approx(3.39).epsilon(0.004));

  CHECK(std::fabs(copeland_bound_finite(1e10, 5, 0.1, c2) - 2.0) <= 1e-3);
  CHECK(std::isfinite(copeland_bound_finite(4.0, 5, 0.1, c2)));
  for (const double n : {4.0, 10.0, 100.0, 1e4, 1e8}) {
    CHECK(copeland_bound_finite(n, 5, 0.1, c2) >= copeland_bound_limit(c2));
  }
  CHECK_THROWS_AS(copeland_bound_finite(3.0, 5, 0.1, c2), std::domain_error);
}

TEST_CASE("weighted uncovered bound") {
  const auto c2 = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(wu_bound_limit(c2) == doctest::Approx(2.059).epsilon(1e-3));
  CHECK(wu_bound_limit(c2, 0.5) == doctest::Approx(copeland_bound_limit(c2)).epsilon(1e-12));
  CHECK_THROWS_AS(wu_bound_limit(c2, 0.2), std::domain_error);

  // Monotone in gamma_mid when the mid branch is active.
  DerivedConstants c = c2;
  double prev = 0.0;
  for (double gm = 1.2; gm <= 2.0; gm += 0.1) {
    c.gamma_mid = gm;
    const double v = wu_bound_limit(c);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("random dictator bounds") {
  CHECK(rd_upper_bound(2, deterministic_limit_constants()) == doctest::Approx(3.0));
  const auto c2 = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(rd_upper_bound(5, c2) == doctest::Approx(4.0 * kGammaMid2 + 1.0).epsilon(1e-9));
  CHECK(rd_upper_bound(2, c2) == doctest::Approx(kGammaMid2 + 1.0).epsilon(1e-9));

  const auto g2 = GFunction::plackett_luce(2.0);
  CHECK(rd_lower_bound(3, 100.0, g2) == doctest::Approx(2.98).epsilon(1e-12));
  CHECK(rd_lower_bound_limit(11, g2) == doctest::Approx(5.0).epsilon(1e-12));
  for (const int m : {3, 5, 20}) {
    CHECK(rd_lower_bound_limit(m, g2) ==
          doctest::Approx(2.0 + std::pow(m - 2.0, 0.5)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rd_lower_bound(2, 100.0, g2), std::domain_error);
  CHECK_THROWS_AS(rd_lower_bound(3, 1.0, g2), std::domain_error);

  CHECK(rd_lower_bound_pl(2, 2.0) == doctest::Approx(1.5));
  CHECK(rd_lower_bound_pl(2, 17.0) == doctest::Approx(1.5));
  CHECK(rd_lower_bound_pl(101, 2.0) == doctest::Approx(6.0).epsilon(1e-12));
  double prev = 0.0;
  for (const int m : {3, 10, 50, 200}) {
    const double v = rd_lower_bound_pl(m, 2.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(rd_lower_bound_pl(50, 2.0) > rd_lower_bound_pl(50, 4.0));
}

TEST_CASE("borda order") {
  CHECK(borda_order(7, 1.5) == doctest::Approx(1.0));
  CHECK(borda_order(1000, 2.0) == doctest::Approx(1.0));
  CHECK(borda_order(100, 4.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(borda_order(64, 1e9) == doctest::Approx(64.0).epsilon(1e-6));
}

TEST_CASE("generic deterministic lower bound") {
  const auto c2 = compute_constants(GFunction::plackett_luce(2.0));
  CHECK(generic_det_lower(c2) == doctest::Approx(kSqrt2).epsilon(1e-9));
  CHECK(generic_det_lower(deterministic_limit_constants()) == doctest::Approx(3.0));
  for (const double theta : {1.5, 2.0, 4.0}) {
    const auto c = compute_constants(GFunction::plackett_luce(theta));
    CHECK(generic_det_lower(c) == doctest::Approx(plurality_bound_limit(2, c)).epsilon(1e-12));
  }
}

}  // TEST_SUITE

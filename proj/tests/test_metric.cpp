#include "doctest.h"

#include <stdexcept>

#include <cmath>

#include "pvote/constructions.hpp"
#include "pvote/metric.hpp"
#include "pvote/models.hpp"

using namespace pvote;

TEST_SUITE("metric_core") {

TEST_CASE("euclidean instances always validate") {
  const auto inst = MetricInstance::euclidean(1, {{0.0}, {1.0}, {0.25}}, {{0.0}, {1.0}});
  const auto report = validate_metric(inst);
  CHECK(report.ok);

  RngStream rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::vector<double>> voters, cands;
    for (int i = 0; i < 6; ++i) voters.push_back({rng.next_double(), rng.next_double()});
    for (int j = 0; j < 4; ++j) cands.push_back({rng.next_double(), rng.next_double()});
    CHECK(validate_metric(MetricInstance::euclidean(2, voters, cands)).ok);
  }
}

TEST_CASE("triangle violation is reported, not thrown") {
  // d(a,b)=1, d(b,c)=1, d(a,c)=3 violates d(a,c) <= d(a,b)+d(b,c).
  const std::vector<double> dist{0, 1, 3,  //
                                 1, 0, 1,  //
                                 3, 1, 0};
  const auto inst = MetricInstance::from_matrix(1, 2, dist);
  const auto report = validate_metric(inst);
  CHECK_FALSE(report.ok);
  CHECK(report.violation_count > 0);
  bool found = false;
  for (const auto& v : report.violations) {
    if ((v.x == 0 && v.z == 2) || (v.x == 2 && v.z == 0)) found = true;
  }
  CHECK(found);
}

TEST_CASE("uniform explicit metric validates") {
  const std::vector<double> dist{0, 1, 1,  //
                                 1, 0, 1,  //
                                 1, 1, 0};
  CHECK(validate_metric(MetricInstance::from_matrix(1, 2, dist)).ok);
}

TEST_CASE("structural problems are flagged") {
  const std::vector<double> asym{0, 1, 2,  //
                                 1, 0, 1,  //
                                 1, 1, 0};
  const auto report = validate_metric(MetricInstance::from_matrix(1, 2, asym));
  CHECK_FALSE(report.ok);
  CHECK_FALSE(report.structural.empty());
}

TEST_CASE("dimension mismatches throw") {
  CHECK_THROWS_AS(MetricInstance::from_matrix(1, 2, std::vector<double>(4, 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(MetricInstance::euclidean(2, {{0.0}}, {{0.0, 0.0}, {1.0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MetricInstance::euclidean(4, {{0, 0, 0, 0}}, {{0, 0, 0, 0}, {1, 0, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("social cost") {
  const auto coincident = MetricInstance::euclidean(
      1, {{0.5}, {0.5}, {0.5}, {0.5}, {0.5}}, {{0.5}, {2.0}});
  CHECK(social_cost(coincident, 0) == 0.0);

  const auto inst = MetricInstance::euclidean(1, {{0.0}, {0.0}, {0.25}}, {{1.0}, {0.0}});
  CHECK(social_cost(inst, 0) == doctest::Approx(2.75).epsilon(1e-12));
  CHECK_THROWS_AS(social_cost(inst, 5), std::out_of_range);
}

TEST_CASE("social cost of the rd lower-bound geometry") {
  // theta=2, m=3: g(1) = 1/2 so g^-1(1/2) = 1 and x_tilde = 1/2.
  const auto e = gen_rd_lb(3, 100, GFunction::plackett_luce(2.0));
  CHECK(social_cost(e.instance, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(social_cost(e.instance, 1) == doctest::Approx(99.5).epsilon(1e-12));
}

TEST_CASE("optimal candidate with lexicographic ties") {
  const auto inst = MetricInstance::euclidean(1, {{0.0}, {0.0}}, {{0.0}, {1.0}});
  const auto table = optimal_candidate(inst);
  CHECK(table.opt_index == 0);
  CHECK(table.costs[0] == 0.0);
  CHECK(table.costs[1] == 2.0);

  const std::vector<double> uniform{0, 1, 1, 1,  //
                                    1, 0, 1, 1,  //
                                    1, 1, 0, 1,  //
                                    1, 1, 1, 0};
  CHECK(optimal_candidate(MetricInstance::from_matrix(1, 3, uniform)).opt_index == 0);
}

TEST_CASE("borda lower-bound geometry makes the origin optimal") {
  // delta < 1/2 needs m large enough at theta=4.
  const auto e = gen_borda_lb(256, 1000, 4.0);
  CHECK(optimal_candidate(e.instance).opt_index == 0);
}

TEST_CASE("pairwise ratio conventions") {
  const auto inst = MetricInstance::euclidean(1, {{0.0}, {1.0}}, {{1.0}, {2.0}, {1.0}});
  CHECK(pairwise_ratio(inst, 0, 0, 1) == doctest::Approx(2.0));
  CHECK(std::isinf(pairwise_ratio(inst, 1, 0, 1)));  // voter 1 sits on candidate 0
  CHECK(pairwise_ratio(inst, 1, 0, 2) == 1.0);       // both distances zero

  // Same conventions through the explicit-matrix representation.
  const std::vector<double> dist{0, 1, 2, 0,  //
                                 1, 0, 1, 1,  //
                                 2, 1, 0, 2,  //
                                 0, 1, 2, 0};
  const auto mx = MetricInstance::from_matrix(1, 3, dist);
  CHECK(pairwise_ratio(mx, 0, 0, 1) == doctest::Approx(2.0));
  CHECK(std::isinf(pairwise_ratio(mx, 0, 2, 0)));
  CHECK(pairwise_ratio(mx, 0, 2, 2) == 1.0);
}

TEST_CASE("social cost is invariant under voter permutation") {
  RngStream rng(11);
  std::vector<std::vector<double>> voters;
  for (int i = 0; i < 7; ++i) voters.push_back({rng.next_double(), rng.next_double()});
  const std::vector<std::vector<double>> cands{{0.2, 0.3}, {0.9, 0.1}, {0.5, 0.5}};
  const auto a = MetricInstance::euclidean(2, voters, cands);
  std::vector<std::vector<double>> shuffled = voters;
  std::swap(shuffled[0], shuffled[4]);
  std::swap(shuffled[2], shuffled[6]);
  const auto b = MetricInstance::euclidean(2, shuffled, cands);
  for (std::size_t j = 0; j < cands.size(); ++j) {
    CHECK(social_cost(a, j) == doctest::Approx(social_cost(b, j)).epsilon(1e-12));
  }
}

TEST_CASE("scaling multiplies costs and preserves the argmin") {
  RngStream rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<std::vector<double>> voters, cands;
    for (int i = 0; i < 5; ++i) voters.push_back({rng.next_double()});
    for (int j = 0; j < 4; ++j) cands.push_back({rng.next_double()});
    const auto inst = MetricInstance::euclidean(1, voters, cands);
    const double kappa = 0.5 + 3.0 * rng.next_double();
    const auto scaled = inst.scaled(kappa);
    const auto t0 = optimal_candidate(inst);
    const auto t1 = optimal_candidate(scaled);
    CHECK(t0.opt_index == t1.opt_index);
    for (std::size_t j = 0; j < cands.size(); ++j) {
      CHECK(t1.costs[j] == doctest::Approx(kappa * t0.costs[j]).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE

#include "doctest.h"

#include <stdexcept>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "pvote/dual.hpp"
#include "pvote/harness.hpp"

using namespace pvote;

namespace {

// Test-side enumeration of expected Borda scores; independent of the grouped
// analytic path in the harness.
std::vector<double> enumerate_expected_borda(const MetricInstance& inst, double theta) {
  const std::size_t n = inst.num_voters();
  const std::size_t m = inst.num_candidates();
  std::vector<std::vector<std::uint32_t>> all;
  std::vector<std::uint32_t> perm(m);
  for (std::size_t j = 0; j < m; ++j) perm[j] = static_cast<std::uint32_t>(j);
  do {
    all.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> scores(m, 0.0);
  const PerVoterDistribution pl = PlSequential{theta};
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& r : all) {
      const double p = ranking_probability(inst, pl, i, r);
      for (std::size_t k = 0; k < m; ++k) {
        scores[r[k]] += p * static_cast<double>(m - 1 - k);
      }
    }
  }
  return scores;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("unanimous instance estimates exactly one") {
  const auto inst = MetricInstance::euclidean(1, {{0.0}, {0.1}, {0.2}}, {{0.0}, {5.0}});
  const auto model = VoterModel::per_voter(
      std::vector<PerVoterDistribution>(3, TopOrLast{0, 1.0}));
  const auto est = estimate_distortion(inst, model, Rule::plurality, 200, 1);
  CHECK(est.mean_ratio == 1.0);
  CHECK(est.stderr_mean == 0.0);
}

TEST_CASE("estimate matches the exact oracle on the one-voter instance") {
  const auto inst = MetricInstance::euclidean(1, {{0.25}}, {{0.0}, {1.0}});
  const auto model = VoterModel::pl(2.0);
  const double exact = brute_force_distortion(inst, model, Rule::random_dictator);
  const auto est = estimate_distortion(inst, model, Rule::random_dictator, 100000, 11);
  CHECK(exact == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(std::fabs(est.mean_ratio - exact) <= std::max(3.0 * est.stderr_mean, 1e-12));
}

TEST_CASE("same seed gives bit-identical estimates for any worker count") {
  const auto e = gen_rd_pl_lb(5, 40, 2.0);
  const auto a = estimate_distortion(e, Rule::random_dictator, 4000, 123, 1);
  const auto b = estimate_distortion(e, Rule::random_dictator, 4000, 123, 4);
  const auto c = estimate_distortion(e, Rule::random_dictator, 4000, 123, 3);
  CHECK(a.mean_ratio == b.mean_ratio);
  CHECK(a.stderr_mean == b.stderr_mean);
  CHECK(a.mean_ratio == c.mean_ratio);
}

TEST_CASE("rd-pl instance: Monte Carlo matches the two-term closed form") {
  const auto e = gen_rd_pl_lb(5, 30, 2.0);
  const double exact = e.params.at("exact_distortion");
  const auto est = estimate_distortion(e, Rule::random_dictator, 40000, 21);
  CHECK(std::fabs(est.mean_ratio - exact) <= 3.0 * est.stderr_mean);
}

TEST_CASE("estimate rejects degenerate instances") {
  const auto inst = MetricInstance::euclidean(1, {{0.0}}, {{0.0}, {1.0}});
  CHECK_THROWS_AS(estimate_distortion(inst, VoterModel::pl(2.0), Rule::plurality, 10, 1),
                  std::domain_error);
}

TEST_CASE("expected Borda scores on a symmetric instance") {
  // Two voters equidistant from all three candidates: every score is n(m-1)/2.
  const std::vector<double> dist{0, 1, 1, 1, 1,  //
                                 1, 0, 1, 1, 1,  //
                                 1, 1, 0, 1, 1,  //
                                 1, 1, 1, 0, 1,  //
                                 1, 1, 1, 1, 0};
  const auto inst = MetricInstance::from_matrix(2, 3, dist);
  for (const double s : expected_borda_scores(inst, 2.0)) {
    CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("expected Borda scores conserve the pairwise total") {
  RngStream rng(3);
  std::vector<std::vector<double>> voters, cands;
  for (int i = 0; i < 9; ++i) voters.push_back({rng.next_double(), rng.next_double()});
  for (int j = 0; j < 5; ++j) cands.push_back({rng.next_double(), rng.next_double()});
  const auto inst = MetricInstance::euclidean(2, voters, cands);
  const auto scores = expected_borda_scores(inst, 3.0);
  double total = 0.0;
  for (const double s : scores) total += s;
  CHECK(total == doctest::Approx(9.0 * 5.0 * 4.0 / 2.0).epsilon(1e-9));
}

TEST_CASE("expected Borda scores match full enumeration") {
  const auto inst =
      MetricInstance::euclidean(1, {{0.1}, {0.6}, {0.9}}, {{0.0}, {0.5}, {1.0}});
  const auto fast = expected_borda_scores(inst, 2.0);
  const auto slow = enumerate_expected_borda(inst, 2.0);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(fast[j] == doctest::Approx(slow[j]).epsilon(1e-9));
  }
}

TEST_CASE("expected Borda score gap on the lower-bound instance") {
  const auto e = gen_borda_lb(256, 1000, 4.0);
  const auto scores = expected_borda_scores(e.instance, 4.0);
  CHECK(scores[1] - scores[0] >= e.params.at("expected_gap_bound"));
}

TEST_CASE("win frequency") {
  // Everyone puts candidate 0 first: it always wins.
  std::vector<PerVoterDistribution> dists(20, TopOrLast{0, 1.0});
  ConstructedElection forced{
      MetricInstance::euclidean(1, std::vector<std::vector<double>>(20, {0.2}), {{0.0}, {1.0}}),
      VoterModel::per_voter(std::move(dists)), 1.0, "forced", {}};
  const auto freq = win_frequency(forced, Rule::plurality, 0, 300, 5);
  CHECK(freq.frequency == 1.0);

  // On the Borda lower-bound instance the optimal candidate keeps losing.
  const auto e = gen_borda_lb(256, 1000, 4.0);
  const auto b_wins = win_frequency(e, Rule::borda, 0, 60, 7);
  CHECK(1.0 - b_wins.frequency >= 0.2);
}

TEST_CASE("weighted uncovered through the simulation path") {
  // Unanimous tops give the optimal candidate the whole tournament, so the
  // uncovered-set rule returns it every trial.
  std::vector<PerVoterDistribution> dists(15, TopOrLast{0, 1.0});
  const auto inst = MetricInstance::euclidean(
      1, std::vector<std::vector<double>>(15, {0.1}), {{0.0}, {1.0}, {2.0}});
  const auto est = estimate_distortion(inst, VoterModel::per_voter(std::move(dists)),
                                       Rule::weighted_uncovered, 200, 3);
  CHECK(est.mean_ratio == 1.0);
}

TEST_CASE("empirical copeland distortion stays under the finite-n bound") {
  const auto c = compute_constants(GFunction::plackett_luce(2.0));
  RngStream rng(17);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<std::vector<double>> voters, cands;
    for (int i = 0; i < 50; ++i) voters.push_back({rng.next_double(), rng.next_double()});
    for (int j = 0; j < 4; ++j) cands.push_back({rng.next_double(), rng.next_double()});
    const auto inst = MetricInstance::euclidean(2, voters, cands);
    const auto est = estimate_distortion(inst, VoterModel::pl(2.0), Rule::copeland, 2000,
                                         900 + static_cast<std::uint64_t>(rep));
    CHECK(est.mean_ratio <=
          copeland_bound_finite(50.0, 4, 0.1, c) + 3.0 * est.stderr_mean);
  }
}

TEST_CASE("sweep table") {
  const std::vector<double> thetas{1.5, 2.0, 8.0, 64.0};
  const std::vector<int> ms{3, 10, 100};
  const auto rows = sweep_bounds(thetas, ms);

  const auto find = [&](double theta, int m, const std::string& rule, const std::string& kind) {
    for (const auto& r : rows) {
      if (r.theta == theta && r.m == m && r.rule == rule && r.bound_kind == kind) return r.value;
    }
    REQUIRE(false);
    return 0.0;
  };

  // Copeland is independent of m; at theta = 64 it sits just below the
  // deterministic limit of 9 (gamma_mid(64) = 1.912).
  const double cop64 = find(64.0, 3, "copeland", "upper");
  CHECK(cop64 == find(64.0, 100, "copeland", "upper"));
  CHECK(cop64 > 7.9);
  CHECK(cop64 <= 9.0);

  // RandomDictator lower bound strictly increases in m at fixed theta.
  CHECK(find(2.0, 3, "random_dictator", "lower") < find(2.0, 10, "random_dictator", "lower"));
  CHECK(find(2.0, 10, "random_dictator", "lower") < find(2.0, 100, "random_dictator", "lower"));

  // Plurality's matching bounds are affine in m at fixed theta.
  const double p3 = find(2.0, 3, "plurality", "upper");
  const double p10 = find(2.0, 10, "plurality", "upper");
  const double p100 = find(2.0, 100, "plurality", "upper");
  const double slope = (p100 - p3) / 97.0;
  CHECK(p10 == doctest::Approx(p3 + slope * 7.0).epsilon(1e-9));

  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const std::string text = csv.str();
  CHECK(text.rfind("theta,m,rule,bound_kind,value\n", 0) == 0);
  CHECK(text.find("random_dictator,lower") != std::string::npos);
}

TEST_CASE("default seed honors the environment override") {
  setenv("PVOTE_SEED", "777", 1);
  CHECK(default_seed() == 777);
  unsetenv("PVOTE_SEED");
  CHECK(default_seed() == 42);
}

}  // TEST_SUITE

#pragma once

// Monte Carlo distortion estimation with reproducible per-trial RNG streams,
// exact expected Borda scores, win frequencies, and the bound sweep table.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pvote/constructions.hpp"
#include "pvote/metric.hpp"
#include "pvote/models.hpp"
#include "pvote/rules.hpp"

namespace pvote {

struct DistortionEstimate {
  double mean_ratio = 0.0;
  double stderr_mean = 0.0;  // sample std / sqrt(trials)
  long long trials = 0;
  std::uint64_t seed = 0;
  std::string rule;
  std::string model;
};

// Mean over trials of SC(rule(profile)) / SC(opt). RandomDictator trials use
// the outcome distribution's expected social cost (exact per profile).
// threads = 0 picks a hardware-based default; results are bit-identical for
// any thread count at a fixed seed.
DistortionEstimate estimate_distortion(const MetricInstance& instance, const VoterModel& model,
                                       Rule rule, long long trials, std::uint64_t seed,
                                       int threads = 0);
DistortionEstimate estimate_distortion(const ConstructedElection& election, Rule rule,
                                       long long trials, std::uint64_t seed, int threads = 0);

struct FrequencyEstimate {
  double frequency = 0.0;
  double stderr_mean = 0.0;
  long long trials = 0;
};

// Empirical frequency that `target` wins (probability mass on the target for
// randomized rules).
FrequencyEstimate win_frequency(const ConstructedElection& election, Rule rule, std::size_t target,
                                long long trials, std::uint64_t seed, int threads = 0);

// Exact analytic expected Borda scores under PL pairwise marginals,
// sum_i sum_{j' != j} P(j above j'). Voters at identical positions and
// candidates at equal distances are grouped, so structured instances cost
// far less than n m^2.
std::vector<double> expected_borda_scores(const MetricInstance& instance, double theta);

struct SweepRow {
  double theta = 0.0;
  int m = 0;
  std::string rule;
  std::string bound_kind;  // "upper" | "lower"
  double value = 0.0;
};

// Large-election bound values on the theta x m grid; matching upper/lower
// bounds (Plurality) and order-tight results (Borda) emit one row of each kind.
std::vector<SweepRow> sweep_bounds(const std::vector<double>& thetas, const std::vector<int>& ms);

// Fixed column order: theta,m,rule,bound_kind,value; floats with 17
// significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Default seed: PVOTE_SEED from the environment, else 42.
std::uint64_t default_seed();

}  // namespace pvote

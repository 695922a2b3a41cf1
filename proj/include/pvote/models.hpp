#pragma once

// Ranking models: the PL sequential sampler, the explicit per-voter ranking
// distributions used by the lower-bound constructions, counter-based RNG
// streams, and the axiom checkers (scale-freeness, strict monotonicity,
// structural independence of other candidates).

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pvote/gfunction.hpp"
#include "pvote/metric.hpp"

namespace pvote {

// Counter-based stream: a SplitMix64 sequence keyed by (seed, trial, voter),
// so samples are reproducible independent of scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : state_(key) {}
  static RngStream keyed(std::uint64_t seed, std::uint64_t trial, std::uint64_t voter);

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_double() {  // uniform in [0,1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  std::size_t next_index(std::size_t n);  // uniform in [0,n), unbiased

 private:
  std::uint64_t state_;
};

struct PlSequential {
  double theta;
};

// With probability q rank `favored` first, otherwise last; the remaining
// candidates are a uniform random permutation either way.
struct TopOrLast {
  std::size_t favored;
  double q;
};

// With probability q the top choice is uniform over `favored_set` and
// `runner_up` takes second place; otherwise `runner_up` is ranked first.
// Remaining positions are a uniform random permutation.
struct TopUniformThenFixed {
  std::vector<std::size_t> favored_set;
  double q;
  std::size_t runner_up;
};

using PerVoterDistribution = std::variant<PlSequential, TopOrLast, TopUniformThenFixed>;

// All voters PL(theta), or an explicit per-voter list.
class VoterModel {
 public:
  static VoterModel pl(double theta);
  static VoterModel per_voter(std::vector<PerVoterDistribution> dists);

  bool is_pl() const { return is_pl_; }
  double pl_theta() const;
  std::size_t num_voters() const { return dists_.size(); }  // 0 for the PL shorthand
  const PerVoterDistribution& dist(std::size_t voter) const;
  std::string id() const;

 private:
  bool is_pl_ = false;
  PerVoterDistribution shared_{PlSequential{2.0}};
  std::vector<PerVoterDistribution> dists_;
};

// P[j ranked above j'] = g(d(i,j')/d(i,j)), with the ratio conventions of
// pairwise_ratio.
double pairwise_probability(const GFunction& g, const MetricInstance& instance, std::size_t voter,
                            std::size_t j, std::size_t j_prime);

// d(i,j)^-theta / sum_k d(i,k)^-theta. A voter coincident with exactly one
// candidate picks it with probability one; coincident with two or more is a
// degenerate tie and rejected.
double pl_top_choice_probability(const MetricInstance& instance, double theta, std::size_t voter,
                                 std::size_t candidate);

// Sequential PL draw without replacement, strengths d^-theta.
void sample_pl_ranking(const MetricInstance& instance, double theta, std::size_t voter,
                       RngStream& rng, std::vector<std::uint32_t>& out);

// Draw from one of the explicit construction distributions.
void sample_construction_ranking(const PerVoterDistribution& dist, std::size_t m, RngStream& rng,
                                 std::vector<std::uint32_t>& out);

// Dispatch on the distribution kind (PL needs the instance).
void sample_ranking(const MetricInstance& instance, const PerVoterDistribution& dist,
                    std::size_t voter, RngStream& rng, std::vector<std::uint32_t>& out);

// Exact probability of a full ranking under the given distribution.
double ranking_probability(const MetricInstance& instance, const PerVoterDistribution& dist,
                           std::size_t voter, const std::vector<std::uint32_t>& ranking);

// ---------------------------------------------------------------------------
// Axiom checks. They run against any pairwise model mapping the two distances
// (d(i,j), d(i,j')) to P[j above j'].
// ---------------------------------------------------------------------------

class PairwiseModel {
 public:
  virtual ~PairwiseModel() = default;
  virtual double prob(double d_j, double d_j_prime) const = 0;
  // True when the probability is a function of the two distances alone;
  // this is the structural form of the independence-of-other-candidates axiom.
  virtual bool ioc_structural() const { return true; }
  virtual std::string name() const = 0;
};

std::shared_ptr<PairwiseModel> make_g_pairwise_model(GFunction g);
std::shared_ptr<PairwiseModel> make_exponential_strength_model();  // s = e^-d; fails SF
// Constant-in-distance stand-in for the Mallows marginal at a fixed rank gap:
// fails strict monotonicity and is not structurally IOC.
std::shared_ptr<PairwiseModel> make_mallows_pairwise_stub(int rank_gap, double phi);

struct ScaleFreenessReport {
  bool pass = true;
  double max_deviation = 0.0;
  double worst_kappa = 1.0;
};

ScaleFreenessReport check_scale_freeness(const PairwiseModel& model, const MetricInstance& instance,
                                         const std::vector<double>& kappas, double tol = 1e-12);

struct MonotonicityReport {
  bool pass = true;
  int plateaus = 0;  // adjacent non-increasing steps outside saturation
};

MonotonicityReport check_strict_monotonicity(const PairwiseModel& model,
                                             const std::vector<double>& grid,
                                             int plateau_tolerance = 0);

bool check_ioc_structural(const PairwiseModel& model);

// Pairwise marginal of the Mallows model: h(gap+1, phi) - h(gap, phi) with
// h(k, phi) = k / (1 - phi^k) and h(0, phi) taken as the limit -1/ln(phi).
// Depends on rank positions only; used solely to exhibit axiom failure.
double mallows_pairwise_marginal(int rank_j, int rank_j_prime, double phi);

}  // namespace pvote

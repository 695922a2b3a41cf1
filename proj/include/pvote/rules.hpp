#pragma once

// Voting rules over sampled profiles: Plurality, Copeland, Borda,
// RandomDictator and the golden-ratio weighted uncovered-set rule.

#include <cstdint>
#include <string>
#include <vector>

namespace pvote {

struct VoteProfile {
  std::size_t num_candidates = 0;
  std::vector<std::vector<std::uint32_t>> rankings;  // rankings[i][0] = top choice
  std::uint64_t seed = 0;                            // provenance

  std::size_t num_voters() const { return rankings.size(); }
};

struct PairwiseTally {
  std::size_t n = 0;
  std::vector<std::vector<long long>> wins;  // wins[j][j'] = #{i : j above j'}
};

PairwiseTally pairwise_tally(const VoteProfile& profile);

struct RuleOutcome {
  std::vector<double> distribution;  // sums to one; degenerate for deterministic rules
  std::size_t winner = 0;            // argmax of the distribution, ties lexicographic
};

RuleOutcome plurality(const VoteProfile& profile);
RuleOutcome copeland(const VoteProfile& profile);
RuleOutcome random_dictator(const VoteProfile& profile);

struct BordaResult {
  std::vector<double> scores;
  RuleOutcome outcome;
};

BordaResult borda(const VoteProfile& profile);

// Candidates that reach every other candidate with the margin condition:
// either |jj'| > (1-lambda) n, or some j'' has |jj''| > (1-lambda) n and
// |j''j'| > lambda n. Falls back to the full candidate set when exact-tie
// degeneracies make that set empty (the trivially maximal set).
std::vector<std::size_t> lambda_uncovered_set(const VoteProfile& profile, double lambda);
std::vector<std::size_t> lambda_uncovered_set(const PairwiseTally& tally, double lambda);

inline constexpr double kGoldenRatio = 0.61803398874989484820;  // (sqrt(5)-1)/2

RuleOutcome weighted_uncovered(const VoteProfile& profile);

enum class Rule { plurality, copeland, borda, random_dictator, weighted_uncovered };

Rule rule_from_string(const std::string& id);
std::string rule_to_string(Rule rule);
RuleOutcome apply_rule(Rule rule, const VoteProfile& profile);

}  // namespace pvote

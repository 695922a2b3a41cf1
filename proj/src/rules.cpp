#include "pvote/rules.hpp"

#include <algorithm>
#include <stdexcept>

namespace pvote {

namespace {

void check_profile(const VoteProfile& profile) {
  if (profile.num_voters() == 0) throw std::invalid_argument("profile needs at least one voter");
  if (profile.num_candidates == 0) throw std::invalid_argument("profile needs candidates");
}

std::size_t argmax_lex(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[best]) best = j;
  }
  return best;
}

RuleOutcome degenerate_outcome(std::size_t winner, std::size_t m) {
  RuleOutcome out;
  out.distribution.assign(m, 0.0);
  out.distribution[winner] = 1.0;
  out.winner = winner;
  return out;
}

}  // namespace

PairwiseTally pairwise_tally(const VoteProfile& profile) {
  check_profile(profile);
  const std::size_t m = profile.num_candidates;
  PairwiseTally tally;
  tally.n = profile.num_voters();
  tally.wins.assign(m, std::vector<long long>(m, 0));
  std::vector<std::uint32_t> pos(m);
  for (const auto& ranking : profile.rankings) {
    if (ranking.size() != m) throw std::invalid_argument("ranking length mismatch");
    for (std::size_t k = 0; k < m; ++k) pos[ranking[k]] = static_cast<std::uint32_t>(k);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t jp = j + 1; jp < m; ++jp) {
        if (pos[j] < pos[jp]) {
          ++tally.wins[j][jp];
        } else {
          ++tally.wins[jp][j];
        }
      }
    }
  }
  return tally;
}

RuleOutcome plurality(const VoteProfile& profile) {
  check_profile(profile);
  std::vector<double> tops(profile.num_candidates, 0.0);
  for (const auto& ranking : profile.rankings) tops[ranking.front()] += 1.0;
  return degenerate_outcome(argmax_lex(tops), profile.num_candidates);
}

RuleOutcome copeland(const VoteProfile& profile) {
  const PairwiseTally tally = pairwise_tally(profile);
  const std::size_t m = profile.num_candidates;
  const double half = static_cast<double>(tally.n) / 2.0;
  std::vector<double> scores(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t jp = 0; jp < m; ++jp) {
      if (jp != j && static_cast<double>(tally.wins[j][jp]) > half) scores[j] += 1.0;
    }
  }
  return degenerate_outcome(argmax_lex(scores), m);
}

BordaResult borda(const VoteProfile& profile) {
  check_profile(profile);
  const std::size_t m = profile.num_candidates;
  BordaResult result;
  result.scores.assign(m, 0.0);
  // Borda score via rank positions: each candidate earns one point per
  // candidate ranked below them, so score = sum_i (m - 1 - pos_i).
  for (const auto& ranking : profile.rankings) {
    for (std::size_t k = 0; k < m; ++k) {
      result.scores[ranking[k]] += static_cast<double>(m - 1 - k);
    }
  }
  result.outcome = degenerate_outcome(argmax_lex(result.scores), m);
  return result;
}

RuleOutcome random_dictator(const VoteProfile& profile) {
  check_profile(profile);
  RuleOutcome out;
  out.distribution.assign(profile.num_candidates, 0.0);
  const double w = 1.0 / static_cast<double>(profile.num_voters());
  for (const auto& ranking : profile.rankings) out.distribution[ranking.front()] += w;
  out.winner = argmax_lex(out.distribution);
  return out;
}

std::vector<std::size_t> lambda_uncovered_set(const PairwiseTally& tally, double lambda) {
  if (lambda < 0.5 || lambda > 1.0) throw std::domain_error("lambda must be in [0.5, 1]");
  const std::size_t m = tally.wins.size();
  const double n = static_cast<double>(tally.n);
  const double one_hop = (1.0 - lambda) * n;
  const double two_hop = lambda * n;

  const auto reaches = [&](std::size_t j, std::size_t jp) {
    if (static_cast<double>(tally.wins[j][jp]) > one_hop) return true;
    for (std::size_t mid = 0; mid < m; ++mid) {
      if (mid == j || mid == jp) continue;
      if (static_cast<double>(tally.wins[j][mid]) > one_hop &&
          static_cast<double>(tally.wins[mid][jp]) > two_hop) {
        return true;
      }
    }
    return false;
  };

  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < m; ++j) {
    bool all = true;
    for (std::size_t jp = 0; jp < m && all; ++jp) {
      if (jp != j && !reaches(j, jp)) all = false;
    }
    if (all) members.push_back(j);
  }
  if (members.empty()) {
    // Exact-tie degeneracy: no candidate reaches everyone. The full set is
    // the (trivially) maximal set satisfying the defining pair condition.
    members.resize(m);
    for (std::size_t j = 0; j < m; ++j) members[j] = j;
  }
  return members;
}

std::vector<std::size_t> lambda_uncovered_set(const VoteProfile& profile, double lambda) {
  return lambda_uncovered_set(pairwise_tally(profile), lambda);
}

RuleOutcome weighted_uncovered(const VoteProfile& profile) {
  const auto members = lambda_uncovered_set(profile, kGoldenRatio);
  return degenerate_outcome(members.front(), profile.num_candidates);
}

Rule rule_from_string(const std::string& id) {
  if (id == "plurality") return Rule::plurality;
  if (id == "copeland") return Rule::copeland;
  if (id == "borda") return Rule::borda;
  if (id == "random_dictator") return Rule::random_dictator;
  if (id == "weighted_uncovered") return Rule::weighted_uncovered;
  throw std::invalid_argument("unknown rule: " + id);
}

std::string rule_to_string(Rule rule) {
  switch (rule) {
    case Rule::plurality: return "plurality";
    case Rule::copeland: return "copeland";
    case Rule::borda: return "borda";
    case Rule::random_dictator: return "random_dictator";
    case Rule::weighted_uncovered: return "weighted_uncovered";
  }
  throw std::logic_error("unreachable");
}

RuleOutcome apply_rule(Rule rule, const VoteProfile& profile) {
  switch (rule) {
    case Rule::plurality: return plurality(profile);
    case Rule::copeland: return copeland(profile);
    case Rule::borda: return borda(profile).outcome;
    case Rule::random_dictator: return random_dictator(profile);
    case Rule::weighted_uncovered: return weighted_uncovered(profile);
  }
  throw std::logic_error("unreachable");
}

}  // namespace pvote

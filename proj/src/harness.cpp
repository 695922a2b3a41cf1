#include "pvote/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "pvote/bounds.hpp"

namespace pvote {

namespace {

int resolve_threads(int threads, long long trials) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  int t = hw == 0 ? 4 : static_cast<int>(std::min(hw, 8u));
  if (trials < 4 * t) t = 1;
  return t;
}

// Runs fn(trial) for every trial in [0, trials) across workers; the caller's
// reduction must not depend on completion order.
void parallel_trials(long long trials, int threads, const std::function<void(long long)>& fn) {
  if (threads <= 1) {
    for (long long t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const long long chunk = (trials + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const long long lo = w * chunk;
    const long long hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (long long t = lo; t < hi; ++t) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

// Single fixed-order pass over the per-trial values keeps the reduction
// bit-identical regardless of worker count.
MeanStderr reduce_trials(const std::vector<double>& values) {
  MeanStderr out;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stderr_mean = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

}  // namespace

DistortionEstimate estimate_distortion(const MetricInstance& instance, const VoterModel& model,
                                       Rule rule, long long trials, std::uint64_t seed,
                                       int threads) {
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  const std::size_t n = instance.num_voters();
  if (!model.is_pl() && model.num_voters() != n) {
    throw std::invalid_argument("per-voter model size mismatch");
  }
  const SocialCostTable table = optimal_candidate(instance);
  const double opt_cost = table.costs[table.opt_index];
  if (!(opt_cost > 0.0)) throw std::domain_error("degenerate instance: optimal social cost is 0");

  std::vector<double> ratios(static_cast<std::size_t>(trials));
  const int workers = resolve_threads(threads, trials);
  parallel_trials(trials, workers, [&](long long trial) {
    thread_local VoteProfile profile;
    profile.num_candidates = instance.num_candidates();
    profile.rankings.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng = RngStream::keyed(seed, static_cast<std::uint64_t>(trial), i);
      sample_ranking(instance, model.dist(i), i, rng, profile.rankings[i]);
    }
    double cost = 0.0;
    if (rule == Rule::random_dictator) {
      const RuleOutcome outcome = random_dictator(profile);
      for (std::size_t j = 0; j < outcome.distribution.size(); ++j) {
        cost += outcome.distribution[j] * table.costs[j];
      }
    } else {
      cost = table.costs[apply_rule(rule, profile).winner];
    }
    ratios[static_cast<std::size_t>(trial)] = cost / opt_cost;
  });

  const MeanStderr ms = reduce_trials(ratios);
  DistortionEstimate est;
  est.mean_ratio = ms.mean;
  est.stderr_mean = ms.stderr_mean;
  est.trials = trials;
  est.seed = seed;
  est.rule = rule_to_string(rule);
  est.model = model.id();
  return est;
}

DistortionEstimate estimate_distortion(const ConstructedElection& election, Rule rule,
                                       long long trials, std::uint64_t seed, int threads) {
  DistortionEstimate est = estimate_distortion(election.instance, election.model, rule, trials,
                                               seed, threads);
  est.model = election.theorem;
  return est;
}

FrequencyEstimate win_frequency(const ConstructedElection& election, Rule rule, std::size_t target,
                                long long trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  const MetricInstance& instance = election.instance;
  const std::size_t n = instance.num_voters();
  if (target >= instance.num_candidates()) throw std::out_of_range("target candidate index");

  std::vector<double> hits(static_cast<std::size_t>(trials));
  const int workers = resolve_threads(threads, trials);
  parallel_trials(trials, workers, [&](long long trial) {
    thread_local VoteProfile profile;
    profile.num_candidates = instance.num_candidates();
    profile.rankings.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng = RngStream::keyed(seed, static_cast<std::uint64_t>(trial), i);
      sample_ranking(instance, election.model.dist(i), i, rng, profile.rankings[i]);
    }
    const RuleOutcome outcome = apply_rule(rule, profile);
    hits[static_cast<std::size_t>(trial)] =
        rule == Rule::random_dictator ? outcome.distribution[target]
                                      : (outcome.winner == target ? 1.0 : 0.0);
  });

  const MeanStderr ms = reduce_trials(hits);
  return {ms.mean, ms.stderr_mean, trials};
}

namespace {

struct VoterClass {
  std::vector<double> distances;
  long long multiplicity = 0;
};

// Group voters with identical candidate-distance vectors.
std::vector<VoterClass> dedupe_voters(const MetricInstance& instance) {
  const std::size_t n = instance.num_voters();
  const std::size_t m = instance.num_candidates();
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::vector<std::vector<double>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].resize(m);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = instance.voter_candidate_distance(i, j);
      rows[i][j] = d;
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(d));
      std::memcpy(&bits, &d, sizeof(bits));
      h = (h ^ bits) * 1099511628211ULL;
    }
    buckets[h].push_back(i);
  }
  std::vector<VoterClass> classes;
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    VoterClass vc;
    vc.distances = rows[i];
    std::uint64_t h = 1469598103934665603ULL;
    for (const double d : rows[i]) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, sizeof(bits));
      h = (h ^ bits) * 1099511628211ULL;
    }
    for (const std::size_t cand : buckets[h]) {
      if (!assigned[cand] && rows[cand] == rows[i]) {
        assigned[cand] = true;
        ++vc.multiplicity;
      }
    }
    classes.push_back(std::move(vc));
  }
  return classes;
}

}  // namespace

std::vector<double> expected_borda_scores(const MetricInstance& instance, double theta) {
  if (!(theta > 1.0)) throw std::domain_error("need theta > 1");
  const std::size_t m = instance.num_candidates();
  std::vector<double> scores(m, 0.0);

  for (const VoterClass& vc : dedupe_voters(instance)) {
    // Group candidates by identical distance from this voter class.
    std::vector<std::size_t> order(m);
    for (std::size_t j = 0; j < m; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vc.distances[a] < vc.distances[b]; });
    std::vector<double> group_dist;
    std::vector<double> group_count;
    std::vector<std::size_t> group_of(m);
    for (const std::size_t j : order) {
      if (group_dist.empty() || vc.distances[j] != group_dist.back()) {
        group_dist.push_back(vc.distances[j]);
        group_count.push_back(0.0);
      }
      group_of[j] = group_dist.size() - 1;
      group_count.back() += 1.0;
    }

    const std::size_t k = group_dist.size();
    // P[group a above group b] via the stable logistic form of the PL marginal.
    const auto pair_prob = [&](std::size_t a, std::size_t b) {
      if (a == b) return 0.5;
      const double da = group_dist[a], db = group_dist[b];
      if (da == 0.0) return 1.0;
      if (db == 0.0) return 0.0;
      const double t = theta * (std::log(da) - std::log(db));
      return t >= 0.0 ? std::exp(-t) / (1.0 + std::exp(-t)) : 1.0 / (1.0 + std::exp(t));
    };

    std::vector<double> group_score(k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < k; ++b) s += group_count[b] * pair_prob(a, b);
      s -= 0.5;  // remove the self pair
      group_score[a] = s;
    }
    const auto mult = static_cast<double>(vc.multiplicity);
    for (std::size_t j = 0; j < m; ++j) scores[j] += mult * group_score[group_of[j]];
  }
  return scores;
}

std::vector<SweepRow> sweep_bounds(const std::vector<double>& thetas, const std::vector<int>& ms) {
  std::vector<SweepRow> rows;
  for (const double theta : thetas) {
    const GFunction g = GFunction::plackett_luce(theta);
    const DerivedConstants c = compute_constants(g);
    for (const int m : ms) {
      const double plu = plurality_bound_limit(m, c);
      rows.push_back({theta, m, "plurality", "upper", plu});
      rows.push_back({theta, m, "plurality", "lower", plu});
      rows.push_back({theta, m, "copeland", "upper", copeland_bound_limit(c)});
      rows.push_back({theta, m, "random_dictator", "upper", rd_upper_bound(m, c)});
      if (m >= 3) {
        rows.push_back({theta, m, "random_dictator", "lower", rd_lower_bound_limit(m, g)});
      }
      rows.push_back({theta, m, "weighted_uncovered", "upper", wu_bound_limit(c)});
      const double order = borda_order(m, theta);
      rows.push_back({theta, m, "borda", "upper", order});
      rows.push_back({theta, m, "borda", "lower", order});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "theta,m,rule,bound_kind,value\n";
  char buf[64];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.theta);
    os << buf << ',' << r.m << ',' << r.rule << ',' << r.bound_kind << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", r.value);
    os << buf << '\n';
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PVOTE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 42;
}

}  // namespace pvote

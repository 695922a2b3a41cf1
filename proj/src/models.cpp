#include "pvote/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pvote {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream RngStream::keyed(std::uint64_t seed, std::uint64_t trial, std::uint64_t voter) {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (trial * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL));
  h = mix64(h ^ (voter * 0x94d049bb133111ebULL + 0xda942042e4dd58b5ULL));
  return RngStream(h);
}

std::size_t RngStream::next_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("next_index needs n > 0");
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return static_cast<std::size_t>(v % bound);
}

VoterModel VoterModel::pl(double theta) {
  if (!(theta > 1.0)) throw std::invalid_argument("PL model requires theta > 1");
  VoterModel m;
  m.is_pl_ = true;
  m.shared_ = PlSequential{theta};
  return m;
}

VoterModel VoterModel::per_voter(std::vector<PerVoterDistribution> dists) {
  if (dists.empty()) throw std::invalid_argument("per-voter model needs at least one entry");
  VoterModel m;
  m.dists_ = std::move(dists);
  return m;
}

double VoterModel::pl_theta() const {
  if (!is_pl_) throw std::logic_error("not a PL model");
  return std::get<PlSequential>(shared_).theta;
}

const PerVoterDistribution& VoterModel::dist(std::size_t voter) const {
  if (is_pl_) return shared_;
  if (voter >= dists_.size()) throw std::out_of_range("voter index");
  return dists_[voter];
}

std::string VoterModel::id() const {
  if (is_pl_) return "pl(theta=" + std::to_string(std::get<PlSequential>(shared_).theta) + ")";
  return "per_voter[" + std::to_string(dists_.size()) + "]";
}

double pairwise_probability(const GFunction& g, const MetricInstance& instance, std::size_t voter,
                            std::size_t j, std::size_t j_prime) {
  return g(pairwise_ratio(instance, voter, j, j_prime));
}

namespace {

// Distances from one voter to all candidates, plus the coincidence summary.
struct VoterDistances {
  std::vector<double> d;
  std::size_t zero_count = 0;
  std::size_t zero_index = 0;
  double min_positive = std::numeric_limits<double>::infinity();
};

VoterDistances voter_distances(const MetricInstance& instance, std::size_t voter) {
  VoterDistances vd;
  const std::size_t m = instance.num_candidates();
  vd.d.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double dist = instance.voter_candidate_distance(voter, j);
    vd.d[j] = dist;
    if (dist == 0.0) {
      ++vd.zero_count;
      vd.zero_index = j;
    } else {
      vd.min_positive = std::min(vd.min_positive, dist);
    }
  }
  return vd;
}

// Normalized strengths (d_min/d)^theta for the positive-distance candidates.
double pl_strength(double dist, double d_min, double theta) {
  return std::exp(theta * (std::log(d_min) - std::log(dist)));
}

}  // namespace

double pl_top_choice_probability(const MetricInstance& instance, double theta, std::size_t voter,
                                 std::size_t candidate) {
  if (candidate >= instance.num_candidates()) throw std::out_of_range("candidate index");
  const VoterDistances vd = voter_distances(instance, voter);
  if (vd.zero_count >= 2) {
    throw std::domain_error("degenerate tie: voter coincident with two or more candidates");
  }
  if (vd.zero_count == 1) return candidate == vd.zero_index ? 1.0 : 0.0;
  double total = 0.0;
  for (const double dist : vd.d) total += pl_strength(dist, vd.min_positive, theta);
  return pl_strength(vd.d[candidate], vd.min_positive, theta) / total;
}

namespace {

// Weighted sampling without replacement via a Fenwick tree, for large m.
class FenwickSampler {
 public:
  explicit FenwickSampler(const std::vector<double>& weights)
      : n_(weights.size()), tree_(weights.size() + 1, 0.0), weight_(weights) {
    for (std::size_t i = 0; i < n_; ++i) add(i, weights[i]);
  }
  double total() const {
    double t = 0.0;
    for (std::size_t i = n_; i > 0; i -= i & (~i + 1)) t += tree_[i];
    return t;
  }
  std::size_t draw_and_remove(double u01) {
    double target = std::max(u01 * total(), std::numeric_limits<double>::min());
    std::size_t pos = 0;
    std::size_t mask = 1;
    while ((mask << 1) <= n_) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next <= n_ && tree_[next] < target) {
        target -= tree_[next];
        pos = next;
      }
    }
    std::size_t idx = pos;  // 0-based
    if (idx >= n_) idx = n_ - 1;
    // Rounding at the top of the range can land on an already-removed item.
    while (idx > 0 && weight_[idx] == 0.0) --idx;
    while (idx + 1 < n_ && weight_[idx] == 0.0) ++idx;
    add(idx, -weight_[idx]);
    weight_[idx] = 0.0;
    return idx;
  }

 private:
  void add(std::size_t i, double delta) {
    for (std::size_t k = i + 1; k <= n_; k += k & (~k + 1)) tree_[k] += delta;
  }
  std::size_t n_;
  std::vector<double> tree_;
  std::vector<double> weight_;
};

void fill_remaining_uniform(std::vector<std::uint32_t>& out, std::size_t start, RngStream& rng) {
  // Fisher-Yates over out[start..].
  for (std::size_t i = out.size() - 1; i > start; --i) {
    const std::size_t k = start + rng.next_index(i - start + 1);
    std::swap(out[i], out[k]);
  }
}

}  // namespace

void sample_pl_ranking(const MetricInstance& instance, double theta, std::size_t voter,
                       RngStream& rng, std::vector<std::uint32_t>& out) {
  const std::size_t m = instance.num_candidates();
  out.resize(m);
  const VoterDistances vd = voter_distances(instance, voter);
  if (vd.zero_count >= 2) {
    throw std::domain_error("degenerate tie: voter coincident with two or more candidates");
  }

  // Strength floor keeps totals positive when d^-theta underflows at large
  // theta; the relative order of floored candidates is then uniform.
  std::vector<double> s(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    s[j] = vd.d[j] == 0.0 ? 0.0 : std::max(pl_strength(vd.d[j], vd.min_positive, theta), 1e-300);
  }

  std::size_t pos = 0;
  if (vd.zero_count == 1) out[pos++] = static_cast<std::uint32_t>(vd.zero_index);

  if (m - pos > 128) {
    FenwickSampler sampler(s);
    for (; pos < m; ++pos) {
      out[pos] = static_cast<std::uint32_t>(sampler.draw_and_remove(rng.next_double()));
    }
    return;
  }

  std::vector<std::uint32_t> remaining;
  remaining.reserve(m - pos);
  for (std::size_t j = 0; j < m; ++j) {
    if (!(vd.zero_count == 1 && j == vd.zero_index)) remaining.push_back(static_cast<std::uint32_t>(j));
  }
  double total = 0.0;
  for (const auto j : remaining) total += s[j];
  for (; pos < m; ++pos) {
    double target = rng.next_double() * total;
    std::size_t pick = remaining.size() - 1;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      target -= s[remaining[k]];
      if (target < 0.0) {
        pick = k;
        break;
      }
    }
    const std::uint32_t chosen = remaining[pick];
    out[pos] = chosen;
    total -= s[chosen];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

namespace {

void check_q(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must be in [0,1]");
}

}  // namespace

void sample_construction_ranking(const PerVoterDistribution& dist, std::size_t m, RngStream& rng,
                                 std::vector<std::uint32_t>& out) {
  out.resize(m);
  if (const auto* tol = std::get_if<TopOrLast>(&dist)) {
    check_q(tol->q);
    if (tol->favored >= m) throw std::out_of_range("favored candidate index");
    std::size_t fill = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != tol->favored) out[1 + fill++] = static_cast<std::uint32_t>(j);
    }
    fill_remaining_uniform(out, 1, rng);
    if (rng.next_double() < tol->q) {
      out[0] = static_cast<std::uint32_t>(tol->favored);
    } else {
      // favored goes last; shift the permuted block forward
      for (std::size_t k = 0; k + 1 < m; ++k) out[k] = out[k + 1];
      out[m - 1] = static_cast<std::uint32_t>(tol->favored);
    }
    return;
  }
  if (const auto* tuf = std::get_if<TopUniformThenFixed>(&dist)) {
    check_q(tuf->q);
    if (tuf->favored_set.empty()) throw std::invalid_argument("empty favored set");
    const bool favored_branch = rng.next_double() < tuf->q;
    std::size_t top, second;
    if (favored_branch) {
      top = tuf->favored_set[rng.next_index(tuf->favored_set.size())];
      second = tuf->runner_up;
    } else {
      top = tuf->runner_up;
      second = m;  // none pinned
    }
    std::size_t fill = favored_branch ? 2 : 1;
    out[0] = static_cast<std::uint32_t>(top);
    if (favored_branch) out[1] = static_cast<std::uint32_t>(second);
    std::size_t cursor = fill;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != top && (!favored_branch || j != second)) out[cursor++] = static_cast<std::uint32_t>(j);
    }
    fill_remaining_uniform(out, fill, rng);
    return;
  }
  throw std::logic_error("PL distribution needs the metric instance; use sample_ranking");
}

void sample_ranking(const MetricInstance& instance, const PerVoterDistribution& dist,
                    std::size_t voter, RngStream& rng, std::vector<std::uint32_t>& out) {
  if (const auto* pl = std::get_if<PlSequential>(&dist)) {
    sample_pl_ranking(instance, pl->theta, voter, rng, out);
    return;
  }
  sample_construction_ranking(dist, instance.num_candidates(), rng, out);
}

namespace {

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

double ranking_probability(const MetricInstance& instance, const PerVoterDistribution& dist,
                           std::size_t voter, const std::vector<std::uint32_t>& ranking) {
  const std::size_t m = instance.num_candidates();
  if (ranking.size() != m) throw std::invalid_argument("ranking size mismatch");

  if (const auto* pl = std::get_if<PlSequential>(&dist)) {
    const VoterDistances vd = voter_distances(instance, voter);
    if (vd.zero_count >= 2) {
      throw std::domain_error("degenerate tie: voter coincident with two or more candidates");
    }
    std::size_t start = 0;
    if (vd.zero_count == 1) {
      if (ranking[0] != vd.zero_index) return 0.0;
      start = 1;
    }
    std::vector<double> s(m, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (vd.d[j] > 0.0) {
        s[j] = pl_strength(vd.d[j], vd.min_positive, pl->theta);
        total += s[j];
      }
    }
    double prob = 1.0;
    for (std::size_t k = start; k < m; ++k) {
      const double sk = s[ranking[k]];
      prob *= sk / total;
      total -= sk;
    }
    return prob;
  }

  if (const auto* tol = std::get_if<TopOrLast>(&dist)) {
    const double uniform_rest = 1.0 / factorial(m - 1);
    if (ranking.front() == tol->favored) return tol->q * uniform_rest;
    if (ranking.back() == tol->favored) return (1.0 - tol->q) * uniform_rest;
    return 0.0;
  }

  const auto& tuf = std::get<TopUniformThenFixed>(dist);
  const bool top_in_set =
      std::find(tuf.favored_set.begin(), tuf.favored_set.end(), ranking.front()) !=
      tuf.favored_set.end();
  if (top_in_set && m >= 2 && ranking[1] == tuf.runner_up) {
    return tuf.q / static_cast<double>(tuf.favored_set.size()) / factorial(m - 2);
  }
  if (ranking.front() == tuf.runner_up) {
    return (1.0 - tuf.q) / factorial(m - 1);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

namespace {

class GPairwiseModel final : public PairwiseModel {
 public:
  explicit GPairwiseModel(GFunction g) : g_(std::move(g)) {}
  double prob(double d_j, double d_j_prime) const override {
    if (d_j == 0.0 && d_j_prime == 0.0) return 0.5;
    if (d_j == 0.0) return 1.0;
    return g_(d_j_prime / d_j);
  }
  std::string name() const override { return g_.name(); }

 private:
  GFunction g_;
};

class ExponentialStrengthModel final : public PairwiseModel {
 public:
  double prob(double d_j, double d_j_prime) const override {
    // Bradley-Terry with strengths e^-d; depends on the distance gap, so it
    // is not invariant to scaling.
    const double t = d_j_prime - d_j;
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
  }
  std::string name() const override { return "exp_strength"; }
};

class MallowsPairwiseStub final : public PairwiseModel {
 public:
  MallowsPairwiseStub(int gap, double phi) : gap_(gap), phi_(phi) {}
  double prob(double, double) const override {
    return mallows_pairwise_marginal(0, gap_, phi_);
  }
  bool ioc_structural() const override { return false; }  // needs full rank context
  std::string name() const override { return "mallows_marginal"; }

 private:
  int gap_;
  double phi_;
};

}  // namespace

std::shared_ptr<PairwiseModel> make_g_pairwise_model(GFunction g) {
  return std::make_shared<GPairwiseModel>(std::move(g));
}

std::shared_ptr<PairwiseModel> make_exponential_strength_model() {
  return std::make_shared<ExponentialStrengthModel>();
}

std::shared_ptr<PairwiseModel> make_mallows_pairwise_stub(int rank_gap, double phi) {
  return std::make_shared<MallowsPairwiseStub>(rank_gap, phi);
}

ScaleFreenessReport check_scale_freeness(const PairwiseModel& model, const MetricInstance& instance,
                                         const std::vector<double>& kappas, double tol) {
  ScaleFreenessReport rep;
  const std::size_t n = instance.num_voters();
  const std::size_t m = instance.num_candidates();
  for (const double kappa : kappas) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t jp = 0; jp < m; ++jp) {
          if (j == jp) continue;
          const double dj = instance.voter_candidate_distance(i, j);
          const double djp = instance.voter_candidate_distance(i, jp);
          const double dev = std::fabs(model.prob(dj, djp) - model.prob(kappa * dj, kappa * djp));
          if (dev > rep.max_deviation) {
            rep.max_deviation = dev;
            rep.worst_kappa = kappa;
          }
        }
      }
    }
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

MonotonicityReport check_strict_monotonicity(const PairwiseModel& model,
                                             const std::vector<double>& grid,
                                             int plateau_tolerance) {
  MonotonicityReport rep;
  int interior_points = 0;
  double prev = model.prob(1.0, grid.front());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = model.prob(1.0, grid[i]);
    if (v > 0.01 && v < 0.99) ++interior_points;
    if (i > 0) {
      // Flat pairs at a double-saturated extreme are fp artifacts, not
      // plateaus of the model itself.
      const bool saturated =
          (v >= 1.0 - 1e-9 && prev >= 1.0 - 1e-9) || (v <= 1e-9 && prev <= 1e-9);
      if (!saturated && v <= prev) ++rep.plateaus;
      prev = v;
    }
  }
  // Strict monotonicity of a continuous model implies it transits the
  // interior; a bare jump never does.
  rep.pass = rep.plateaus <= plateau_tolerance && interior_points >= 3;
  return rep;
}

bool check_ioc_structural(const PairwiseModel& model) { return model.ioc_structural(); }

double mallows_pairwise_marginal(int rank_j, int rank_j_prime, double phi) {
  if (!(phi > 0.0 && phi < 1.0)) throw std::invalid_argument("phi must be in (0,1)");
  if (rank_j == rank_j_prime) throw std::invalid_argument("ranks must differ");
  const auto h = [phi](int k) {
    if (k == 0) return -1.0 / std::log(phi);  // limit of k / (1 - phi^k)
    return static_cast<double>(k) / (1.0 - std::pow(phi, k));
  };
  const int gap = rank_j_prime - rank_j;
  return h(gap + 1) - h(gap);
}

}  // namespace pvote

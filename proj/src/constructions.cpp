#include "pvote/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace pvote {

namespace {

constexpr double kMarginalTol = 1e-12;

void require(bool cond, const std::string& what) {
  if (!cond) throw std::domain_error(what);
}

// The generators pin specific pairwise marginals; verify them against
// g(distance ratio) on the generated geometry before returning.
void check_marginal(double stated, double from_geometry, const std::string& what) {
  if (std::fabs(stated - from_geometry) > kMarginalTol) {
    throw std::logic_error("construction marginal mismatch (" + what + "): " +
                           std::to_string(stated) + " vs " + std::to_string(from_geometry));
  }
}

}  // namespace

ConstructedElection gen_plurality_lb(int m, long long n, double eps, double zeta,
                                     const GFunction& g, Branch branch) {
  require(m >= 2, "need m >= 2");
  require(eps > 0.0 && zeta > 0.0, "need eps, zeta > 0");
  const DerivedConstants c = compute_constants(g);
  const double x = branch == Branch::mid ? c.x_star_mid : c.x_star_out;
  const double denom = branch == Branch::mid ? 1.0 - x : 1.0 + x;
  const double q = g(std::sqrt(x * x + eps * eps) / denom);
  const double a = (1.0 - (1.0 + zeta) / (m * q)) / (m - 1.0);
  require(a > 0.0, "parameter infeasibility: a <= 0 (q too small for this m)");
  const auto overlap = static_cast<long long>(std::floor(a * static_cast<double>(n)));
  require(overlap >= 1, "parameter infeasibility: floor(a n) < 1");
  const long long ambivalent = n - (m - 1) * overlap;
  require(ambivalent >= 1, "parameter infeasibility: no ambivalent voters left");

  // Candidate 0 is the spoiler W; 1..m-1 are the good candidates on the circle.
  const double pi = std::acos(-1.0);
  std::vector<std::array<double, 3>> candidates;
  candidates.push_back({1.0, 0.0, 0.0});
  for (int k = 0; k + 1 < m; ++k) {
    const double angle = 2.0 * pi * k / (m - 1);
    candidates.push_back({0.0, eps * std::cos(angle), eps * std::sin(angle)});
  }
  const double amb_x = branch == Branch::mid ? x : -x;
  std::vector<std::array<double, 3>> voters;
  voters.reserve(static_cast<std::size_t>(n));
  std::vector<PerVoterDistribution> dists;
  dists.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < m; ++k) {
    for (long long v = 0; v < overlap; ++v) {
      voters.push_back(candidates[static_cast<std::size_t>(k)]);
      dists.emplace_back(TopOrLast{static_cast<std::size_t>(k), 1.0});
    }
  }
  for (long long v = 0; v < ambivalent; ++v) {
    voters.push_back({amb_x, 0.0, 0.0});
    dists.emplace_back(TopOrLast{0, q});
  }

  ConstructedElection e{MetricInstance::from_points(3, std::move(voters), std::move(candidates)),
                        VoterModel::per_voter(std::move(dists)),
                        0.0,
                        branch == Branch::mid ? "plurality-lb-mid" : "plurality-lb-out",
                        {}};
  e.predicted_distortion = branch == Branch::mid ? m * c.gamma_mid - 1.0 : m * c.gamma_out + 1.0;

  // Ambivalent voters see every good candidate at the same distance; their
  // TopOrLast marginal against W must equal g of that ratio.
  const std::size_t amb_index = e.instance.num_voters() - 1;
  check_marginal(q, pairwise_probability(g, e.instance, amb_index, 0, 1), "ambivalent W vs good");
  if (m >= 3) {
    check_marginal(0.5, pairwise_probability(g, e.instance, amb_index, 1, 2), "good vs good tie");
  }

  e.params["q"] = q;
  e.params["a"] = a;
  e.params["x_star"] = x;
  e.params["eps"] = eps;
  e.params["zeta"] = zeta;
  e.params["overlap_per_good"] = static_cast<double>(overlap);
  e.params["ambivalent"] = static_cast<double>(ambivalent);
  // Finite-(eps, zeta) social-cost ratio of W against a good candidate, at
  // the real-valued overlap share a (flooring perturbs it by O(1/n)).
  const double across = std::sqrt(1.0 + eps * eps);
  const double near = std::sqrt(x * x + eps * eps);
  const double overlap_frac = (m - 1.0) * a;
  e.params["sc_ratio_bound"] =
      (denom * (1.0 - overlap_frac) + overlap_frac * across) /
      ((1.0 - overlap_frac) * near + 2.0 * (m - 2.0) * a * eps);
  return e;
}

ConstructedElection gen_plurality_pl_lb(int m, long long n, double eps, double zeta, double theta) {
  require(m >= 2, "need m >= 2");
  require(theta > 1.0, "need theta > 1");
  require(eps > 0.0 && zeta > 0.0, "need eps, zeta > 0");
  const double x_hat = 1.0 - std::pow(m, -1.0 / theta);
  const double near = std::sqrt(x_hat * x_hat + eps * eps);
  const double w_strength = std::pow(1.0 - x_hat, -theta);
  const double q = w_strength / ((m - 1.0) * std::pow(near, -theta) + w_strength);
  const double a = (1.0 - (1.0 + zeta) / (m * q)) / (m - 1.0);
  require(a > 0.0, "parameter infeasibility: a <= 0");
  const auto overlap = static_cast<long long>(std::floor(a * static_cast<double>(n)));
  require(overlap >= 1, "parameter infeasibility: floor(a n) < 1");
  const long long ambivalent = n - (m - 1) * overlap;
  require(ambivalent >= 1, "parameter infeasibility: no ambivalent voters left");

  const double pi = std::acos(-1.0);
  std::vector<std::array<double, 3>> candidates;
  candidates.push_back({1.0, 0.0, 0.0});
  for (int k = 0; k + 1 < m; ++k) {
    const double angle = 2.0 * pi * k / (m - 1);
    candidates.push_back({0.0, eps * std::cos(angle), eps * std::sin(angle)});
  }
  std::vector<std::array<double, 3>> voters;
  voters.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < m; ++k) {
    for (long long v = 0; v < overlap; ++v) voters.push_back(candidates[static_cast<std::size_t>(k)]);
  }
  for (long long v = 0; v < ambivalent; ++v) voters.push_back({x_hat, 0.0, 0.0});

  ConstructedElection e{MetricInstance::from_points(3, std::move(voters), std::move(candidates)),
                        VoterModel::pl(theta),
                        0.0,
                        "plurality-pl-lb",
                        {}};
  // Limit form of the proof's final display (eps, zeta -> 0).
  const double x_pow = std::pow(x_hat, -theta);
  e.predicted_distortion =
      m * w_strength / (x_hat * ((m - 1.0) * x_pow + w_strength)) - 1.0;
  e.params["x_hat"] = x_hat;
  e.params["q"] = q;
  e.params["a"] = a;
  e.params["eps"] = eps;
  e.params["zeta"] = zeta;
  e.params["overlap_per_good"] = static_cast<double>(overlap);
  e.params["ambivalent"] = static_cast<double>(ambivalent);
  return e;
}

ConstructedElection gen_rd_lb(int m, long long n, const GFunction& g) {
  require(m >= 3, "need m >= 3");
  require(n >= 2, "need n >= 2");
  const double u = g.inverse(1.0 / (m - 1.0));
  const double x_tilde = u / (1.0 + u);

  std::vector<std::vector<double>> candidates;
  candidates.push_back({0.0});  // B
  for (int j = 1; j < m; ++j) candidates.push_back({1.0});
  std::vector<std::vector<double>> voters(static_cast<std::size_t>(n - 1), {0.0});
  voters.push_back({x_tilde});

  std::vector<PerVoterDistribution> dists;
  dists.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i + 1 < n; ++i) dists.emplace_back(TopOrLast{0, 1.0});
  std::vector<std::size_t> others;
  for (int j = 1; j < m; ++j) others.push_back(static_cast<std::size_t>(j));
  dists.emplace_back(TopUniformThenFixed{others, 1.0, 0});

  ConstructedElection e{MetricInstance::euclidean(1, voters, candidates),
                        VoterModel::per_voter(std::move(dists)),
                        0.0,
                        "rd-lb",
                        {}};
  e.predicted_distortion = 2.0 + 1.0 / u - 2.0 / static_cast<double>(n);

  // The special voter's marginals are fully pinned: P[A_j above B] = 1/(m-1)
  // must equal g(x_tilde / (1 - x_tilde)), and distinct A_j tie at 1/2.
  const std::size_t v = e.instance.num_voters() - 1;
  check_marginal(1.0 / (m - 1.0), pairwise_probability(g, e.instance, v, 1, 0), "A_j vs B");
  check_marginal(0.5, pairwise_probability(g, e.instance, v, 1, 2), "A_j vs A_k tie");

  e.params["x_tilde"] = x_tilde;
  e.params["g_inverse"] = u;
  // Closed-form distortion of this instance; equals the predicted bound.
  e.params["exact_distortion"] =
      (static_cast<double>(n) - 1.0) / static_cast<double>(n) +
      (static_cast<double>(n) - x_tilde) / (static_cast<double>(n) * x_tilde);
  return e;
}

ConstructedElection gen_rd_pl_lb(int m, long long n, double theta) {
  require(m >= 2, "need m >= 2");
  require(n >= 2, "need n >= 2");
  require(theta > 1.0, "need theta > 1");
  const double t = std::pow(m - 1.0, -1.0 / theta);

  std::vector<std::vector<double>> candidates;
  candidates.push_back({0.0});
  for (int j = 1; j < m; ++j) candidates.push_back({1.0});
  std::vector<std::vector<double>> voters(static_cast<std::size_t>(n - 1), {0.0});
  voters.push_back({t});

  ConstructedElection e{MetricInstance::euclidean(1, voters, candidates),
                        VoterModel::pl(theta),
                        0.0,
                        "rd-pl-lb",
                        {}};
  e.predicted_distortion = 1.0 + std::pow(m - 1.0, 1.0 / theta) / 2.0;
  e.params["t"] = t;

  // Exact expected distortion of the instance (the prediction lower-bounds it).
  double p_b;
  if (t >= 1.0) {
    p_b = 0.0;  // voter coincident with the far cluster
  } else {
    const double b_strength = std::pow(t, -theta);
    const double far = (m - 1.0) * std::pow(1.0 - t, -theta);
    p_b = b_strength / (b_strength + far);
  }
  const double nd = static_cast<double>(n);
  e.params["p_b_top"] = p_b;
  e.params["exact_distortion"] =
      (nd - 1.0) / nd + p_b / nd + (1.0 - p_b) / nd * (nd - t) / t;
  return e;
}

ConstructedElection gen_borda_lb(int m, long long n, double theta) {
  require(m >= 3, "need m >= 3");
  require(theta > 1.0, "need theta > 1");
  const double t = std::pow(m, 1.0 / theta);
  const double delta = 24.0 * std::pow(m, 1.0 / theta - 1.0);
  require(delta <= 1.0, "parameter infeasibility: delta > 1 (m too small for this theta)");
  const auto far_voters = static_cast<long long>(std::floor(delta * static_cast<double>(n)));
  require(far_voters >= 1, "parameter infeasibility: delta n < 1");
  const long long origin_voters = n - far_voters;
  require(origin_voters >= 1, "parameter infeasibility: no voters at the origin");

  std::vector<std::vector<double>> candidates;
  candidates.push_back({0.0, 0.0});  // B
  candidates.push_back({1.0, 0.0});  // W
  const std::vector<double> m_point{t / 2.0, t * std::sqrt(3.0) / 2.0};
  for (int j = 2; j < m; ++j) candidates.push_back(m_point);

  std::vector<std::vector<double>> voters;
  voters.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < origin_voters; ++i) voters.push_back({0.0, 0.0});
  for (long long i = 0; i < far_voters; ++i) voters.push_back({t, 0.0});

  ConstructedElection e{MetricInstance::euclidean(2, voters, candidates), VoterModel::pl(theta),
                        0.0, "borda-lb", {}};
  const double order = std::pow(m, 1.0 - 2.0 / theta);
  e.predicted_distortion = std::max(1.0, order / 24.0);
  e.params["t"] = t;
  e.params["delta"] = delta;
  e.params["far_voters"] = static_cast<double>(far_voters);
  e.params["sc_ratio_bound"] = order / 24.0;
  const double sc_b = static_cast<double>(far_voters) * t;
  const double sc_w = static_cast<double>(origin_voters) + static_cast<double>(far_voters) * (t - 1.0);
  e.params["sc_ratio_exact"] = sc_w / sc_b;
  e.params["expected_gap_bound"] = 2.0 * (theta - 1.0) * static_cast<double>(n);
  return e;
}

std::pair<ConstructedElection, ConstructedElection> gen_generic_lb_pair(const GFunction& g,
                                                                        Branch branch,
                                                                        long long n) {
  require(n >= 2, "need n >= 2");
  const DerivedConstants c = compute_constants(g);
  const double x = branch == Branch::mid ? c.x_star_mid : c.x_star_out;
  const double share = branch == Branch::mid ? g.mid(x) : g.out(x);
  const double cluster_frac = 1.0 - 1.0 / (2.0 * share);
  require(cluster_frac > 0.0,
          "infeasible counts: branch vote share below 1/2 leaves a negative cluster");
  const auto cluster = static_cast<long long>(std::floor(cluster_frac * static_cast<double>(n)));
  require(cluster >= 1, "infeasible counts: empty cluster");
  const long long ambivalent = n - cluster;

  // W at 0, B at 1; ambivalent voters at x from W (between for mid, behind
  // W for out). The mirror swaps the candidate positions, voters unchanged.
  const double amb_pos = branch == Branch::mid ? x : -x;
  const auto build = [&](double w_pos, double b_pos, const std::string& tag,
                         double predicted) {
    std::vector<std::vector<double>> candidates{{w_pos}, {b_pos}};
    std::vector<std::vector<double>> voters;
    voters.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < cluster; ++i) voters.push_back({0.0});
    for (long long i = 0; i < ambivalent; ++i) voters.push_back({amb_pos});
    ConstructedElection e{MetricInstance::euclidean(1, voters, candidates), VoterModel::pl(2.0),
                          predicted, tag, {}};
    // Pairwise marginals are fully pinned at m = 2: q_v = g(d(v,B)/d(v,W)).
    std::vector<PerVoterDistribution> per_voter;
    per_voter.reserve(static_cast<std::size_t>(n));
    double expected_share = 0.0;
    for (long long i = 0; i < n; ++i) {
      const double q_v = pairwise_probability(g, e.instance, static_cast<std::size_t>(i), 0, 1);
      per_voter.emplace_back(TopOrLast{0, q_v});
      expected_share += q_v;
    }
    e.model = VoterModel::per_voter(std::move(per_voter));
    e.params["expected_share_w"] = expected_share / static_cast<double>(n);
    e.params["x_star"] = x;
    e.params["cluster"] = static_cast<double>(cluster);
    return e;
  };

  ConstructedElection benign = build(0.0, 1.0, branch == Branch::mid ? "generic-lb-mid-benign"
                                                                     : "generic-lb-out-benign",
                                     1.0);
  const double adverse_pred =
      branch == Branch::mid ? 2.0 * c.gamma_mid - 1.0 : 2.0 * c.gamma_out + 1.0;
  ConstructedElection adverse = build(1.0, 0.0, branch == Branch::mid ? "generic-lb-mid-adverse"
                                                                      : "generic-lb-out-adverse",
                                      adverse_pred);
  return {std::move(benign), std::move(adverse)};
}

}  // namespace pvote

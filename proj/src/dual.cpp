#include "pvote/dual.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace pvote {

DualWitness dual_witness(double alpha, const DerivedConstants& c) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must be in (0,1)");
  DualWitness w;
  w.mu_star = std::min(1.0 / (c.gamma_mid / alpha - 1.0), 1.0 / (c.gamma_out / alpha + 1.0));
  w.lambda_star = w.mu_star / alpha;
  return w;
}

double lemma33_bound(double alpha, const DerivedConstants& c) {
  return dual_witness(alpha, c).mu_star;
}

double feasible_point_ratio(const FeasiblePoint& p) {
  double sb = 0.0, sw = 0.0;
  for (const double b : p.b) sb += b;
  for (const double w : p.w) sw += w;
  return sb / sw;
}

bool is_feasible(const GFunction& g, const FeasiblePoint& p, double tol) {
  if (p.b.size() != p.w.size() || p.b.empty()) return false;
  double share = 0.0;
  for (std::size_t i = 0; i < p.b.size(); ++i) {
    const double b = p.b[i], w = p.w[i];
    if (b < 0.0 || w < 0.0) return false;
    if (std::fabs(b - w) > 1.0 + tol) return false;
    if (b + w < 1.0 - tol) return false;
    share += b == 0.0 ? 0.0 : g(b / w);
  }
  return share / static_cast<double>(p.b.size()) >= p.alpha - tol;
}

FeasibilityReport check_feasible_points(const GFunction& g, double alpha, int n, int num_samples,
                                        std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must be in (0,1)");
  if (n < 1 || num_samples < 1) throw std::invalid_argument("need n >= 1 and samples >= 1");
  const DerivedConstants c = compute_constants(g);
  const double bound = lemma33_bound(alpha, c);

  // Per-voter share window centered at alpha keeps the rejection rate sane.
  const double spread = std::min({0.15, 0.8 * alpha, 0.8 * (1.0 - alpha)});
  const double p_lo = std::max(0.02, alpha - spread);
  const double p_hi = std::min(0.98, alpha + spread);

  FeasibilityReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  FeasiblePoint point;
  point.alpha = alpha;
  point.b.resize(static_cast<std::size_t>(n));
  point.w.resize(static_cast<std::size_t>(n));

  std::uint64_t attempt = 0;
  for (int s = 0; s < num_samples; ++s) {
    for (;;) {
      RngStream rng = RngStream::keyed(seed, attempt++, 0);
      double share = 0.0;
      for (int i = 0; i < n; ++i) {
        const double p = p_lo + (p_hi - p_lo) * rng.next_double();
        const double r = g.inverse(p);
        // Scale range keeping |b - w| <= 1 <= b + w with b = r w.
        const double w_min = 1.0 / (1.0 + r);
        const double w_max = std::min(4.0 / (1.0 + r),
                                      std::fabs(1.0 - r) < 1e-12
                                          ? std::numeric_limits<double>::infinity()
                                          : 1.0 / std::fabs(1.0 - r));
        const double w =
            w_min * std::exp(std::log(w_max / w_min) * rng.next_double());
        point.w[static_cast<std::size_t>(i)] = w;
        point.b[static_cast<std::size_t>(i)] = r * w;
        share += p;
      }
      if (share / n < alpha) continue;  // reject: vote-share constraint failed
      break;
    }
    const double ratio = feasible_point_ratio(point);
    const double margin = ratio - bound;
    report.min_margin = std::min(report.min_margin, margin);
    if (margin < -1e-9) {
      report.violations.push_back({s, ratio, bound});
    }
  }
  report.samples = num_samples;
  return report;
}

double branch_bound(Branch branch, double alpha, const DerivedConstants& c) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must be in (0,1)");
  if (branch == Branch::mid) return 1.0 / (c.gamma_mid / alpha - 1.0);
  return 1.0 / (c.gamma_out / alpha + 1.0);
}

FeasiblePoint construct_tight_witness(const GFunction& g, double alpha, int n, Branch branch) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must be in (0,1)");
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const DerivedConstants c = compute_constants(g);
  const double x = branch == Branch::mid ? c.x_star_mid : c.x_star_out;
  const double share = branch == Branch::mid ? g.mid(x) : g.out(x);
  const double k_real = static_cast<double>(n) * alpha / share;
  const auto k = static_cast<long long>(std::ceil(k_real - 1e-12));
  if (k > n) {
    throw std::domain_error("tight witness infeasible: alpha exceeds the branch vote share");
  }
  FeasiblePoint p;
  p.alpha = alpha;
  p.b.assign(static_cast<std::size_t>(n), 0.0);
  p.w.assign(static_cast<std::size_t>(n), 1.0);
  const double w_atom = branch == Branch::mid ? 1.0 - x : 1.0 + x;
  for (long long i = 0; i < k; ++i) {
    p.b[static_cast<std::size_t>(i)] = x;
    p.w[static_cast<std::size_t>(i)] = w_atom;
  }
  return p;
}

namespace {

struct BranchMin {
  double value;
  double arg;
};

// Grid minimum plus golden-section refinement on the bracketing interval.
BranchMin minimize_on_grid(const std::function<double(double)>& f, const std::vector<double>& xs) {
  std::size_t best = 0;
  double best_v = f(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = xs[best > 0 ? best - 1 : 0];
  double hi = xs[best + 1 < xs.size() ? best + 1 : xs.size() - 1];
  const double inv_phi = 0.6180339887498949;
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 120 && (d - c) > 1e-14; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  if (fm < best_v) return {fm, mid};
  return {best_v, xs[best]};
}

}  // namespace

DualCheckResult verify_dual_feasibility(const GFunction& g, double alpha, int grid_size,
                                        const DualWitness& witness) {
  if (grid_size < 1000) throw std::invalid_argument("grid_size must be >= 1000");
  const double mu = witness.mu_star;
  const double lambda = witness.lambda_star;

  DualCheckResult result;
  // Branch 0: the constant boundary value at b = 0.
  result.min_value = -mu + lambda * alpha;
  result.argmin_b = 0.0;
  result.branch = 0;

  // Branch 1: mid boundary  b (mu + 1) - mu - lambda (g_mid(b) - alpha), b in (0,1).
  const auto mid_branch = [&](double b) {
    return b * (mu + 1.0) - mu - lambda * (g.mid(b) - alpha);
  };
  std::vector<double> mid_grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    mid_grid[static_cast<std::size_t>(i)] = (i + 0.5) / grid_size;
  }
  const BranchMin mid_min = minimize_on_grid(mid_branch, mid_grid);
  if (mid_min.value < result.min_value) {
    result.min_value = mid_min.value;
    result.argmin_b = mid_min.arg;
    result.branch = 1;
  }

  // Branch 2: out boundary  b (1 - mu) - mu - lambda (g_out(b) - alpha), b in (0,inf),
  // parameterized by b = u/(1-u).
  const auto out_branch_u = [&](double u) {
    const double b = u / (1.0 - u);
    return b * (1.0 - mu) - mu - lambda * (g.out(b) - alpha);
  };
  std::vector<double> out_grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    out_grid[static_cast<std::size_t>(i)] = (i + 0.5) / grid_size;
  }
  const BranchMin out_min = minimize_on_grid(out_branch_u, out_grid);
  if (out_min.value < result.min_value) {
    result.min_value = out_min.value;
    result.argmin_b = out_min.arg / (1.0 - out_min.arg);
    result.branch = 2;
  }

  result.pass = result.min_value >= -1e-6;
  return result;
}

DualCheckResult verify_dual_feasibility(const GFunction& g, double alpha, int grid_size) {
  const DerivedConstants c = compute_constants(g);
  return verify_dual_feasibility(g, alpha, grid_size, dual_witness(alpha, c));
}

namespace {

double factorial_ll(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

// Decode a Lehmer code index into the permutation of {0..m-1}.
void decode_ranking(std::uint64_t code, std::size_t m, std::vector<std::uint32_t>& out) {
  out.clear();
  std::vector<std::uint32_t> pool(m);
  for (std::size_t j = 0; j < m; ++j) pool[j] = static_cast<std::uint32_t>(j);
  std::uint64_t radix = 1;
  for (std::size_t j = 2; j <= m; ++j) radix *= j;
  for (std::size_t k = m; k > 0; --k) {
    radix /= k;
    const auto pick = static_cast<std::size_t>(code / radix);
    code %= radix;
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

}  // namespace

double brute_force_distortion(const MetricInstance& instance, const VoterModel& model, Rule rule) {
  const std::size_t n = instance.num_voters();
  const std::size_t m = instance.num_candidates();
  const double mfact = factorial_ll(m);
  const double total_profiles = std::pow(mfact, static_cast<double>(n));
  if (total_profiles > 1e6) {
    throw std::domain_error("instance too large for exact enumeration: (m!)^n > 1e6");
  }
  if (!model.is_pl() && model.num_voters() != n) {
    throw std::invalid_argument("per-voter model size mismatch");
  }

  const SocialCostTable table = optimal_candidate(instance);
  const double opt_cost = table.costs[table.opt_index];
  if (!(opt_cost > 0.0)) throw std::domain_error("degenerate instance: optimal social cost is 0");

  // All m! rankings and their per-voter probabilities.
  const auto rank_count = static_cast<std::uint64_t>(mfact);
  std::vector<std::vector<std::uint32_t>> rankings(rank_count);
  for (std::uint64_t c = 0; c < rank_count; ++c) decode_ranking(c, m, rankings[c]);
  std::vector<std::vector<double>> voter_rank_prob(n, std::vector<double>(rank_count));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint64_t c = 0; c < rank_count; ++c) {
      voter_rank_prob[i][c] = ranking_probability(instance, model.dist(i), i, rankings[c]);
    }
  }

  VoteProfile profile;
  profile.num_candidates = m;
  profile.rankings.assign(n, {});

  // Mixed-radix enumeration with compensated sums.
  std::vector<std::uint64_t> code(n, 0);
  double prob_sum = 0.0, prob_comp = 0.0;
  double value_sum = 0.0, value_comp = 0.0;
  const auto kahan_add = [](double& sum, double& comp, double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  for (;;) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) prob *= voter_rank_prob[i][code[i]];
    if (prob > 0.0) {
      for (std::size_t i = 0; i < n; ++i) profile.rankings[i] = rankings[code[i]];
      const RuleOutcome outcome = apply_rule(rule, profile);
      double cost = 0.0;
      if (rule == Rule::random_dictator) {
        for (std::size_t j = 0; j < m; ++j) cost += outcome.distribution[j] * table.costs[j];
      } else {
        cost = table.costs[outcome.winner];
      }
      kahan_add(value_sum, value_comp, prob * (cost / opt_cost));
    }
    kahan_add(prob_sum, prob_comp, prob);

    std::size_t pos = 0;
    while (pos < n) {
      if (++code[pos] < rank_count) break;
      code[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }

  if (std::fabs(prob_sum - 1.0) > 1e-9) {
    throw std::logic_error("profile probabilities do not sum to one");
  }
  return value_sum;
}

}  // namespace pvote

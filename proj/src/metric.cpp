#include "pvote/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pvote {

namespace {

std::array<double, 3> pad_point(const std::vector<double>& p, int dim) {
  if (static_cast<int>(p.size()) != dim) {
    throw std::invalid_argument("coordinate dimension mismatch");
  }
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int k = 0; k < dim; ++k) out[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)];
  return out;
}

double point_distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

MetricInstance MetricInstance::euclidean(int dim,
                                         const std::vector<std::vector<double>>& voter_coords,
                                         const std::vector<std::vector<double>>& candidate_coords) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("embedding dim must be 1, 2 or 3");
  std::vector<std::array<double, 3>> voters, candidates;
  voters.reserve(voter_coords.size());
  candidates.reserve(candidate_coords.size());
  for (const auto& p : voter_coords) voters.push_back(pad_point(p, dim));
  for (const auto& p : candidate_coords) candidates.push_back(pad_point(p, dim));
  return from_points(dim, std::move(voters), std::move(candidates));
}

MetricInstance MetricInstance::from_points(int dim, std::vector<std::array<double, 3>> voters,
                                           std::vector<std::array<double, 3>> candidates) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("embedding dim must be 1, 2 or 3");
  if (candidates.size() < 2) throw std::invalid_argument("need at least two candidates");
  if (voters.empty()) throw std::invalid_argument("need at least one voter");
  MetricInstance inst;
  inst.geometry_ = EuclideanEmbedding{dim, std::move(voters), std::move(candidates)};
  return inst;
}

MetricInstance MetricInstance::from_matrix(std::size_t n, std::size_t m, std::vector<double> dist) {
  if (m < 2) throw std::invalid_argument("need at least two candidates");
  if (n < 1) throw std::invalid_argument("need at least one voter");
  const std::size_t k = n + m;
  if (dist.size() != k * k) throw std::invalid_argument("distance matrix must be (n+m)x(n+m)");
  MetricInstance inst;
  inst.geometry_ = ExplicitMatrix{n, m, std::move(dist)};
  return inst;
}

std::size_t MetricInstance::num_voters() const {
  if (is_euclidean()) return embedding().voters.size();
  return matrix().n;
}

std::size_t MetricInstance::num_candidates() const {
  if (is_euclidean()) return embedding().candidates.size();
  return matrix().m;
}

double MetricInstance::voter_candidate_distance(std::size_t voter, std::size_t candidate) const {
  if (is_euclidean()) {
    const auto& e = embedding();
    return point_distance(e.voters[voter], e.candidates[candidate]);
  }
  const auto& mx = matrix();
  const std::size_t k = mx.n + mx.m;
  return mx.dist[voter * k + (mx.n + candidate)];
}

double MetricInstance::candidate_candidate_distance(std::size_t j, std::size_t j_prime) const {
  if (is_euclidean()) {
    const auto& e = embedding();
    return point_distance(e.candidates[j], e.candidates[j_prime]);
  }
  const auto& mx = matrix();
  const std::size_t k = mx.n + mx.m;
  return mx.dist[(mx.n + j) * k + (mx.n + j_prime)];
}

MetricInstance MetricInstance::scaled(double kappa) const {
  if (!(kappa > 0.0)) throw std::invalid_argument("scale factor must be positive");
  MetricInstance out = *this;
  if (out.is_euclidean()) {
    auto& e = std::get<EuclideanEmbedding>(out.geometry_);
    for (auto& p : e.voters)
      for (double& c : p) c *= kappa;
    for (auto& p : e.candidates)
      for (double& c : p) c *= kappa;
  } else {
    auto& mx = std::get<ExplicitMatrix>(out.geometry_);
    for (double& d : mx.dist) d *= kappa;
  }
  return out;
}

MetricValidation validate_metric(const MetricInstance& instance) {
  MetricValidation report;
  if (instance.is_euclidean()) {
    // Euclidean embeddings satisfy all metric axioms by construction.
    return report;
  }
  const auto& mx = instance.matrix();
  const std::size_t k = mx.n + mx.m;
  const auto at = [&](std::size_t a, std::size_t b) { return mx.dist[a * k + b]; };

  for (std::size_t a = 0; a < k; ++a) {
    if (at(a, a) != 0.0) {
      report.structural.push_back("nonzero diagonal at index " + std::to_string(a));
    }
    for (std::size_t b = 0; b < k; ++b) {
      if (at(a, b) < 0.0) {
        report.structural.push_back("negative distance at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
      }
      if (b > a && at(a, b) != at(b, a)) {
        report.structural.push_back("asymmetry at (" + std::to_string(a) + "," +
                                    std::to_string(b) + ")");
      }
    }
  }

  constexpr std::size_t kMaxListed = 100;
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t z = 0; z < k; ++z) {
      if (x == z) continue;
      for (std::size_t y = 0; y < k; ++y) {
        if (y == x || y == z) continue;
        const double excess = at(x, z) - (at(x, y) + at(y, z));
        if (excess > kTriangleTol) {
          ++report.violation_count;
          if (report.violations.size() < kMaxListed) {
            report.violations.push_back({x, y, z, excess});
          }
        }
      }
    }
  }
  report.ok = report.structural.empty() && report.violation_count == 0;
  return report;
}

double social_cost(const MetricInstance& instance, std::size_t candidate) {
  if (candidate >= instance.num_candidates()) throw std::out_of_range("candidate index");
  double sum = 0.0;
  const std::size_t n = instance.num_voters();
  for (std::size_t i = 0; i < n; ++i) sum += instance.voter_candidate_distance(i, candidate);
  return sum;
}

SocialCostTable optimal_candidate(const MetricInstance& instance) {
  SocialCostTable table;
  const std::size_t m = instance.num_candidates();
  table.costs.resize(m);
  for (std::size_t j = 0; j < m; ++j) table.costs[j] = social_cost(instance, j);
  table.opt_index = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (table.costs[j] < table.costs[table.opt_index]) table.opt_index = j;
  }
  return table;
}

double pairwise_ratio(const MetricInstance& instance, std::size_t voter, std::size_t j,
                      std::size_t j_prime) {
  const double dj = instance.voter_candidate_distance(voter, j);
  const double djp = instance.voter_candidate_distance(voter, j_prime);
  if (dj == 0.0 && djp == 0.0) return 1.0;
  if (dj == 0.0) return std::numeric_limits<double>::infinity();
  return djp / dj;
}

}  // namespace pvote

#pragma once

// Metric spaces over voters and candidates: social costs, metric validation,
// and the distance-ratio that drives all pairwise vote probabilities.

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace pvote {

// Absolute slack for triangle-inequality checks on explicit matrices.
inline constexpr double kTriangleTol = 1e-9;

struct EuclideanEmbedding {
  int dim = 1;  // 1, 2 or 3
  std::vector<std::array<double, 3>> voters;      // unused axes are zero
  std::vector<std::array<double, 3>> candidates;
};

struct ExplicitMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> dist;  // (n+m) x (n+m), row-major; voters first
};

class MetricInstance {
 public:
  static MetricInstance euclidean(int dim,
                                  const std::vector<std::vector<double>>& voter_coords,
                                  const std::vector<std::vector<double>>& candidate_coords);
  static MetricInstance from_points(int dim,
                                    std::vector<std::array<double, 3>> voters,
                                    std::vector<std::array<double, 3>> candidates);
  static MetricInstance from_matrix(std::size_t n, std::size_t m, std::vector<double> dist);

  std::size_t num_voters() const;
  std::size_t num_candidates() const;

  double voter_candidate_distance(std::size_t voter, std::size_t candidate) const;
  double candidate_candidate_distance(std::size_t j, std::size_t j_prime) const;

  bool is_euclidean() const { return std::holds_alternative<EuclideanEmbedding>(geometry_); }
  const EuclideanEmbedding& embedding() const { return std::get<EuclideanEmbedding>(geometry_); }
  const ExplicitMatrix& matrix() const { return std::get<ExplicitMatrix>(geometry_); }

  // Same geometry with every distance multiplied by kappa > 0.
  MetricInstance scaled(double kappa) const;

 private:
  std::variant<EuclideanEmbedding, ExplicitMatrix> geometry_;
};

struct TriangleViolation {
  std::size_t x, y, z;  // d(x,z) > d(x,y) + d(y,z) + tol
  double excess;
};

struct MetricValidation {
  bool ok = true;
  std::vector<std::string> structural;  // asymmetry, negative entries, nonzero diagonal
  std::vector<TriangleViolation> violations;
  std::size_t violation_count = 0;  // total found (violations list may be capped)
};

MetricValidation validate_metric(const MetricInstance& instance);

double social_cost(const MetricInstance& instance, std::size_t candidate);

struct SocialCostTable {
  std::vector<double> costs;
  std::size_t opt_index = 0;  // lexicographically smallest argmin
};

SocialCostTable optimal_candidate(const MetricInstance& instance);

// d(i, j') / d(i, j). Conventions: +inf when d(i,j)=0 < d(i,j'), 1 when both
// distances are zero (coincident tie).
double pairwise_ratio(const MetricInstance& instance, std::size_t voter, std::size_t j,
                      std::size_t j_prime);

}  // namespace pvote

#pragma once

// Numerical certification of the two-candidate optimization machinery:
// feasible points of the ratio program, near-tight witnesses, dual
// feasibility of (mu*, lambda*) over the boundary branches, and an exact
// brute-force distortion oracle for tiny instances.

#include <cstdint>
#include <vector>

#include "pvote/bounds.hpp"
#include "pvote/metric.hpp"
#include "pvote/models.hpp"
#include "pvote/rules.hpp"

namespace pvote {

// Per-voter (b_i, w_i) pairs in the scaled form: |b_i - w_i| <= 1 <= b_i + w_i,
// with (1/n) sum g(b_i/w_i) >= alpha.
struct FeasiblePoint {
  std::vector<double> b;
  std::vector<double> w;
  double alpha = 0.0;
};

struct DualWitness {
  double mu_star = 0.0;      // min((gamma_mid/alpha - 1)^-1, (gamma_out/alpha + 1)^-1)
  double lambda_star = 0.0;  // mu_star / alpha
};

DualWitness dual_witness(double alpha, const DerivedConstants& c);

// min((gamma_mid/alpha - 1)^-1, (gamma_out/alpha + 1)^-1); the certified lower
// bound on the optimal value of the ratio program at vote share alpha.
double lemma33_bound(double alpha, const DerivedConstants& c);

double feasible_point_ratio(const FeasiblePoint& p);  // sum b / sum w

// Constraint + vote-share check for a candidate point.
bool is_feasible(const GFunction& g, const FeasiblePoint& p, double tol = 1e-12);

struct FeasibilityViolation {
  int sample = 0;
  double ratio = 0.0;
  double bound = 0.0;
};

struct FeasibilityReport {
  int samples = 0;
  std::vector<FeasibilityViolation> violations;
  double min_margin = 0.0;  // min over samples of (ratio - bound)
};

// Samples random feasible points (rejection over scaled pairs) and checks
// ratio >= lemma33_bound(alpha) - 1e-9 on each.
FeasibilityReport check_feasible_points(const GFunction& g, double alpha, int n, int num_samples,
                                        std::uint64_t seed);

enum class Branch { mid, out };

// Two-atom witness whose ratio approaches the branch value at rate O(1/n):
// mid puts k = ceil(n alpha / g_mid(x*)) voters at (x*_mid, 1 - x*_mid),
// out uses (x*_out, 1 + x*_out); the rest sit at (0, 1). Throws when the
// required k exceeds n (alpha above the branch's reachable vote share).
FeasiblePoint construct_tight_witness(const GFunction& g, double alpha, int n, Branch branch);

// Branch value the witness converges to: (gamma_mid/alpha - 1)^-1 or
// (gamma_out/alpha + 1)^-1.
double branch_bound(Branch branch, double alpha, const DerivedConstants& c);

struct DualCheckResult {
  bool pass = false;
  double min_value = 0.0;  // minimum over the three boundary branches
  double argmin_b = 0.0;
  int branch = 0;  // 0 = constant, 1 = mid boundary, 2 = out boundary
};

// Evaluates the boundary Lagrangian branches at (mu, lambda) over a dense grid
// (plus local refinement) and passes when the minimum is >= -1e-6, certifying
// the linearized program's optimum is nonnegative.
DualCheckResult verify_dual_feasibility(const GFunction& g, double alpha, int grid_size,
                                        const DualWitness& witness);
DualCheckResult verify_dual_feasibility(const GFunction& g, double alpha, int grid_size = 10000);

// Exact expected distortion by enumerating all (m!)^n profiles; requires
// (m!)^n <= 1e6. RandomDictator uses the outcome distribution's expected
// social cost.
double brute_force_distortion(const MetricInstance& instance, const VoterModel& model, Rule rule);

}  // namespace pvote

#pragma once

// Generators for the lower-bound election instances, each paired with the
// per-voter ranking distributions that realize the required pairwise
// marginals on its geometry.

#include <map>
#include <string>
#include <utility>

#include "pvote/bounds.hpp"
#include "pvote/dual.hpp"
#include "pvote/metric.hpp"
#include "pvote/models.hpp"

namespace pvote {

struct ConstructedElection {
  MetricInstance instance;
  VoterModel model;
  double predicted_distortion = 1.0;
  std::string theorem;                    // generator tag
  std::map<std::string, double> params;   // q, a, x_tilde, t, delta, ... for tests
};

// 3-D circle construction for the Plurality lower bound under adversarial
// distributions: spoiler W at (1,0,0), m-1 good candidates on an eps-circle
// in the y-z plane, floor(a n) voters on each good candidate, the rest
// "ambivalent" at (x*_mid,0,0) (mid) or (-x*_out,0,0) (out) voting TopOrLast.
ConstructedElection gen_plurality_lb(int m, long long n, double eps, double zeta,
                                     const GFunction& g, Branch branch);

// Same geometry, PL voting, ambivalent voters at x_hat = 1 - m^(-1/theta).
ConstructedElection gen_plurality_pl_lb(int m, long long n, double eps, double zeta, double theta);

// 1-D RandomDictator lower bound: B at 0, the other m-1 candidates at 1,
// n-1 voters at 0, one voter at x_tilde = u/(1+u) with u = g^-1(1/(m-1)).
ConstructedElection gen_rd_lb(int m, long long n, const GFunction& g);

// 1-D RandomDictator lower bound under PL: single voter at t = (m-1)^(-1/theta).
ConstructedElection gen_rd_pl_lb(int m, long long n, double theta);

// 2-D Borda lower bound: B at the origin, W at (1,0), m-2 candidates at M
// forming an equilateral triangle with side t = m^(1/theta); (1-delta) n
// voters at the origin and delta n at (t,0) with delta = 24 m^(1/theta - 1).
ConstructedElection gen_borda_lb(int m, long long n, double theta);

// Two-candidate pair for the generic deterministic lower bound: a benign
// space and its mirror, with identical expected pairwise vote share 1/2.
// first = benign (electing W costs nothing), second = adverse.
std::pair<ConstructedElection, ConstructedElection> gen_generic_lb_pair(const GFunction& g,
                                                                        Branch branch,
                                                                        long long n);

}  // namespace pvote

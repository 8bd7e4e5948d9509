#ifndef GROWTHLAB_CAYLEY_HPP
#define GROWTHLAB_CAYLEY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/elemset.hpp"

namespace growthlab {

struct DiameterResult {
  int diameter = 0;                    // least k with {I} u A u ... u A^k = <A>
  std::vector<std::uint64_t> sizes;    // cumulative reachable count per radius
  bool saturated = false;
  std::uint64_t reached = 0;           // |<A>| when saturated
  bool generates = false;              // reached == |G|
  bool overflow = false;
};

// BFS from the identity, multiplying by elements of A only (directed sense).
// symmetrize=true uses A u A^-1 instead, for comparison.
DiameterResult diameter(const ElementSet& A, bool symmetrize = false,
                        const Budget& budget = Budget::from_env());

struct BabaiRow {
  std::uint32_t p = 0;
  int n = 0;
  std::uint64_t group_order = 0;
  int diameter = -1;  // -1 when skipped
  double log_order = 0.0;
  double ratio1 = 0.0;  // diam / log|G|
  double ratio2 = 0.0;  // diam / (log|G|)^2
  bool skipped = false;
};

// One row per prime; rows above the feasibility cap are marked skipped.
std::vector<BabaiRow> babai_curve(const std::vector<std::uint32_t>& primes, int n,
                                  const std::string& gens_recipe = "standard",
                                  std::uint64_t order_cap = 20000000);

std::string babai_csv(const std::vector<BabaiRow>& rows);

enum class CheckStatus { Pass, Fail, NotApplicable };

struct CoverCheck {
  CheckStatus status = CheckStatus::NotApplicable;
  std::uint64_t set_size = 0;
  std::uint64_t group_order = 0;
  double threshold = 0.0;
  std::uint64_t covered = 0;
};

// |A| > |G|/2 implies A*A = G (exact check; not-applicable below the bound).
CoverCheck rastropor_check(const ElementSet& A, const Budget& budget = Budget::from_env());

// |A| > 2|G|^{1 - 1/(3(n+1))} implies A*A*A = G.
CoverCheck np_threshold_check(const ElementSet& A, const Budget& budget = Budget::from_env());

struct SpectralEstimate {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
  bool converged = false;
};

// Power iteration on the normalized adjacency operator of Gamma(<A>, A u A^-1),
// with the constant vector deflated. Multiset semantics for repeated edges.
SpectralEstimate spectral_gap(const ElementSet& A, double tol = 1e-8,
                              std::size_t vertex_cap = 200000, int max_iter = 100000);

}  // namespace growthlab

#endif

#ifndef GROWTHLAB_STRUCTURE_HPP
#define GROWTHLAB_STRUCTURE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "growthlab/elemset.hpp"

namespace growthlab {

struct Sl3Flags {
  bool fixes_point = false;              // common eigenvector over F_p
  bool fixes_line = false;               // common invariant plane over F_p
  bool preserves_quadratic_form = false; // nondegenerate symmetric Q with g^T Q g = Q
  bool abelian_index_le6 = false;
  bool order_le_1080 = false;
  bool full_group = false;

  bool order_flags_known = false;   // closure fit the cap
  bool form_search_exhaustive = true;
  bool abelian_search_conclusive = true;
  std::uint64_t closure_size = 0;   // 0 when unknown

  bool any_proper_flag() const {
    return fixes_point || fixes_line || preserves_quadratic_form || abelian_index_le6 || order_le_1080;
  }
};

Sl3Flags classify_sl3(const ElementSet& A, std::size_t closure_cap = 1000000);

struct Sl2Flags {
  bool in_borel = false;
  bool in_torus_normalizer = false;
  bool order_le_120 = false;
  bool full_group = false;

  bool order_flags_known = false;
  std::uint64_t closure_size = 0;
  std::uint64_t index = 0;      // [G : <A>] when closure known
  int galois_index_ok = -1;     // 1 pass, 0 fail, -1 not applicable (p <= 11 or not proper)
};

Sl2Flags classify_sl2(const ElementSet& A, std::size_t closure_cap = 1000000);

/// The nine conjugacy types of subgroups of the unitriangular group of SL3.
enum class UnipotentType {
  kTrivial,
  kFull,
  kRowPlane,       // free (1,2) and (1,3) entries
  kColumnPlane,    // free (1,3) and (2,3) entries
  kCenterLine,     // free (1,3) entry
  kRootLine12,     // one-parameter in the (1,2) root direction
  kRootLine23,     // one-parameter in the (2,3) root direction
  kBalancedPlane,  // equal (1,2)/(2,3) entries plus the center
  kPrincipalLine,  // one-parameter regular unipotent curve (p > 2)
};

const char* unipotent_type_name(UnipotentType t);

// Decides the type from F_p-rational invariants: the image in U/Z and the
// intersection with the center Z. Requires H closed and unitriangular.
UnipotentType betson_classify(const ElementSet& H);

struct ParabolicParts {
  GroupElement pi_plus;                 // block part, third column cleared
  GroupElement pi_one;                  // SL2 component (s * top-left block)
  std::uint32_t pi_two = 0;             // the (3,3) entry s^2
  std::uint32_t sqrt_pi_two = 0;        // canonical square root used for pi_one
  std::uint32_t e = 0, f = 0;           // the cleared column, for reassembly
  std::optional<GroupElement> pi_minus; // present when (3,3) = 1
};

// Splits an element of the subgroup with bottom row (0, 0, square) into its
// block components. Throws when the element is outside that subgroup.
ParabolicParts parabolic_decompose(const GroupElement& g);

struct UnipotentFactorization {
  GroupElement u1, u2, u1p, u2p;  // upper, lower, upper, lower; product = g
};

// Total on SL3(F_p): writes g as a product upper * lower * upper * lower of
// unitriangular factors via row/column elimination.
UnipotentFactorization u1u2_factorize(const GroupElement& g);

}  // namespace growthlab

#endif

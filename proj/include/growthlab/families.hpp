#ifndef GROWTHLAB_FAMILIES_HPP
#define GROWTHLAB_FAMILIES_HPP

#include <cstdint>
#include <string>

#include "growthlab/elemset.hpp"

namespace growthlab {

/// The explicit slowly-growing set families used as regression fixtures.
enum class FamilyId {
  kTorusPowers,    // diag(x^n, x^-n), 1 <= n <= N
  kDihedral,       // torus window plus its antidiagonal coset, -N..N
  kBorelEps,       // [[n, m], [0, n^-1]], 1 <= n <= floor(N^eps), 1 <= m <= N
  kBorelFiber,     // [[x^n, m], [0, x^-n]], 1 <= n <= N, m in F_p
  kHeisenbergBox,  // unitriangular box |a|,|c| <= N, |b| <= N^2
};

FamilyId family_from_string(const std::string& name);
const char* family_name(FamilyId id);

struct FamilySpec {
  FamilyId id;
  std::uint32_t p = 0;
  std::uint64_t N = 0;
  std::uint64_t x = 0;    // generator of F_p^*; 0 = auto-select the least one
  double eps = 0.0;       // kBorelEps only

  int dimension() const { return id == FamilyId::kHeisenbergBox ? 3 : 2; }
};

// Closed-form |A| for a valid spec.
std::uint64_t family_size_formula(const FamilySpec& spec);

// The exact displayed set; validates parameters (generator order, ranges).
ElementSet build_family(const FamilySpec& spec);

struct FamilyRegression {
  FamilySpec spec;
  GrowthReport growth;
  std::string bound;  // human-readable inequality that was checked
  std::uint64_t bound_value = 0;
  bool pass = false;
  bool exact_match_checked = false;  // frozen |AAA| table compared
};

// Runs triple_stats and asserts the family's growth bound: the exact "< 3|A|"
// bounds where the constant is explicit, committed reference tables otherwise.
FamilyRegression family_regression(const FamilySpec& spec, const Budget& budget = Budget::from_env());

// Reference |AAA| for the box family at N in [1, 6], valid whenever
// p >= 12 N^2 + 1 (no wraparound); measured once by direct enumeration.
std::uint64_t heisenberg_reference_aaa(std::uint64_t N);

}  // namespace growthlab

#endif

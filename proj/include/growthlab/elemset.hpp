#ifndef GROWTHLAB_ELEMSET_HPP
#define GROWTHLAB_ELEMSET_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/field.hpp"

namespace growthlab {

/// Deduplicated set of group elements, stored as sorted canonical codes.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(const FieldParams& fp) : fp_(fp) {}
  ElementSet(const FieldParams& fp, std::vector<Code> sorted_codes);

  static ElementSet from_elements(const std::vector<GroupElement>& elems);

  const FieldParams& params() const { return fp_; }
  const std::vector<Code>& codes() const { return codes_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }

  bool contains(Code c) const;
  bool contains(const GroupElement& g) const { return contains(g.encode()); }

  GroupElement element(std::size_t i) const { return GroupElement::decode(fp_, codes_[i]); }
  std::vector<GroupElement> elements() const;

  ElementSet inverses() const;
  // A u A^-1 u {1}
  ElementSet symmetrized_with_identity() const;
  ElementSet unioned(const ElementSet& other) const;
  ElementSet intersect(const ElementSet& other) const;

  bool operator==(const ElementSet& o) const { return fp_ == o.fp_ && codes_ == o.codes_; }

  void write(std::ostream& os) const;             // header "n p count", then one code per line
  static ElementSet read(std::istream& is);
  void save(const std::string& path) const;
  static ElementSet load(const std::string& path);

 private:
  FieldParams fp_;
  std::vector<Code> codes_;
};

struct SetResult {
  ElementSet set;
  bool overflow = false;  // budget hit; contents are a flagged lower bound
};

SetResult product(const ElementSet& A, const ElementSet& B, const Budget& budget = Budget::from_env());

struct BallProfile {
  // sizes[r] = |A_r| for r = 0..k
  std::vector<std::uint64_t> sizes;
  bool overflow = false;
  bool saturated = false;      // A_{r+1} = A_r happened at some r <= k
  std::size_t saturation_radius = 0;
};

struct BallResult {
  BallProfile profile;
  ElementSet set;  // A_k (or the last completed radius when overflowed)
};

BallResult ball(const ElementSet& A, int k, const Budget& budget = Budget::from_env());

struct GrowthReport {
  std::uint64_t size_a = 0;
  std::uint64_t size_aa = 0;
  std::uint64_t size_aaa = 0;
  double delta = 0.0;  // log|AAA|/log|A| - 1, natural log; 0 when |A| <= 1
  bool lower_bound = false;
  std::optional<BallProfile> profile;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

GrowthReport triple_stats(const ElementSet& A, const Budget& budget = Budget::from_env());

/// Exact verification of the three coset-counting growth inequalities
/// for a subgroup H: product vs cosets, symmetrized intersection, and
/// the ball transfer |A_{2k+1}| * |E| >= |E_k| * |A| with E = A^-1 A n H.
struct SubgroupChecks {
  std::uint64_t cosets_met = 0;  // r
  std::uint64_t product_lhs = 0, product_rhs = 0;        // |A*A| >= r * |A n H|
  std::uint64_t intersect_lhs_times_r = 0, intersect_rhs = 0;  // r * |A^-1 A n H| >= |A|
  int ball_k = 2;
  std::uint64_t ball_lhs = 0, ball_rhs = 0;  // |A_{2k+1}| * |E| >= |E_k| * |A|
  bool product_pass = false, intersect_pass = false, ball_pass = false;
  bool pass() const { return product_pass && intersect_pass && ball_pass; }
};

SubgroupChecks subgroup_inequality_checks(const ElementSet& A, const ElementSet& H, int k = 2,
                                          bool trust_closed = false,
                                          const Budget& budget = Budget::from_env());

// Subgroup generated by A, or nullopt if it exceeds cap.
std::optional<ElementSet> closure(const ElementSet& A, std::size_t cap);

bool is_closed_subgroup(const ElementSet& H);

}  // namespace growthlab

#endif

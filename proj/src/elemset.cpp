#include "growthlab/elemset.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace growthlab {

namespace {

std::vector<GroupElement> decode_all(const FieldParams& fp, const std::vector<Code>& codes) {
  std::vector<GroupElement> out;
  out.reserve(codes.size());
  for (Code c : codes) out.push_back(GroupElement::decode(fp, c));
  return out;
}

}  // namespace

ElementSet::ElementSet(const FieldParams& fp, std::vector<Code> sorted_codes)
    : fp_(fp), codes_(std::move(sorted_codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
}

ElementSet ElementSet::from_elements(const std::vector<GroupElement>& elems) {
  if (elems.empty()) throw ConfigError("cannot infer params from an empty element list");
  std::vector<Code> codes;
  codes.reserve(elems.size());
  for (const auto& g : elems) {
    if (g.params() != elems[0].params()) throw ConfigError("params mismatch in element list");
    codes.push_back(g.encode());
  }
  return ElementSet(elems[0].params(), std::move(codes));
}

bool ElementSet::contains(Code c) const {
  return std::binary_search(codes_.begin(), codes_.end(), c);
}

std::vector<GroupElement> ElementSet::elements() const { return decode_all(fp_, codes_); }

ElementSet ElementSet::inverses() const {
  std::vector<Code> out;
  out.reserve(codes_.size());
  for (Code c : codes_) out.push_back(inv(GroupElement::decode(fp_, c)).encode());
  return ElementSet(fp_, std::move(out));
}

ElementSet ElementSet::symmetrized_with_identity() const {
  std::vector<Code> out = codes_;
  for (Code c : codes_) out.push_back(inv(GroupElement::decode(fp_, c)).encode());
  out.push_back(GroupElement::identity(fp_).encode());
  return ElementSet(fp_, std::move(out));
}

ElementSet ElementSet::unioned(const ElementSet& other) const {
  if (fp_ != other.fp_) throw ConfigError("params mismatch in union");
  std::vector<Code> out = codes_;
  out.insert(out.end(), other.codes_.begin(), other.codes_.end());
  return ElementSet(fp_, std::move(out));
}

ElementSet ElementSet::intersect(const ElementSet& other) const {
  if (fp_ != other.fp_) throw ConfigError("params mismatch in intersection");
  std::vector<Code> out;
  std::set_intersection(codes_.begin(), codes_.end(), other.codes_.begin(), other.codes_.end(),
                        std::back_inserter(out));
  return ElementSet(fp_, std::move(out));
}

void ElementSet::write(std::ostream& os) const {
  os << fp_.n << " " << fp_.p << " " << codes_.size() << "\n";
  for (Code c : codes_) os << code_to_string(c) << "\n";
}

ElementSet ElementSet::read(std::istream& is) {
  int n;
  std::uint32_t p;
  std::size_t count;
  if (!(is >> n >> p >> count)) throw ConfigError("bad element-set header (want: n p count)");
  FieldParams fp(p, n);
  std::vector<Code> codes;
  codes.reserve(count);
  std::string tok;
  for (std::size_t i = 0; i < count; i++) {
    if (!(is >> tok)) throw ConfigError("element-set file truncated");
    Code c = code_from_string(tok);
    GroupElement::decode(fp, c);  // validates
    codes.push_back(c);
  }
  return ElementSet(fp, std::move(codes));
}

void ElementSet::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  write(f);
}

ElementSet ElementSet::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  return read(f);
}

SetResult product(const ElementSet& A, const ElementSet& B, const Budget& budget) {
  if (A.params() != B.params()) throw ConfigError("params mismatch in product");
  SetResult res;
  // Loop order: outer over the smaller operand; contents do not depend on it.
  const ElementSet& small = A.size() <= B.size() ? A : B;
  const ElementSet& large = A.size() <= B.size() ? B : A;
  const bool small_is_left = &small == &A;
  auto ssmall = decode_all(small.params(), small.codes());
  auto slarge = decode_all(large.params(), large.codes());
  CodeHashSet out(small.size() * 2 + 16);
  for (const auto& s : ssmall) {
    for (const auto& l : slarge) {
      Code c = small_is_left ? mul(s, l).encode() : mul(l, s).encode();
      if (out.insert(c) && out.size() > budget.max_codes) {
        res.overflow = true;
        res.set = ElementSet(A.params(), out.sorted());
        return res;
      }
    }
  }
  res.set = ElementSet(A.params(), out.sorted());
  return res;
}

BallResult ball(const ElementSet& A, int k, const Budget& budget) {
  if (k < 0) throw ConfigError("ball radius must be >= 0");
  BallResult res;
  const FieldParams fp = A.params();
  auto gens = decode_all(fp, A.symmetrized_with_identity().codes());

  CodeHashSet seen;
  Code id = GroupElement::identity(fp).encode();
  seen.insert(id);
  std::vector<Code> frontier = {id};
  res.profile.sizes.push_back(1);  // |A_0| = 1

  for (int r = 1; r <= k; r++) {
    if (res.profile.saturated) {
      res.profile.sizes.push_back(res.profile.sizes.back());
      continue;
    }
    std::vector<Code> next;
    for (Code fc : frontier) {
      GroupElement f = GroupElement::decode(fp, fc);
      for (const auto& g : gens) {
        Code c = mul(f, g).encode();
        if (seen.insert(c)) {
          next.push_back(c);
          if (seen.size() > budget.max_codes) {
            res.profile.overflow = true;
            res.profile.sizes.push_back(seen.size());
            res.set = ElementSet(fp, seen.sorted());
            return res;
          }
        }
      }
    }
    if (next.empty()) {
      res.profile.saturated = true;
      res.profile.saturation_radius = static_cast<std::size_t>(r - 1);
    }
    res.profile.sizes.push_back(seen.size());
    frontier = std::move(next);
  }
  if (!res.profile.saturated && frontier.empty()) {
    res.profile.saturated = true;
    res.profile.saturation_radius = static_cast<std::size_t>(k);
  }
  res.set = ElementSet(fp, seen.sorted());
  return res;
}

GrowthReport triple_stats(const ElementSet& A, const Budget& budget) {
  if (A.empty()) throw ConfigError("triple_stats needs a non-empty set");
  auto t0 = std::chrono::steady_clock::now();
  GrowthReport rep;
  rep.size_a = A.size();
  SetResult aa = product(A, A, budget);
  rep.size_aa = aa.set.size();
  SetResult aaa = product(aa.set, A, budget);
  rep.size_aaa = aaa.set.size();
  rep.lower_bound = aa.overflow || aaa.overflow;
  rep.delta = rep.size_a <= 1 ? 0.0
                              : std::log((double)rep.size_aaa) / std::log((double)rep.size_a) - 1.0;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::optional<ElementSet> closure(const ElementSet& A, std::size_t cap) {
  if (cap < 1) throw ConfigError("closure cap must be >= 1");
  const FieldParams fp = A.params();
  auto gens = decode_all(fp, A.symmetrized_with_identity().codes());
  CodeHashSet seen;
  Code id = GroupElement::identity(fp).encode();
  seen.insert(id);
  std::vector<Code> frontier = {id};
  while (!frontier.empty()) {
    std::vector<Code> next;
    for (Code fc : frontier) {
      GroupElement f = GroupElement::decode(fp, fc);
      for (const auto& g : gens) {
        Code c = mul(f, g).encode();
        if (seen.insert(c)) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(c);
        }
      }
    }
    frontier = std::move(next);
  }
  return ElementSet(fp, seen.sorted());
}

bool is_closed_subgroup(const ElementSet& H) {
  if (H.empty()) return false;
  auto elems = H.elements();
  for (const auto& g : elems)
    if (!H.contains(inv(g).encode())) return false;
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (!H.contains(mul(a, b).encode())) return false;
  return true;
}

SubgroupChecks subgroup_inequality_checks(const ElementSet& A, const ElementSet& H, int k,
                                          bool trust_closed, const Budget& budget) {
  if (A.params() != H.params()) throw ConfigError("params mismatch");
  if (A.empty() || H.empty()) throw ConfigError("empty input set");
  if (k < 1) throw ConfigError("ball transfer needs k >= 1");
  if (!trust_closed && !is_closed_subgroup(H)) throw ConfigError("H is not closed under the group law");

  SubgroupChecks out;
  out.ball_k = k;
  auto ha = H.elements();

  // Canonical coset label of gH: min over h in H of encode(g*h).
  CodeHashSet labels;
  for (const auto& g : A.elements()) {
    Code best = mul(g, ha[0]).encode();
    for (std::size_t i = 1; i < ha.size(); i++) {
      Code c = mul(g, ha[i]).encode();
      if (c < best) best = c;
    }
    labels.insert(best);
  }
  out.cosets_met = labels.size();

  SetResult aa = product(A, A, budget);
  if (aa.overflow) throw CapError("budget exceeded in subgroup checks");
  out.product_lhs = aa.set.size();
  out.product_rhs = out.cosets_met * A.intersect(H).size();
  out.product_pass = out.product_lhs >= out.product_rhs;

  SetResult ainv_a = product(A.inverses(), A, budget);
  ElementSet E = ainv_a.set.intersect(H);
  out.intersect_lhs_times_r = out.cosets_met * E.size();
  out.intersect_rhs = A.size();
  out.intersect_pass = out.intersect_lhs_times_r >= out.intersect_rhs;

  BallResult ek = ball(E, k, budget);
  BallResult a2k1 = ball(A, 2 * k + 1, budget);
  if (ek.profile.overflow || a2k1.profile.overflow)
    throw CapError("budget exceeded in subgroup checks");
  out.ball_lhs = a2k1.set.size() * (std::uint64_t)E.size();
  out.ball_rhs = ek.set.size() * (std::uint64_t)A.size();
  out.ball_pass = out.ball_lhs >= out.ball_rhs;
  return out;
}

}  // namespace growthlab

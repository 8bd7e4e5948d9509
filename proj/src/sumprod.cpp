#include "growthlab/sumprod.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace growthlab {

void RingSet::insert(std::uint64_t a, std::uint64_t b) {
  if (m_ == 1 && b != 0) throw ConfigError("one-component set got a second component");
  std::uint64_t v = pack(a, b);
  auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
  if (it == elems_.end() || *it != v) elems_.insert(it, v);
}

bool RingSet::contains(std::uint64_t a, std::uint64_t b) const {
  return std::binary_search(elems_.begin(), elems_.end(), pack(a, b));
}

void RingSet::write(std::ostream& os) const {
  os << m_ << " " << p_ << " " << elems_.size() << "\n";
  for (auto v : elems_) {
    if (m_ == 1)
      os << v << "\n";
    else
      os << v % p_ << "," << v / p_ << "\n";
  }
}

RingSet RingSet::read(std::istream& is) {
  int m;
  std::uint32_t p;
  std::size_t count;
  if (!(is >> m >> p >> count)) throw ConfigError("bad ring-set header (want: m p count)");
  RingSet s(p, m);
  std::string tok;
  for (std::size_t i = 0; i < count; i++) {
    if (!(is >> tok)) throw ConfigError("ring-set file truncated");
    auto comma = tok.find(',');
    if (m == 1) {
      if (comma != std::string::npos) throw ConfigError("one-component set line has a comma");
      s.insert(std::stoull(tok) % p);
    } else {
      if (comma == std::string::npos) throw ConfigError("two-component set line needs a comma");
      s.insert(std::stoull(tok.substr(0, comma)) % p, std::stoull(tok.substr(comma + 1)) % p);
    }
  }
  return s;
}

void RingSet::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open " + path + " for writing");
  write(f);
}

RingSet RingSet::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  return read(f);
}

namespace {

RingSet combine(const RingSet& A, const RingSet& B, bool add, bool negate_b) {
  if (A.modulus() != B.modulus() || A.components() != B.components())
    throw ConfigError("ring-set modulus/component mismatch");
  const std::uint64_t p = A.modulus();
  RingSet out(A.modulus(), A.components());
  std::vector<std::uint64_t> vals;
  vals.reserve(A.size() * B.size());
  for (auto x : A.packed())
    for (auto y : B.packed()) {
      std::uint64_t xa = x % p, xb = x / p, ya = y % p, yb = y / p;
      if (negate_b) {
        ya = (p - ya) % p;
        yb = (p - yb) % p;
      }
      std::uint64_t ra, rb;
      if (add) {
        ra = (xa + ya) % p;
        rb = (xb + yb) % p;
      } else {
        ra = xa * ya % p;
        rb = xb * yb % p;
      }
      vals.push_back(ra + rb * p);
    }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  RingSet r(A.modulus(), A.components());
  for (auto v : vals) r.insert(v % p, v / p);
  return r;
}

}  // namespace

RingSet ring_add(const RingSet& A, const RingSet& B) { return combine(A, B, true, false); }
RingSet ring_sub(const RingSet& A, const RingSet& B) { return combine(A, B, true, true); }
RingSet ring_mul(const RingSet& A, const RingSet& B) { return combine(A, B, false, false); }

GkResult gk_check(const RingSet& A, const RingSet& Y) {
  if (A.components() != 1 || Y.components() != 1) throw ConfigError("gk_check works over F_p");
  if (A.empty() || Y.empty()) throw ConfigError("gk_check needs non-empty sets");
  if (Y.contains(0)) throw ConfigError("Y must avoid 0");
  const std::uint32_t p = A.modulus();
  RingSet S = ring_mul(Y, A);
  // Y^2 means elementwise squares, not Y*Y.
  RingSet T2(p, 1);
  for (auto y : Y.packed()) T2.insert((std::uint64_t)y * y % p);
  RingSet acc = ring_add(S, S);
  acc = ring_sub(acc, S);
  acc = ring_sub(acc, S);
  acc = ring_add(acc, T2);
  acc = ring_sub(acc, T2);
  GkResult res;
  res.lhs = acc.size();
  res.bound_num = std::min<std::uint64_t>((std::uint64_t)A.size() * Y.size(), p);
  res.pass = 2 * res.lhs > res.bound_num;
  return res;
}

SumProdStats sumprod_stats(const RingSet& A) {
  if (A.empty()) throw ConfigError("sumprod_stats needs a non-empty set");
  SumProdStats s;
  s.size_a = A.size();
  s.sum_size = ring_add(A, A).size();
  s.prod_size = ring_mul(A, A).size();
  std::uint64_t mx = std::max(s.sum_size, s.prod_size);
  s.exponent = s.size_a <= 1 ? 0.0 : std::log((double)mx) / std::log((double)s.size_a) - 1.0;
  return s;
}

bool roots_injective(const ElementSet& D) {
  const FieldParams fp = D.params();
  if (fp.n != 3) throw ConfigError("root injectivity is defined for SL3 diagonal sets");
  auto elems = D.elements();
  for (const auto& d : elems)
    if (!is_diagonal(d)) throw ConfigError("D must be diagonal");
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) {
      if (i == j) continue;
      std::vector<std::uint64_t> vals;
      for (const auto& d : elems) vals.push_back(fp.mul(d.at(i, i), fp.inv(d.at(j, j))));
      std::sort(vals.begin(), vals.end());
      if (std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return false;
    }
  return true;
}

namespace {

// Smallest subgroup containing A and stable under conjugation by <D>:
// breadth-first closure under s -> s*a (a in A u A^-1) and s -> d s d^-1.
ElementSet conjugation_orbit_group(const ElementSet& A, const ElementSet& D, const Budget& budget) {
  const FieldParams fp = A.params();
  std::vector<GroupElement> mul_gens;
  for (const auto& a : A.elements()) {
    mul_gens.push_back(a);
    mul_gens.push_back(inv(a));
  }
  std::vector<std::pair<GroupElement, GroupElement>> conj_gens;
  for (const auto& d : D.elements()) {
    conj_gens.push_back({d, inv(d)});
    conj_gens.push_back({inv(d), d});
  }
  CodeHashSet seen;
  Code id = GroupElement::identity(fp).encode();
  seen.insert(id);
  std::vector<Code> frontier = {id};
  while (!frontier.empty()) {
    std::vector<Code> next;
    for (Code fc : frontier) {
      GroupElement s = GroupElement::decode(fp, fc);
      auto push = [&](const GroupElement& g) {
        if (seen.insert(g.encode())) {
          if (seen.size() > budget.max_codes) throw CapError("orbit closure exceeded budget");
          next.push_back(g.encode());
        }
      };
      for (const auto& a : mul_gens) push(mul(s, a));
      for (const auto& [d, di] : conj_gens) push(mul(mul(d, s), di));
    }
    frontier = std::move(next);
  }
  return ElementSet(fp, seen.sorted());
}

}  // namespace

ForgliResult forgli_check(const ElementSet& A, const ElementSet& D, const Budget& budget) {
  const FieldParams fp = A.params();
  if (fp.n != 3) throw ConfigError("this check runs inside SL3");
  if (fp.p <= 3) throw ConfigError("needs p > 3");
  if (D.params() != fp) throw ConfigError("params mismatch");
  if (A.empty() || D.empty()) throw ConfigError("empty input set");
  for (const auto& u : A.elements())
    if (!is_upper_unitriangular(u)) throw ConfigError("A must be upper unitriangular");
  if (!roots_injective(D)) throw ConfigError("the root maps must be injective on D");

  ForgliResult res;
  res.size_a = A.size();
  res.size_d = D.size();

  BallResult b = ball(A.unioned(D), 20, budget);
  if (b.profile.overflow) throw CapError("ball budget exceeded");
  std::uint64_t lhs = 0;
  for (Code c : b.set.codes())
    if (is_upper_unitriangular(GroupElement::decode(fp, c))) lhs++;
  res.lhs = lhs;

  ElementSet orbit = conjugation_orbit_group(A, D, budget);
  if (orbit.size() <= 4096 && !is_closed_subgroup(orbit))
    throw ConfigError("orbit closure is not a subgroup; implementation bug");
  res.orbit_group = orbit.size();

  unsigned __int128 l = (unsigned __int128)res.lhs * ((std::uint64_t)res.size_a * res.size_d + res.orbit_group);
  unsigned __int128 r = (unsigned __int128)res.size_a * res.size_d * res.orbit_group;
  res.pass = l > r;
  return res;
}

OgrodoResult ogrodo_ring_check(const RingSet& A, const RingSet& Y) {
  if (A.components() != 1 || Y.components() != 1) throw ConfigError("this instance runs over F_p");
  if (A.empty() || Y.empty()) throw ConfigError("empty input set");
  const std::uint32_t p = A.modulus();
  OgrodoResult res;
  res.size_a = A.size();

  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  auto invmod = [&](std::uint64_t a) { return powmod(a, p - 2); };

  // No-fixed-point condition, tested directly on Y^-1 Y.
  for (auto ya : Y.packed())
    for (auto yb : Y.packed()) {
      if (ya == 0 || yb == 0) throw ConfigError("Y must avoid 0");
      std::uint64_t q = invmod(ya) * yb % p;
      if (q == 1) continue;
      for (std::uint64_t g = 1; g < p; g++)
        if (q * g % p == g) return res;  // not applicable
    }
  res.action_count = Y.size();

  // Y_2 = products of at most 2 elements of Y u Y^-1 u {1}.
  RingSet y1(p, 1);
  y1.insert(1);
  for (auto y : Y.packed()) {
    y1.insert(y);
    y1.insert(invmod(y));
  }
  RingSet y2 = ring_mul(y1, y1);
  RingSet S = ring_mul(y2, A);

  // additive radius-6 ball of S
  std::vector<char> cur(p, 0), gens(p, 0);
  cur[0] = 1;
  gens[0] = 1;
  for (auto s : S.packed()) {
    gens[s] = 1;
    gens[(p - s % p) % p] = 1;
  }
  for (int round = 0; round < 6; round++) {
    std::vector<char> next = cur;
    for (std::uint64_t a = 0; a < p; a++) {
      if (!cur[a]) continue;
      for (std::uint64_t g = 0; g < p; g++)
        if (gens[g]) next[(a + g) % p] = 1;
    }
    cur = std::move(next);
  }
  for (std::uint64_t a = 0; a < p; a++) res.lhs += cur[a];

  // R = additive group generated by <Y>(<A>): {0} or all of F_p.
  bool a_nonzero = false;
  for (auto a : A.packed())
    if (a % p != 0) a_nonzero = true;
  res.orbit_group = a_nonzero ? p : 1;

  std::uint64_t bound = std::min<std::uint64_t>((std::uint64_t)res.size_a * res.action_count, res.orbit_group);
  res.status = 2 * res.lhs > bound ? CheckStatus::Pass : CheckStatus::Fail;
  return res;
}

OgrodoResult ogrodo_conj_check(const ElementSet& A, const ElementSet& Y, const Budget& budget) {
  const FieldParams fp = A.params();
  if (fp.n != 3) throw ConfigError("this instance runs inside SL3");
  if (Y.params() != fp) throw ConfigError("params mismatch");
  if (A.empty() || Y.empty()) throw ConfigError("empty input set");
  for (const auto& u : A.elements())
    if (!is_upper_unitriangular(u)) throw ConfigError("A must be upper unitriangular");
  for (const auto& t : Y.elements())
    if (!is_diagonal(t)) throw ConfigError("Y must be diagonal");

  OgrodoResult res;
  res.size_a = A.size();

  // Condition on Y^-1 Y: a non-scalar diagonal element fixing a non-trivial
  // unitriangular element must not occur; equivalent to distinct diagonal
  // entries outside the scalars.
  auto yelems = Y.elements();
  for (const auto& t1 : yelems)
    for (const auto& t2 : yelems) {
      GroupElement q = mul(inv(t1), t2);
      if (is_scalar(q)) continue;
      if (q.at(0, 0) == q.at(1, 1) || q.at(1, 1) == q.at(2, 2) || q.at(0, 0) == q.at(2, 2))
        return res;  // fixes a root subgroup pointwise: not applicable
    }

  // Count distinct conjugation actions: (t11/t22, t22/t33) determines one.
  {
    std::vector<std::uint64_t> actions;
    for (const auto& t : yelems)
      actions.push_back(fp.mul(t.at(0, 0), fp.inv(t.at(1, 1))) * fp.p +
                        fp.mul(t.at(1, 1), fp.inv(t.at(2, 2))));
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    res.action_count = actions.size();
  }

  BallResult y2 = ball(Y, 2, budget);
  std::vector<Code> scodes;
  for (const auto& t : y2.set.elements()) {
    GroupElement ti = inv(t);
    for (const auto& a : A.elements()) scodes.push_back(mul(mul(t, a), ti).encode());
  }
  ElementSet S(fp, std::move(scodes));
  BallResult s6 = ball(S, 6, budget);
  if (s6.profile.overflow) throw CapError("ball budget exceeded");
  res.lhs = s6.set.size();

  ElementSet R = conjugation_orbit_group(A, Y, budget);
  res.orbit_group = R.size();

  std::uint64_t bound = std::min<std::uint64_t>((std::uint64_t)res.size_a * res.action_count, res.orbit_group);
  res.status = 2 * res.lhs > bound ? CheckStatus::Pass : CheckStatus::Fail;
  return res;
}

}  // namespace growthlab

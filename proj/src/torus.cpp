#include "growthlab/torus.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace growthlab {

namespace {

// Canonical key for the matrix algebra spanned by {I, g, ..., g^{n-1}}:
// row-reduced echelon basis packed into a string of residues. Two regular
// semisimple elements commute exactly when they span the same algebra.
std::string span_key(const GroupElement& g) {
  const FieldParams fp = g.params();
  const int d = fp.dim();
  const std::uint64_t p = fp.p;
  std::vector<std::vector<std::uint64_t>> rows;
  GroupElement pow = GroupElement::identity(fp);
  for (int k = 0; k < fp.n; k++) {
    std::vector<std::uint64_t> row(d);
    for (int i = 0; i < d; i++) row[i] = pow.entry(i);
    rows.push_back(row);
    pow = mul(pow, g);
  }
  // Gaussian elimination to reduced echelon form.
  int r = 0;
  for (int c = 0; c < d && r < (int)rows.size(); c++) {
    int piv = -1;
    for (int i = r; i < (int)rows.size(); i++)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    std::uint64_t s = fp.inv(rows[r][c]);
    for (int j = 0; j < d; j++) rows[r][j] = rows[r][j] * s % p;
    for (int i = 0; i < (int)rows.size(); i++) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint64_t f = rows[i][c];
      for (int j = 0; j < d; j++) rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
    }
    r++;
  }
  std::string key;
  key.reserve(rows.size() * d * 3);
  for (auto& row : rows)
    for (auto v : row) {
      key.push_back(static_cast<char>(v & 0xff));
      key.push_back(static_cast<char>((v >> 8) & 0xff));
      key.push_back(static_cast<char>((v >> 16) & 0xff));
    }
  return key;
}

}  // namespace

TorusClusterReport torus_clusters(const ElementSet& A, int k, const Budget& budget) {
  if (k < 1) throw ConfigError("torus_clusters needs k >= 1");
  TorusClusterReport rep;
  BallResult b = ball(A, k, budget);
  rep.overflow = b.profile.overflow;
  rep.ball_size = b.set.size();
  const FieldParams fp = A.params();

  // Group regular semisimple ball elements by the torus containing them.
  std::map<std::string, GroupElement> reps;
  for (Code c : b.set.codes()) {
    GroupElement g = GroupElement::decode(fp, c);
    if (!is_regular_semisimple(g)) continue;
    std::string key = span_key(g);
    auto it = reps.find(key);
    if (it == reps.end()) reps.emplace(key, g);  // first in code order
  }

  double coeff_space = fp.n == 2 ? (double)fp.p * fp.p : (double)fp.p * fp.p * fp.p;
  bool enumerate_torus = coeff_space <= (double)b.set.size() * 4 + 4096;

  for (auto& [key, r] : reps) {
    // Members: ball elements commuting with the representative, i.e. the
    // ball's intersection with the centralizer torus {c0 I + c1 r + c2 r^2}.
    std::vector<Code> members;
    const std::uint64_t p = fp.p;
    if (!enumerate_torus) {
      for (Code c : b.set.codes())
        if (commute(GroupElement::decode(fp, c), r)) members.push_back(c);
    } else if (fp.n == 2) {
      GroupElement id = GroupElement::identity(fp);
      for (std::uint64_t c0 = 0; c0 < p; c0++)
        for (std::uint64_t c1 = 0; c1 < p; c1++) {
          std::vector<std::uint32_t> e(4);
          bool ok = true;
          for (int i = 0; i < 4; i++)
            e[i] = static_cast<std::uint32_t>((c0 * id.entry(i) + c1 * r.entry(i)) % p);
          std::uint64_t det = ((std::uint64_t)e[0] * e[3] % p + p - (std::uint64_t)e[1] * e[2] % p) % p;
          if (det != 1) ok = false;
          if (ok) {
            Code cc = 0;
            for (int i = 3; i >= 0; i--) cc = cc * p + e[i];
            if (b.set.contains(cc)) members.push_back(cc);
          }
        }
    } else {
      GroupElement id = GroupElement::identity(fp);
      GroupElement r2 = mul(r, r);
      for (std::uint64_t c0 = 0; c0 < p; c0++)
        for (std::uint64_t c1 = 0; c1 < p; c1++)
          for (std::uint64_t c2 = 0; c2 < p; c2++) {
            std::array<std::uint32_t, 9> e{};
            for (int i = 0; i < 9; i++)
              e[i] = static_cast<std::uint32_t>((c0 * id.entry(i) + c1 * r.entry(i) + c2 * r2.entry(i)) % p);
            auto mi = [&](int a1, int b1, int a2, int b2) {
              return ((std::uint64_t)e[a1] * e[b2] % p + p - (std::uint64_t)e[b1] * e[a2] % p) % p;
            };
            std::uint64_t det = (std::uint64_t)e[0] * mi(4, 5, 7, 8) % p;
            det = (det + p - (std::uint64_t)e[1] * mi(3, 5, 6, 8) % p) % p;
            det = (det + (std::uint64_t)e[2] * mi(3, 4, 6, 7) % p) % p;
            if (det != 1) continue;
            Code cc = 0;
            for (int i = 8; i >= 0; i--) cc = cc * p + e[i];
            if (b.set.contains(cc)) members.push_back(cc);
          }
    }
    TorusCluster cl{r, ElementSet(fp, std::move(members))};
    rep.clusters.push_back(std::move(cl));
  }

  std::sort(rep.clusters.begin(), rep.clusters.end(), [](const TorusCluster& a, const TorusCluster& b2) {
    if (a.members.size() != b2.members.size()) return a.members.size() > b2.members.size();
    return a.representative.encode() < b2.representative.encode();
  });
  if (!rep.clusters.empty()) rep.max_cluster = rep.clusters.front().members.size();
  return rep;
}

ConjClassCurve conj_class_count(const ElementSet& A, int k, const Budget& budget) {
  if (k < 1) throw ConfigError("conj_class_count needs k >= 1");
  ConjClassCurve out;
  const FieldParams fp = A.params();
  auto gens = A.symmetrized_with_identity().elements();

  CodeHashSet seen;
  Code id = GroupElement::identity(fp).encode();
  seen.insert(id);
  std::vector<Code> frontier = {id};
  CodeHashSet kappas;
  auto note = [&](Code c) {
    GroupElement g = GroupElement::decode(fp, c);
    if (is_regular_semisimple(g)) kappas.insert(static_cast<Code>(kappa(g).key()));
  };
  note(id);
  out.per_radius.push_back(kappas.size());
  for (int r = 1; r <= k && !frontier.empty(); r++) {
    std::vector<Code> next;
    for (Code fc : frontier) {
      GroupElement f = GroupElement::decode(fp, fc);
      for (const auto& g : gens) {
        Code c = mul(f, g).encode();
        if (seen.insert(c)) {
          if (seen.size() > budget.max_codes) {
            out.overflow = true;
            out.count = kappas.size();
            return out;
          }
          next.push_back(c);
          note(c);
        }
      }
    }
    out.per_radius.push_back(kappas.size());
    frontier = std::move(next);
  }
  while ((int)out.per_radius.size() <= k) out.per_radius.push_back(kappas.size());
  out.count = kappas.size();
  return out;
}

ClassCount exact_class_count(const ElementSet& S, std::size_t group_cap) {
  const FieldParams fp = S.params();
  ClassCount out;
  CodeHashSet kappas;
  std::vector<GroupElement> irregular;
  for (Code c : S.codes()) {
    GroupElement g = GroupElement::decode(fp, c);
    if (is_regular_semisimple(g))
      kappas.insert(static_cast<Code>(kappa(g).key()));
    else
      irregular.push_back(g);
  }
  out.count = kappas.size();
  if (!irregular.empty()) {
    if (fp.group_order() > group_cap) {
      // orbit computation out of reach: report the regular semisimple count
      out.restricted = true;
      return out;
    }
    auto G = closure(ElementSet::from_elements(standard_generators(fp)), group_cap);
    if (!G) throw ConfigError("group closure exceeded cap");
    auto gelems = G->elements();
    CodeHashSet classified;
    for (const auto& g : irregular) {
      if (classified.contains(g.encode())) continue;
      out.count++;
      for (const auto& h : gelems) classified.insert(conjugate(h, g).encode());
    }
  }
  return out;
}

OstrogothResult ostrogoth_check(const ElementSet& A, const ElementSet& Aprime, std::size_t group_cap,
                                const Budget& budget) {
  if (A.params() != Aprime.params()) throw ConfigError("params mismatch");
  if (A.empty() || Aprime.empty()) throw ConfigError("empty input set");
  OstrogothResult out;
  out.size_a = A.size();
  SetResult aap = product(A, Aprime, budget);
  SetResult triple = product(aap.set, A.inverses(), budget);
  if (aap.overflow || triple.overflow) throw CapError("budget exceeded in ostrogoth_check");
  out.triple_size = triple.set.size();
  ClassCount cc = exact_class_count(Aprime, group_cap);
  out.class_count = cc.count;
  out.class_count_restricted = cc.restricted;

  SetResult ainva = product(A.inverses(), A, budget);
  auto candidates = ainva.set.elements();
  const std::uint64_t rhs = out.size_a * out.class_count;
  for (Code c : Aprime.codes()) {
    GroupElement g = GroupElement::decode(A.params(), c);
    std::uint64_t hits = 0;
    for (const auto& h : candidates)
      if (commute(g, h)) hits++;
    out.best_centralizer_hits = std::max(out.best_centralizer_hits, hits);
    if (hits * out.triple_size >= rhs) {
      out.pass = true;
      break;
    }
  }
  return out;
}

WorotPoint worot_map(const GroupElement& t) {
  if (t.params().n != 3) throw ConfigError("spectrum map is defined on SL3 only");
  if (!is_regular_semisimple(t)) throw ConfigError("spectrum map needs a regular semisimple element");
  const FieldParams fp = t.params();
  WorotPoint w;
  w.c_t = static_cast<std::uint32_t>(inv(t).trace());
  w.c_tinv = static_cast<std::uint32_t>(t.trace());
  // Self-check: I - c(t) t + c(t^-1) t^2 - t^3 = 0 exactly.
  GroupElement t2 = mul(t, t), t3 = mul(t2, t);
  const std::uint64_t p = fp.p;
  for (int i = 0; i < fp.dim(); i++) {
    std::uint64_t idv = (i % (fp.n + 1) == 0) ? 1 : 0;
    std::uint64_t v = (idv + p - (std::uint64_t)w.c_t * t.entry(i) % p + (std::uint64_t)w.c_tinv * t2.entry(i) % p +
                       p - t3.entry(i)) %
                      p;
    if (v != 0) throw ConfigError("cubic identity failed; implementation bug");
  }
  return w;
}

WorotFiberReport worot_fiber_scan(std::uint32_t p) {
  FieldParams fp(p, 3);
  WorotFiberReport rep;
  std::vector<std::uint32_t> inv_table(p, 0);
  for (std::uint64_t a = 1; a < p; a++) inv_table[a] = static_cast<std::uint32_t>(fp.inv(a));
  std::unordered_map<std::uint64_t, std::uint64_t> fibers;
  for (std::uint64_t t1 = 1; t1 < p; t1++)
    for (std::uint64_t t2 = 1; t2 < p; t2++) {
      rep.torus_size++;
      std::uint64_t t3 = inv_table[t1 * t2 % p];
      if (t1 == t2 || t2 == t3 || t1 == t3) continue;
      rep.regular_semisimple++;
      GroupElement t = GroupElement::from_entries(
          fp, {static_cast<std::uint32_t>(t1), 0, 0, 0, static_cast<std::uint32_t>(t2), 0, 0, 0,
               static_cast<std::uint32_t>(t3)});
      WorotPoint w = worot_map(t);  // throws if the identity fails
      std::uint64_t key = (std::uint64_t)w.c_t << 32 | w.c_tinv;
      fibers[key]++;
    }
  for (auto& [k, v] : fibers) rep.max_fiber = std::max(rep.max_fiber, v);
  rep.identity_holds = true;
  return rep;
}

}  // namespace growthlab

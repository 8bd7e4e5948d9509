#include "growthlab/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace growthlab {

namespace {

using Vec = std::array<std::uint64_t, 3>;

// Basis rows of a subspace of F_p^n, reduced.
struct Subspace {
  std::vector<Vec> basis;
  int n;
  std::uint64_t p;

  int dim() const { return (int)basis.size(); }
};

void reduce(Subspace& s) {
  auto& rows = s.basis;
  const std::uint64_t p = s.p;
  int r = 0;
  for (int c = 0; c < s.n && r < (int)rows.size(); c++) {
    int piv = -1;
    for (int i = r; i < (int)rows.size(); i++)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    std::uint64_t s0 = rows[r][c], inv = 1, b = s0, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (int j = 0; j < s.n; j++) rows[r][j] = rows[r][j] * inv % p;
    for (int i = 0; i < (int)rows.size(); i++) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint64_t f = rows[i][c];
      for (int j = 0; j < s.n; j++) rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
    }
    r++;
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Vec& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }),
             rows.end());
}

Subspace full_space(int n, std::uint64_t p) {
  Subspace s{{}, n, p};
  for (int i = 0; i < n; i++) {
    Vec v{0, 0, 0};
    v[i] = 1;
    s.basis.push_back(v);
  }
  return s;
}

// {w in W : (g - lambda I) w = 0}
Subspace eigen_restrict(const Subspace& W, const GroupElement& g, std::uint64_t lambda) {
  const int n = g.params().n;
  const std::uint64_t p = g.params().p;
  const int d = W.dim();
  // M = (g - lambda I) * B^T, an n x d matrix over F_p; kernel in coeff space.
  std::vector<std::vector<std::uint64_t>> M(n, std::vector<std::uint64_t>(d, 0));
  for (int i = 0; i < n; i++)
    for (int k = 0; k < d; k++) {
      std::uint64_t acc = 0;
      for (int j = 0; j < n; j++) {
        std::uint64_t gij = g.at(i, j);
        if (i == j) gij = (gij + p - lambda % p) % p;
        acc = (acc + gij * W.basis[k][j]) % p;
      }
      M[i][k] = acc;
    }
  // kernel of M (d columns)
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < d && r < n; c++) {
    int piv = -1;
    for (int i = r; i < n; i++)
      if (M[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    std::uint64_t inv = 1, b = M[r][c], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (int j = 0; j < d; j++) M[r][j] = M[r][j] * inv % p;
    for (int i = 0; i < n; i++) {
      if (i == r || M[i][c] == 0) continue;
      std::uint64_t f = M[i][c];
      for (int j = 0; j < d; j++) M[i][j] = (M[i][j] + p - f * M[r][j] % p) % p;
    }
    pivot_col.push_back(c);
    r++;
  }
  Subspace out{{}, W.n, p};
  std::vector<char> is_pivot(d, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  for (int c = 0; c < d; c++) {
    if (is_pivot[c]) continue;
    // free column -> kernel vector
    std::vector<std::uint64_t> coeff(d, 0);
    coeff[c] = 1;
    for (int i = 0; i < (int)pivot_col.size(); i++) coeff[pivot_col[i]] = (p - M[i][c]) % p;
    Vec v{0, 0, 0};
    for (int k = 0; k < d; k++)
      for (int j = 0; j < W.n; j++) v[j] = (v[j] + coeff[k] * W.basis[k][j]) % p;
    out.basis.push_back(v);
  }
  reduce(out);
  return out;
}

std::vector<std::uint64_t> eigenvalues_in_fp(const GroupElement& g) {
  const std::uint64_t p = g.params().p;
  std::vector<std::uint64_t> out;
  if (g.params().n == 2) {
    // lambda^2 - t lambda + 1
    std::uint64_t t = g.trace();
    for (std::uint64_t l = 0; l < p; l++)
      if ((l * l % p + 1 + (p - t % p) * l) % p == 0) out.push_back(l);
  } else {
    // lambda^3 - tr lambda^2 + tr(g^-1) lambda - 1
    std::uint64_t t = g.trace(), ti = inv(g).trace();
    for (std::uint64_t l = 0; l < p; l++) {
      std::uint64_t l2 = l * l % p;
      std::uint64_t v = (l2 * l % p + (p - t % p) * l2 % p + ti * l % p + p - 1) % p;
      if (v == 0) out.push_back(l);
    }
  }
  return out;
}

bool common_eigenvector(const std::vector<GroupElement>& gens) {
  if (gens.empty()) return true;
  const FieldParams fp = gens[0].params();
  std::map<Code, std::vector<std::uint64_t>> eig_cache;

  std::vector<Subspace> stack = {full_space(fp.n, fp.p)};
  std::vector<std::size_t> depth = {0};
  while (!stack.empty()) {
    Subspace W = std::move(stack.back());
    stack.pop_back();
    std::size_t at = depth.back();
    depth.pop_back();
    if (W.dim() == 0) continue;
    if (at == gens.size()) return true;
    const GroupElement& g = gens[at];
    auto it = eig_cache.find(g.encode());
    if (it == eig_cache.end()) it = eig_cache.emplace(g.encode(), eigenvalues_in_fp(g)).first;
    for (std::uint64_t l : it->second) {
      Subspace E = eigen_restrict(W, g, l);
      if (E.dim() > 0) {
        stack.push_back(std::move(E));
        depth.push_back(at + 1);
      }
    }
  }
  return false;
}

std::vector<GroupElement> transposed(const std::vector<GroupElement>& gens) {
  std::vector<GroupElement> out;
  for (const auto& g : gens) {
    const int n = g.params().n;
    std::vector<std::uint32_t> e(n * n);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) e[j * n + i] = g.at(i, j);
    out.push_back(GroupElement::from_entries(g.params(), e));
  }
  return out;
}

// Solution space of {g^T Q g = Q} over symmetric 3x3 Q (6 coordinates:
// q11, q22, q33, q12, q13, q23), intersected over all generators.
struct FormSearch {
  bool found = false;
  bool exhaustive = true;
};

FormSearch invariant_form_search(const std::vector<GroupElement>& gens) {
  FormSearch res;
  if (gens.empty()) return res;
  const FieldParams fp = gens[0].params();
  const std::uint64_t p = fp.p;
  auto qindex = [](int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == j) return i;              // q11,q22,q33 -> 0,1,2
    if (i == 0) return j == 1 ? 3 : 4; // q12, q13
    return 5;                          // q23
  };
  // rows of the homogeneous system
  std::vector<std::array<std::uint64_t, 6>> rows;
  for (const auto& g : gens) {
    // (g^T Q g)_{ab} = sum_{i,j} g_{ia} q_{ij} g_{jb}
    for (int a = 0; a < 3; a++)
      for (int b = a; b < 3; b++) {
        std::array<std::uint64_t, 6> row{};
        for (int i = 0; i < 3; i++)
          for (int j = 0; j < 3; j++) {
            std::uint64_t c = (std::uint64_t)g.at(i, a) * g.at(j, b) % p;
            row[qindex(i, j)] = (row[qindex(i, j)] + c) % p;
          }
        row[qindex(a, b)] = (row[qindex(a, b)] + p - 1) % p;
        rows.push_back(row);
      }
  }
  // kernel basis of the system
  int r = 0;
  std::vector<int> pivots;
  for (int c = 0; c < 6 && r < (int)rows.size(); c++) {
    int piv = -1;
    for (int i = r; i < (int)rows.size(); i++)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    std::uint64_t inv = 1, b = rows[r][c], e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
    for (int j = 0; j < 6; j++) rows[r][j] = rows[r][j] * inv % p;
    for (int i = 0; i < (int)rows.size(); i++) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint64_t f = rows[i][c];
      for (int j = 0; j < 6; j++) rows[i][j] = (rows[i][j] + p - f * rows[r][j] % p) % p;
    }
    pivots.push_back(c);
    r++;
  }
  std::vector<std::array<std::uint64_t, 6>> kernel;
  std::vector<char> is_pivot(6, 0);
  for (int c : pivots) is_pivot[c] = 1;
  for (int c = 0; c < 6; c++) {
    if (is_pivot[c]) continue;
    std::array<std::uint64_t, 6> v{};
    v[c] = 1;
    for (int i = 0; i < (int)pivots.size(); i++) v[pivots[i]] = (p - rows[i][c]) % p;
    kernel.push_back(v);
  }
  if (kernel.empty()) return res;

  auto det_of = [&](const std::array<std::uint64_t, 6>& q) {
    // Q = [[q0,q3,q4],[q3,q1,q5],[q4,q5,q2]]
    std::uint64_t m[9] = {q[0], q[3], q[4], q[3], q[1], q[5], q[4], q[5], q[2]};
    auto mi = [&](int a1, int b1, int a2, int b2) {
      return (m[a1] * m[b2] % p + p - m[b1] * m[a2] % p) % p;
    };
    std::uint64_t d = m[0] * mi(4, 5, 7, 8) % p;
    d = (d + p - m[1] * mi(3, 5, 6, 8) % p) % p;
    d = (d + m[2] * mi(3, 4, 6, 7) % p) % p;
    return d;
  };

  const int dim = (int)kernel.size();
  auto combine = [&](const std::vector<std::uint64_t>& coef) {
    std::array<std::uint64_t, 6> q{};
    for (int k = 0; k < dim; k++)
      for (int j = 0; j < 6; j++) q[j] = (q[j] + coef[k] * kernel[k][j]) % p;
    return q;
  };
  if (dim <= 3) {
    std::vector<std::uint64_t> coef(dim, 0);
    std::uint64_t total = 1;
    for (int k = 0; k < dim; k++) total *= p;
    for (std::uint64_t idx = 1; idx < total; idx++) {
      std::uint64_t t = idx;
      for (int k = 0; k < dim; k++) {
        coef[k] = t % p;
        t /= p;
      }
      if (det_of(combine(coef)) != 0) {
        res.found = true;
        return res;
      }
    }
    return res;
  }
  res.exhaustive = false;
  Rng rng(2718281828ULL);
  for (int trial = 0; trial < 20000; trial++) {
    std::vector<std::uint64_t> coef(dim);
    bool nz = false;
    for (int k = 0; k < dim; k++) {
      coef[k] = rng.below(p);
      nz |= coef[k] != 0;
    }
    if (!nz) continue;
    if (det_of(combine(coef)) != 0) {
      res.found = true;
      return res;
    }
  }
  return res;
}

bool is_abelian_set(const std::vector<GroupElement>& elems) {
  for (std::size_t i = 0; i < elems.size(); i++)
    for (std::size_t j = i + 1; j < elems.size(); j++)
      if (!commute(elems[i], elems[j])) return false;
  return true;
}

// Searches for an abelian subgroup of index <= 6 by walking centralizer
// chains C -> C n C_H(h); any such subgroup lies on one of these chains.
struct AbelianSearch {
  bool found = false;
  bool conclusive = true;
};

AbelianSearch abelian_index_le6(const ElementSet& H) {
  AbelianSearch out;
  const std::uint64_t target = H.size();
  std::set<std::vector<Code>> visited;
  std::vector<std::vector<Code>> stack = {H.codes()};
  std::size_t steps = 0;
  while (!stack.empty()) {
    if (++steps > 20000) {
      out.conclusive = false;
      return out;
    }
    std::vector<Code> codes = std::move(stack.back());
    stack.pop_back();
    if (6 * codes.size() < target) continue;
    if (!visited.insert(codes).second) continue;
    ElementSet C(H.params(), codes);
    auto elems = C.elements();
    if (is_abelian_set(elems)) {
      out.found = true;
      return out;
    }
    std::set<std::vector<Code>> children;
    for (const auto& h : elems) {
      std::vector<Code> sub;
      for (const auto& c : elems)
        if (commute(c, h)) sub.push_back(c.encode());
      if (sub.size() < codes.size()) children.insert(std::move(sub));
    }
    for (auto& ch : children) stack.push_back(std::vector<Code>(ch.begin(), ch.end()));
  }
  return out;
}

}  // namespace

Sl3Flags classify_sl3(const ElementSet& A, std::size_t closure_cap) {
  if (A.params().n != 3) throw ConfigError("classify_sl3 needs n = 3");
  if (A.empty()) throw ConfigError("empty generating set");
  Sl3Flags flags;
  auto gens = A.elements();
  const std::uint64_t order = A.params().group_order();

  std::size_t cap = std::min<std::size_t>(closure_cap, order);
  auto cl = closure(A, cap);
  flags.order_flags_known = cl.has_value();
  if (cl) {
    flags.closure_size = cl->size();
    flags.full_group = cl->size() == order;
    if (flags.full_group) return flags;  // full group excludes every other flag
    flags.order_le_1080 = cl->size() <= 1080;
  }

  flags.fixes_point = common_eigenvector(gens);
  flags.fixes_line = common_eigenvector(transposed(gens));
  FormSearch fs = invariant_form_search(gens);
  flags.preserves_quadratic_form = fs.found;
  flags.form_search_exhaustive = fs.exhaustive;
  if (cl && cl->size() <= 5000) {
    AbelianSearch as = abelian_index_le6(*cl);
    flags.abelian_index_le6 = as.found;
    flags.abelian_search_conclusive = as.conclusive;
  } else {
    flags.abelian_search_conclusive = false;
  }
  return flags;
}

Sl2Flags classify_sl2(const ElementSet& A, std::size_t closure_cap) {
  if (A.params().n != 2) throw ConfigError("classify_sl2 needs n = 2");
  if (A.empty()) throw ConfigError("empty generating set");
  Sl2Flags flags;
  auto gens = A.elements();
  const FieldParams fp = A.params();
  const std::uint64_t order = fp.group_order();

  flags.in_borel = common_eigenvector(gens);

  std::size_t cap = std::min<std::size_t>(closure_cap, order);
  auto cl = closure(A, cap);
  flags.order_flags_known = cl.has_value();
  if (cl) {
    flags.closure_size = cl->size();
    flags.full_group = cl->size() == order;
    flags.order_le_120 = cl->size() <= 120;
    if (!flags.full_group) {
      flags.index = order / cl->size();
      if (fp.p > 11) flags.galois_index_ok = flags.index >= fp.p + 1 ? 1 : 0;
    }
    if (!flags.full_group) {
      // torus normalizer: some regular semisimple t with every generator
      // commuting with t or flipping it to t^-1
      for (Code c : cl->codes()) {
        GroupElement t = GroupElement::decode(fp, c);
        if (!is_regular_semisimple(t)) continue;
        GroupElement tinv = inv(t);
        bool ok = true;
        for (const auto& g : gens) {
          GroupElement conj = mul(mul(g, t), inv(g));
          if (conj != t && conj != tinv) {
            ok = false;
            break;
          }
        }
        if (ok) {
          flags.in_torus_normalizer = true;
          break;
        }
      }
    }
  }
  return flags;
}

const char* unipotent_type_name(UnipotentType t) {
  switch (t) {
    case UnipotentType::kTrivial: return "trivial";
    case UnipotentType::kFull: return "full";
    case UnipotentType::kRowPlane: return "row_plane";
    case UnipotentType::kColumnPlane: return "column_plane";
    case UnipotentType::kCenterLine: return "center_line";
    case UnipotentType::kRootLine12: return "root_line_12";
    case UnipotentType::kRootLine23: return "root_line_23";
    case UnipotentType::kBalancedPlane: return "balanced_plane";
    case UnipotentType::kPrincipalLine: return "principal_line";
  }
  return "?";
}

UnipotentType betson_classify(const ElementSet& H) {
  const FieldParams fp = H.params();
  if (fp.n != 3) throw ConfigError("unipotent classification is for SL3");
  if (H.empty()) throw ConfigError("empty subgroup");
  auto elems = H.elements();
  for (const auto& h : elems)
    if (!is_upper_unitriangular(h)) throw ConfigError("H must be upper unitriangular");
  if (!is_closed_subgroup(H)) throw ConfigError("H is not a subgroup");

  const std::uint64_t p = fp.p;
  std::uint64_t center_hits = 0;  // elements with x = z = 0
  std::set<std::pair<std::uint64_t, std::uint64_t>> image;
  for (const auto& h : elems) {
    std::uint64_t x = h.at(0, 1), z = h.at(1, 2);
    if (x == 0 && z == 0) center_hits++;
    image.insert({x, z});
  }
  bool center_full = center_hits == p;
  if (center_hits != 1 && !center_full) throw ConfigError("unexpected center intersection; not a subgroup?");

  // classify the image inside F_p x F_p
  bool img_trivial = image.size() == 1;  // {(0,0)}
  bool img_full = image.size() == p * p;
  if (img_trivial) return center_full ? UnipotentType::kCenterLine : UnipotentType::kTrivial;
  if (img_full) return UnipotentType::kFull;

  // a line: all (x, z) proportional to one non-zero direction
  std::pair<std::uint64_t, std::uint64_t> dir{0, 0};
  for (auto& xz : image)
    if (xz != std::make_pair<std::uint64_t, std::uint64_t>(0, 0)) {
      dir = xz;
      break;
    }
  for (auto& xz : image) {
    // proportional test: x * dir.z == z * dir.x
    if ((xz.first * dir.second) % p != (xz.second * dir.first) % p)
      throw ConfigError("image is not a subgroup of F_p^2; input is not closed");
  }
  if (dir.second == 0) return center_full ? UnipotentType::kRowPlane : UnipotentType::kRootLine12;
  if (dir.first == 0) return center_full ? UnipotentType::kColumnPlane : UnipotentType::kRootLine23;
  if (!center_full && p == 2)
    throw ConfigError("slanted line without center cannot occur at p = 2");
  return center_full ? UnipotentType::kBalancedPlane : UnipotentType::kPrincipalLine;
}

ParabolicParts parabolic_decompose(const GroupElement& g) {
  const FieldParams fp = g.params();
  if (fp.n != 3) throw ConfigError("parabolic decomposition is for SL3");
  if (g.at(2, 0) != 0 || g.at(2, 1) != 0)
    throw ConfigError("element is not in the parabolic subgroup (bottom row not (0,0,*))");
  std::uint32_t s2 = g.at(2, 2);
  if (s2 == 0) throw ConfigError("singular bottom corner");
  std::uint32_t s = fp.sqrt_mod(s2);
  if (s == fp.p) throw ConfigError("bottom corner is not a square in F_p^*");
  if (fp.p - s < s) s = static_cast<std::uint32_t>(fp.p - s);  // canonical root

  ParabolicParts parts;
  parts.pi_two = s2;
  parts.sqrt_pi_two = s;
  parts.e = g.at(0, 2);
  parts.f = g.at(1, 2);
  parts.pi_plus = GroupElement::from_entries(
      fp, {g.at(0, 0), g.at(0, 1), 0, g.at(1, 0), g.at(1, 1), 0, 0, 0, s2});
  FieldParams fp2(fp.p, 2);
  auto m = [&](std::uint32_t v) { return static_cast<std::uint32_t>((std::uint64_t)s * v % fp.p); };
  parts.pi_one = GroupElement::from_entries(fp2, {m(g.at(0, 0)), m(g.at(0, 1)), m(g.at(1, 0)), m(g.at(1, 1))});
  if (s2 == 1)
    parts.pi_minus = GroupElement::from_entries(
        fp, {g.at(0, 0), g.at(0, 1), 0, g.at(1, 0), g.at(1, 1), 0, 0, 0, 1});
  return parts;
}

UnipotentFactorization u1u2_factorize(const GroupElement& g) {
  const FieldParams fp = g.params();
  if (fp.n != 3) throw ConfigError("the factorization is for SL3");
  GroupElement I = GroupElement::identity(fp);
  if (is_upper_unitriangular(g)) return {g, I, I, I};

  const std::uint64_t p = fp.p;
  // working copy of g as uint64 entries
  std::array<std::uint64_t, 9> y{};
  for (int i = 0; i < 9; i++) y[i] = g.entry(i);
  auto at = [&](int i, int j) -> std::uint64_t& { return y[i * 3 + j]; };
  auto invmod = [&](std::uint64_t a) {
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };

  // accumulated left factor (product of the elementary row operations applied)
  std::array<std::uint64_t, 9> lacc{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::array<std::uint64_t, 9> racc{1, 0, 0, 0, 1, 0, 0, 0, 1};
  auto lmul = [&](int i, int j, std::uint64_t c) {
    // y <- (I + c e_ij) y ; lacc <- (I + c e_ij) lacc   (i < j, upper)
    for (int k = 0; k < 3; k++) y[i * 3 + k] = (y[i * 3 + k] + c * y[j * 3 + k]) % p;
    for (int k = 0; k < 3; k++) lacc[i * 3 + k] = (lacc[i * 3 + k] + c * lacc[j * 3 + k]) % p;
  };
  auto rmul = [&](int i, int j, std::uint64_t c) {
    // y <- y (I + c e_ij); racc <- racc (I + c e_ij)   (i > j, lower)
    for (int k = 0; k < 3; k++) y[k * 3 + j] = (y[k * 3 + j] + c * y[k * 3 + i]) % p;
    for (int k = 0; k < 3; k++) racc[k * 3 + j] = (racc[k * 3 + j] + c * racc[k * 3 + i]) % p;
  };

  // Stage 1: make the (1,1) entry equal to 1.
  if (at(1, 0) == 0 && at(2, 0) == 0 && at(0, 1) == 0 && at(0, 2) == 0 && at(0, 0) != 1) {
    rmul(1, 0, 1);  // col1 += col2; brings a non-zero below the corner
  }
  if (at(0, 0) != 1) {
    if (at(1, 0) != 0) {
      lmul(0, 1, (1 + p - at(0, 0)) % p * invmod(at(1, 0)) % p);
    } else if (at(2, 0) != 0) {
      lmul(0, 2, (1 + p - at(0, 0)) % p * invmod(at(2, 0)) % p);
    } else if (at(0, 1) != 0) {
      rmul(1, 0, (1 + p - at(0, 0)) % p * invmod(at(0, 1)) % p);
    } else if (at(0, 2) != 0) {
      rmul(2, 0, (1 + p - at(0, 0)) % p * invmod(at(0, 2)) % p);
    }
  }

  // Stage 2: make the leading 2x2 minor equal to 1, preserving the corner.
  auto minor2 = [&]() {
    return (at(0, 0) * at(1, 1) % p + p - at(0, 1) * at(1, 0) % p) % p;
  };
  if (minor2() != 1) {
    std::uint64_t R = (at(2, 1) + p - at(0, 1) * at(2, 0) % p) % p;
    std::uint64_t S = (at(1, 2) + p - at(0, 2) * at(1, 0) % p) % p;
    if (R == 0 && S == 0) {
      if (at(2, 0) == 0) {
        lmul(1, 2, 1);  // row2 += row3: makes S = y33 != 0
        S = (at(1, 2) + p - at(0, 2) * at(1, 0) % p) % p;
      } else {
        rmul(2, 1, 1);  // col2 += col3: makes R = y33 - y13*y31 != 0
        R = (at(2, 1) + p - at(0, 1) * at(2, 0) % p) % p;
      }
    }
    std::uint64_t D2 = minor2();
    if (R != 0) {
      lmul(1, 2, (p - (D2 + p - 1) % p * invmod(R) % p) % p);  // row2 -= c*row3, c = (D2-1)/R
    } else {
      rmul(2, 1, (1 + p - D2) % p * invmod(S) % p);  // col2 += z*col3, z = (1-D2)/S
    }
  }

  // Stage 3: y is now in U2 * U1; read the factors off.
  std::uint64_t d = at(1, 0), e = at(2, 0), q = at(0, 1), r = at(0, 2);
  std::uint64_t f = (at(2, 1) + p - e * q % p) % p;
  std::uint64_t s = (at(1, 2) + p - d * r % p) % p;

  auto ge = [&](std::array<std::uint64_t, 9> m) {
    std::vector<std::uint32_t> v(9);
    for (int i = 0; i < 9; i++) v[i] = static_cast<std::uint32_t>(m[i] % p);
    return GroupElement::from_entries(fp, v);
  };
  GroupElement u2 = ge({1, 0, 0, d, 1, 0, e, f, 1});
  GroupElement u1p = ge({1, q, r, 0, 1, s, 0, 0, 1});
  GroupElement u1 = inv(ge(lacc));
  GroupElement u2p = inv(ge(racc));

  UnipotentFactorization out{u1, u2, u1p, u2p};
  if (mul(mul(mul(out.u1, out.u2), out.u1p), out.u2p) != g)
    throw ConfigError("factorization self-check failed; implementation bug");
  return out;
}

}  // namespace growthlab

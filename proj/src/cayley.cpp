#include "growthlab/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace growthlab {

DiameterResult diameter(const ElementSet& A, bool symmetrize, const Budget& budget) {
  DiameterResult res;
  const FieldParams fp = A.params();
  std::vector<GroupElement> gens;
  if (symmetrize)
    gens = A.unioned(A.inverses()).elements();
  else
    gens = A.elements();

  CodeHashSet seen;
  Code id = GroupElement::identity(fp).encode();
  seen.insert(id);
  std::vector<Code> frontier = {id};
  res.sizes.push_back(1);
  int r = 0;
  while (!frontier.empty()) {
    std::vector<Code> next;
    for (Code fc : frontier) {
      GroupElement f = GroupElement::decode(fp, fc);
      for (const auto& g : gens) {
        Code c = mul(f, g).encode();
        if (seen.insert(c)) {
          next.push_back(c);
          if (seen.size() > budget.max_codes) {
            res.overflow = true;
            res.sizes.push_back(seen.size());
            res.diameter = r + 1;
            res.reached = seen.size();
            return res;
          }
        }
      }
    }
    if (next.empty()) break;
    r++;
    res.sizes.push_back(seen.size());
    frontier = std::move(next);
  }
  res.diameter = r;
  res.saturated = true;
  res.reached = seen.size();
  res.generates = res.reached == fp.group_order();
  return res;
}

std::vector<BabaiRow> babai_curve(const std::vector<std::uint32_t>& primes, int n,
                                  const std::string& gens_recipe, std::uint64_t order_cap) {
  if (gens_recipe != "standard") throw ConfigError("unknown generator recipe: " + gens_recipe);
  std::vector<BabaiRow> rows;
  for (std::uint32_t p : primes) {
    BabaiRow row;
    row.p = p;
    row.n = n;
    FieldParams fp(p, n);
    row.group_order = fp.group_order();
    row.log_order = std::log((double)row.group_order);
    if (row.group_order > order_cap) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    auto A = ElementSet::from_elements(standard_generators(fp));
    Budget b;
    b.max_codes = row.group_order + 1;
    DiameterResult d = diameter(A, false, b);
    row.diameter = d.diameter;
    row.ratio1 = d.diameter / row.log_order;
    row.ratio2 = d.diameter / (row.log_order * row.log_order);
    rows.push_back(row);
  }
  return rows;
}

std::string babai_csv(const std::vector<BabaiRow>& rows) {
  std::ostringstream os;
  os << "p,n,group_order,diameter,log_order,ratio1,ratio2\n";
  for (const auto& r : rows) {
    os << r.p << "," << r.n << "," << r.group_order << ",";
    if (r.skipped) {
      os << "," << r.log_order << ",,\n";
    } else {
      os << r.diameter << "," << r.log_order << "," << r.ratio1 << "," << r.ratio2 << "\n";
    }
  }
  return os.str();
}

CoverCheck rastropor_check(const ElementSet& A, const Budget& budget) {
  CoverCheck out;
  out.set_size = A.size();
  out.group_order = A.params().group_order();
  out.threshold = out.group_order / 2.0;
  if (2 * out.set_size <= out.group_order) return out;  // boundary excluded
  SetResult aa = product(A, A, budget);
  if (aa.overflow) throw CapError("budget exceeded in rastropor_check");
  out.covered = aa.set.size();
  out.status = out.covered == out.group_order ? CheckStatus::Pass : CheckStatus::Fail;
  return out;
}

CoverCheck np_threshold_check(const ElementSet& A, const Budget& budget) {
  CoverCheck out;
  out.set_size = A.size();
  const FieldParams fp = A.params();
  out.group_order = fp.group_order();
  double expo = 1.0 - 1.0 / (3.0 * (fp.n + 1));
  out.threshold = 2.0 * std::pow((double)out.group_order, expo);
  if ((double)out.set_size <= out.threshold) return out;
  SetResult aa = product(A, A, budget);
  SetResult aaa = product(aa.set, A, budget);
  if (aa.overflow || aaa.overflow) throw CapError("budget exceeded in np_threshold_check");
  out.covered = aaa.set.size();
  out.status = out.covered == out.group_order ? CheckStatus::Pass : CheckStatus::Fail;
  return out;
}

SpectralEstimate spectral_gap(const ElementSet& A, double tol, std::size_t vertex_cap, int max_iter) {
  SpectralEstimate est;
  est.tolerance = tol;
  const FieldParams fp = A.params();
  std::size_t cap = vertex_cap;
  auto closed = closure(A, cap);
  if (!closed) throw CapError("group generated by A exceeds the spectral vertex cap");
  const auto& vcodes = closed->codes();
  const std::size_t nv = vcodes.size();

  std::unordered_map<Code, std::uint32_t, CodeHash> index;
  index.reserve(nv * 2);
  for (std::size_t i = 0; i < nv; i++) index[vcodes[i]] = (std::uint32_t)i;

  // Multiset A u A^-1: concatenation, repeats kept.
  std::vector<GroupElement> gens = A.elements();
  {
    auto invs = A.inverses().elements();
    gens.insert(gens.end(), invs.begin(), invs.end());
  }
  const std::size_t deg = gens.size();

  // neighbor table: nbr[v * deg + j] = index of v * gens[j]
  std::vector<std::uint32_t> nbr(nv * deg);
  for (std::size_t i = 0; i < nv; i++) {
    GroupElement v = GroupElement::decode(fp, vcodes[i]);
    for (std::size_t j = 0; j < deg; j++) nbr[i * deg + j] = index.at(mul(v, gens[j]).encode());
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < nv; i++) {
      double s = 0;
      for (std::size_t j = 0; j < deg; j++) s += x[nbr[i * deg + j]];
      y[i] = s / (double)deg;
    }
  };
  auto deflate = [&](std::vector<double>& x) {
    double mean = 0;
    for (double v : x) mean += v;
    mean /= (double)nv;
    for (double& v : x) v -= mean;
  };
  auto norm = [&](const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  };

  // lambda1 on the full space; converges to 1 for a symmetrized multiset.
  std::vector<double> v(nv), w(nv);
  for (std::size_t i = 0; i < nv; i++) v[i] = 1.0 / std::sqrt((double)nv);
  apply(v, w);
  double l1 = 0;
  for (std::size_t i = 0; i < nv; i++) l1 += v[i] * w[i];
  est.lambda1 = l1;

  // lambda2: shifted operator (M+I)/2 keeps the top of the spectrum dominant.
  Rng rng(12345);
  for (std::size_t i = 0; i < nv; i++) v[i] = (double)(rng.next() % 1000003) / 1000003.0 - 0.5;
  deflate(v);
  double nv0 = norm(v);
  if (nv0 == 0) {
    est.lambda2 = est.lambda1;
    est.gap = 0;
    return est;
  }
  for (double& x : v) x /= nv0;
  double mu = 0, prev = 2;
  int it = 0;
  for (; it < max_iter; it++) {
    apply(v, w);
    for (std::size_t i = 0; i < nv; i++) w[i] = 0.5 * (w[i] + v[i]);
    deflate(w);
    double nw = norm(w);
    if (nw < 1e-300) {
      mu = 0;
      it++;
      break;
    }
    mu = 0;
    for (std::size_t i = 0; i < nv; i++) mu += v[i] * w[i];
    for (std::size_t i = 0; i < nv; i++) v[i] = w[i] / nw;
    if (std::fabs(mu - prev) < tol) {
      it++;
      break;
    }
    prev = mu;
  }
  est.iterations = it;
  est.converged = it < max_iter || std::fabs(mu - prev) < tol;
  est.lambda2 = 2.0 * mu - 1.0;
  est.gap = est.lambda1 - est.lambda2;
  return est;
}

}  // namespace growthlab

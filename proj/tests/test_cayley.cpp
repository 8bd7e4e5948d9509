#include "doctest.h"
#include "growthlab/cayley.hpp"

#include <cmath>
#include <map>
#include <set>
#include <vector>

using namespace growthlab;

namespace {

// Independent oracle: directed Cayley BFS with plain std::set over entry
// tuples, no canonical codes involved.
int diameter_oracle(std::uint32_t p, const std::vector<std::array<std::uint32_t, 4>>& gens,
                    std::uint64_t order) {
  using M = std::array<std::uint32_t, 4>;
  auto mulm = [&](const M& a, const M& b) {
    M c;
    c[0] = (std::uint32_t)(((std::uint64_t)a[0] * b[0] + (std::uint64_t)a[1] * b[2]) % p);
    c[1] = (std::uint32_t)(((std::uint64_t)a[0] * b[1] + (std::uint64_t)a[1] * b[3]) % p);
    c[2] = (std::uint32_t)(((std::uint64_t)a[2] * b[0] + (std::uint64_t)a[3] * b[2]) % p);
    c[3] = (std::uint32_t)(((std::uint64_t)a[2] * b[1] + (std::uint64_t)a[3] * b[3]) % p);
    return c;
  };
  M id{1, 0, 0, 1};
  std::set<M> seen{id};
  std::vector<M> frontier{id};
  int k = 0;
  while (seen.size() < order && !frontier.empty()) {
    std::vector<M> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        M m = mulm(f, g);
        if (seen.insert(m).second) next.push_back(m);
      }
    frontier = std::move(next);
    k++;
  }
  return k;
}

}  // namespace

TEST_CASE("diameter of SL2(F5) with the standard generators") {
  FieldParams f5(5, 2);
  auto A = ElementSet::from_elements(standard_generators(f5));
  auto d = diameter(A);
  CHECK(d.saturated);
  CHECK(d.generates);
  CHECK(d.reached == 120);

  int oracle = diameter_oracle(5, {{{1, 1, 0, 1}}, {{1, 0, 1, 1}}}, 120);
  CHECK(d.diameter == oracle);
  CHECK(d.diameter == 8);  // frozen from the oracle
}

TEST_CASE("diameter edge cases") {
  FieldParams f3(3, 2);
  auto G = closure(ElementSet::from_elements(standard_generators(f3)), 30);
  auto dG = diameter(*G);
  CHECK(dG.diameter == 1);
  CHECK(dG.generates);

  auto only_id = ElementSet::from_elements({GroupElement::identity(f3)});
  auto dI = diameter(only_id);
  CHECK_FALSE(dI.generates);
  CHECK(dI.reached == 1);
  CHECK(dI.diameter == 0);
}

TEST_CASE("diameter is conjugation invariant") {
  FieldParams f5(5, 2);
  auto A = ElementSet::from_elements(standard_generators(f5));
  Rng rng(21);
  auto h = random_element(f5, rng);
  std::vector<GroupElement> conj;
  for (const auto& g : A.elements()) conj.push_back(conjugate(h, g));
  auto d1 = diameter(A);
  auto d2 = diameter(ElementSet::from_elements(conj));
  CHECK(d1.diameter == d2.diameter);
  CHECK(d1.sizes == d2.sizes);
}

TEST_CASE("babai curve") {
  auto rows = babai_curve({5, 7, 11, 13}, 2);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.group_order == (std::uint64_t)r.p * r.p * r.p - r.p);
    CHECK_FALSE(r.skipped);
    CHECK(r.diameter > 0);
    CHECK(r.ratio1 == doctest::Approx(r.diameter / r.log_order));
  }
  auto sl3 = babai_curve({2}, 3);
  CHECK(sl3[0].group_order == 168);
  CHECK_FALSE(sl3[0].skipped);

  // single-prime row agrees with the diameter operation
  FieldParams f5(5, 2);
  auto single = babai_curve({5}, 2);
  CHECK(single[0].diameter ==
        diameter(ElementSet::from_elements(standard_generators(f5))).diameter);

  auto capped = babai_curve({13}, 3, "standard", 1000);
  CHECK(capped[0].skipped);
  CHECK(capped[0].diameter == -1);

  std::string csv = babai_csv(rows);
  CHECK(csv.rfind("p,n,group_order,diameter,log_order,ratio1,ratio2\n5,", 0) == 0);
}

TEST_CASE("majority subsets square to the whole group") {
  FieldParams f3(3, 2);
  auto G = closure(ElementSet::from_elements(standard_generators(f3)), 30);
  auto all = G->elements();

  auto whole = rastropor_check(*G);
  CHECK(whole.status == CheckStatus::Pass);

  Rng rng(22);
  for (int t = 0; t < 50; t++) {
    std::set<std::size_t> idx;
    while (idx.size() < 13) idx.insert(rng.below(24));
    std::vector<GroupElement> v;
    for (auto i : idx) v.push_back(all[i]);
    auto res = rastropor_check(ElementSet::from_elements(v));
    CHECK(res.status == CheckStatus::Pass);
  }

  // |A| = |G|/2 exactly: boundary excluded
  std::vector<GroupElement> half(all.begin(), all.begin() + 12);
  CHECK(rastropor_check(ElementSet::from_elements(half)).status == CheckStatus::NotApplicable);
}

TEST_CASE("triple product threshold") {
  FieldParams f5(5, 2);
  auto G5 = closure(ElementSet::from_elements(standard_generators(f5)), 200);
  // threshold 2*120^(8/9) = 140.99 > 120: never applicable in SL2(F5)
  CHECK(np_threshold_check(*G5).status == CheckStatus::NotApplicable);

  // SL2(F11): threshold 2*1320^(8/9) = 1188 < 1320, so A = G is applicable
  FieldParams f11(11, 2);
  auto G11 = closure(ElementSet::from_elements(standard_generators(f11)), 2000);
  CHECK(np_threshold_check(*G11).status == CheckStatus::Pass);  // A = G
}

TEST_CASE("spectral gap") {
  // two-vertex graph {I, -I} in SL2(F3) with A = {-I}: eigenvalues 1 and -1
  FieldParams f3(3, 2);
  auto minus = ElementSet::from_elements({GroupElement::from_entries(f3, {2, 0, 0, 2})});
  auto est = spectral_gap(minus);
  CHECK(est.lambda1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.gap == doctest::Approx(2.0).epsilon(1e-6));

  // complete Cayley graph: lambda2 = -1/(|G|-1)
  auto G = closure(ElementSet::from_elements(standard_generators(f3)), 30);
  std::vector<GroupElement> nonid;
  for (const auto& g : G->elements())
    if (!(g == GroupElement::identity(f3))) nonid.push_back(g);
  auto est2 = spectral_gap(ElementSet::from_elements(nonid));
  CHECK(est2.lambda2 == doctest::Approx(-1.0 / 23.0).epsilon(1e-5));
  CHECK(est2.gap == doctest::Approx(1.0 + 1.0 / 23.0).epsilon(1e-5));

  // SL2(F11): positive gap for the standard generators
  FieldParams f11(11, 2);
  auto est3 = spectral_gap(ElementSet::from_elements(standard_generators(f11)));
  CHECK(est3.lambda1 == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(est3.gap > 0.05);
}

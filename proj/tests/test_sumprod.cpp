#include "doctest.h"
#include "growthlab/sumprod.hpp"

#include <set>
#include <sstream>

using namespace growthlab;

namespace {

RingSet range_set(std::uint32_t p, std::uint64_t lo, std::uint64_t hi) {
  RingSet s(p, 1);
  for (std::uint64_t v = lo; v <= hi; v++) s.insert(v % p);
  return s;
}

RingSet random_subset(std::uint32_t p, std::size_t count, bool avoid_zero, Rng& rng) {
  RingSet s(p, 1);
  while (s.size() < count) {
    std::uint64_t v = rng.below(p);
    if (avoid_zero && v == 0) continue;
    s.insert(v);
  }
  return s;
}

}  // namespace

TEST_CASE("six-fold combination bound") {
  RingSet a5(5, 1), y5(5, 1);
  a5.insert(1);
  y5.insert(1);
  auto r = gk_check(a5, y5);
  CHECK(r.lhs == 1);  // {0} after all the cancellation
  CHECK(r.pass);

  RingSet line(7, 1);
  for (std::uint64_t v = 0; v < 7; v++) line.insert(v);
  RingSet one(7, 1);
  one.insert(1);
  auto r2 = gk_check(line, one);
  CHECK(r2.lhs == 7);
  CHECK(r2.pass);

  Rng rng(51);
  for (int t = 0; t < 100; t++) {
    auto A = random_subset(101, 1 + rng.below(12), false, rng);
    auto Y = random_subset(101, 1 + rng.below(12), true, rng);
    CHECK(gk_check(A, Y).pass);
  }
}

TEST_CASE("the combination scales linearly in a dilation of A") {
  // |C(lambda A, Y)| equals |lambda D + E| with D the four-fold product part
  // and E = Y^2 - Y^2; the set identity is exact even though |C| itself can
  // change with lambda.
  const std::uint32_t p = 23;
  Rng rng(52);
  auto A = random_subset(p, 4, false, rng);
  auto Y = random_subset(p, 3, true, rng);
  RingSet sq(p, 1);
  for (auto y : Y.packed()) sq.insert(y * y % p);
  RingSet E = ring_sub(sq, sq);

  for (std::uint64_t lambda = 1; lambda < p; lambda++) {
    RingSet lA(p, 1);
    for (auto a : A.packed()) lA.insert(a * lambda % p);
    RingSet S = ring_mul(Y, lA);
    RingSet D = ring_sub(ring_sub(ring_add(S, S), S), S);

    RingSet S0 = ring_mul(Y, A);
    RingSet D0 = ring_sub(ring_sub(ring_add(S0, S0), S0), S0);
    RingSet lD0(p, 1);
    for (auto d : D0.packed()) lD0.insert(d * lambda % p);
    CHECK(D.packed() == lD0.packed());
    CHECK(ring_add(D, E).size() == ring_add(lD0, E).size());
  }
}

TEST_CASE("sum and product growth statistics") {
  // arithmetic progression: |A+A| = 2N-1 exactly; the product set is large
  const std::uint32_t p = 10007;
  auto ap = range_set(p, 1, 64);
  auto s = sumprod_stats(ap);
  CHECK(s.sum_size == 127);
  CHECK(s.prod_size > 1000);  // 64^2/2 minus multiplicative collisions
  CHECK(s.exponent > 0.5);

  // geometric progression: |A*A| = 2N-1, |A+A| large
  FieldParams fp(p, 2);
  RingSet gp(p, 1);
  for (std::uint64_t n = 1; n <= 64; n++) gp.insert(fp.pow(5, n));
  REQUIRE(gp.size() == 64);
  auto s2 = sumprod_stats(gp);
  CHECK(s2.prod_size == 127);
  CHECK(s2.sum_size > 1000);

  // the full line: everything collapses
  auto line = range_set(101, 0, 100);
  auto s3 = sumprod_stats(line);
  CHECK(s3.sum_size == 101);
  CHECK(s3.prod_size == 101);
  CHECK(s3.exponent < 0.01);
}

TEST_CASE("sumprod stats oracle comparison") {
  // independent route: plain std::set arithmetic
  const std::uint32_t p = 1009;
  Rng rng(53);
  auto A = random_subset(p, 40, false, rng);
  std::set<std::uint64_t> sums, prods;
  for (auto x : A.packed())
    for (auto y : A.packed()) {
      sums.insert((x + y) % p);
      prods.insert(x * y % p);
    }
  auto s = sumprod_stats(A);
  CHECK(s.sum_size == sums.size());
  CHECK(s.prod_size == prods.size());
}

TEST_CASE("two-component ring sets") {
  RingSet s(7, 2);
  s.insert(1, 2);
  s.insert(3, 0);
  auto sq = ring_mul(s, s);
  CHECK(sq.contains(1 * 1 % 7, 2 * 2 % 7));
  CHECK(sq.contains(3 * 3 % 7, 0));
  CHECK(sq.contains(3, 0));

  std::stringstream ss;
  s.write(ss);
  auto t = RingSet::read(ss);
  CHECK(t.packed() == s.packed());
  CHECK(t.components() == 2);
}

TEST_CASE("two-component growth statistics") {
  // the product ring F_p x F_p: statistics run component-wise
  const std::uint32_t p = 101;
  RingSet A(p, 2);
  Rng rng(56);
  while (A.size() < 30) A.insert(rng.below(p), rng.below(p));
  auto s = sumprod_stats(A);
  CHECK(s.size_a == 30);
  CHECK(s.sum_size <= 900);
  CHECK(s.prod_size <= 901);
  CHECK(std::max(s.sum_size, s.prod_size) >= 30);
}

TEST_CASE("root maps injectivity") {
  FieldParams f7(7, 3);
  auto d1 = GroupElement::from_entries(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4});
  CHECK(roots_injective(ElementSet::from_elements({d1})));

  // scalar matrices kill every root map
  auto s1 = GroupElement::identity(f7);
  auto s2 = GroupElement::from_entries(f7, {2, 0, 0, 0, 2, 0, 0, 0, 2});
  CHECK_FALSE(roots_injective(ElementSet::from_elements({s1, s2})));

  // direct evaluation: diag(1,2,4) and diag(2,4,1) share the (1,2)-root value
  auto d2 = GroupElement::from_entries(f7, {2, 0, 0, 0, 4, 0, 0, 0, 1});
  CHECK_FALSE(roots_injective(ElementSet::from_elements({d1, d2})));

  CHECK_THROWS_AS(roots_injective(ElementSet::from_elements({standard_generators(f7)[0]})),
                  ConfigError);
}

namespace {

GroupElement unitri(const FieldParams& fp, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  return GroupElement::from_entries(fp, {1, x, y, 0, 1, z, 0, 0, 1});
}

}  // namespace

TEST_CASE("unipotent growth under a torus action") {
  FieldParams f13(13, 3);
  // |A| = |D| = 1 with A = {I}: the orbit group is trivial and the bound < 1
  auto d = GroupElement::from_entries(f13, {1, 0, 0, 0, 2, 0, 0, 0, 7});
  auto idA = ElementSet::from_elements({GroupElement::identity(f13)});
  auto r0 = forgli_check(idA, ElementSet::from_elements({d}));
  CHECK(r0.pass);
  CHECK(r0.orbit_group == 1);

  // one root-group element against one regular diagonal element
  auto A = ElementSet::from_elements({unitri(f13, 1, 0, 0)});
  auto r1 = forgli_check(A, ElementSet::from_elements({d}));
  CHECK(r1.pass);

  Rng rng(54);
  for (int t = 0; t < 10; t++) {
    // random small admissible pair
    std::vector<GroupElement> us;
    for (int i = 0; i < 3; i++)
      us.push_back(unitri(f13, (std::uint32_t)rng.below(13), (std::uint32_t)rng.below(13),
                          (std::uint32_t)rng.below(13)));
    ElementSet Aset = ElementSet::from_elements(us);
    // a regular diagonal element with injective roots
    ElementSet D(FieldParams(13, 3));
    while (true) {
      std::uint64_t a = 1 + rng.below(12), b = 1 + rng.below(12);
      std::uint64_t c = FieldParams(13, 3).inv(a * b % 13);
      auto cand = GroupElement::from_entries(
          f13, {(std::uint32_t)a, 0, 0, 0, (std::uint32_t)b, 0, 0, 0, (std::uint32_t)c});
      auto Dc = ElementSet::from_elements({cand});
      if (roots_injective(Dc)) {
        D = Dc;
        break;
      }
    }
    CHECK(forgli_check(Aset, D).pass);
  }
}

TEST_CASE("commuting-action growth bound, multiplicative instance") {
  Rng rng(55);
  for (int t = 0; t < 20; t++) {
    const std::uint32_t p = 101;
    RingSet A(p, 1), Y(p, 1);
    std::size_t na = 1 + rng.below(8), ny = 1 + rng.below(8);
    while (A.size() < na) A.insert(rng.below(p));
    while (Y.size() < ny) Y.insert(1 + rng.below(p - 1));
    auto r = ogrodo_ring_check(A, Y);
    CHECK(r.status == CheckStatus::Pass);
  }
}

TEST_CASE("commuting-action growth bound, conjugation instance") {
  FieldParams f13(13, 3);
  // not-applicable path: a diagonal quotient with a repeated entry fixes a
  // root subgroup pointwise
  auto bad = GroupElement::from_entries(f13, {2, 0, 0, 0, 2, 0, 0, 0, 10});
  auto A = ElementSet::from_elements({unitri(f13, 1, 0, 0)});
  auto na = ogrodo_conj_check(A, ElementSet::from_elements({GroupElement::identity(f13), bad}));
  CHECK(na.status == CheckStatus::NotApplicable);

  // admissible instance: distinct-entry torus elements acting on a root group
  auto t1 = GroupElement::from_entries(f13, {1, 0, 0, 0, 2, 0, 0, 0, 7});
  auto t2 = GroupElement::from_entries(f13, {2, 0, 0, 0, 5, 0, 0, 0, 4});
  auto Y = ElementSet::from_elements({t1, t2});
  auto r = ogrodo_conj_check(A, Y);
  CHECK(r.status == CheckStatus::Pass);
}

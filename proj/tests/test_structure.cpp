#include "doctest.h"
#include "growthlab/structure.hpp"

#include <map>
#include <set>

using namespace growthlab;

namespace {

GroupElement unitri(const FieldParams& fp, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  return GroupElement::from_entries(fp, {1, x, y, 0, 1, z, 0, 0, 1});
}

std::vector<GroupElement> all_of_sl3_f2() {
  FieldParams f2(2, 3);
  std::vector<GroupElement> out;
  for (std::uint32_t code = 0; code < 512; code++) {
    std::vector<std::uint32_t> e(9);
    for (int i = 0; i < 9; i++) e[i] = (code >> i) & 1;
    try {
      out.push_back(GroupElement::from_entries(f2, e));
    } catch (const ConfigError&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("classify_sl3: parabolic subsets") {
  FieldParams f7(7, 3);
  // upper-triangular generators fix the first coordinate axis and the plane
  // spanned by the first two axes
  std::vector<GroupElement> gens = {
      GroupElement::from_entries(f7, {1, 1, 0, 0, 1, 0, 0, 0, 1}),
      GroupElement::from_entries(f7, {2, 0, 3, 0, 4, 1, 0, 0, 1}),
  };
  auto flags = classify_sl3(ElementSet::from_elements(gens));
  CHECK(flags.fixes_point);
  CHECK(flags.fixes_line);
  CHECK_FALSE(flags.full_group);
}

TEST_CASE("classify_sl3: orthogonal generators preserve a form") {
  FieldParams f7(7, 3);
  std::vector<GroupElement> gens = {
      GroupElement::from_entries(f7, {0, 1, 0, 6, 0, 0, 0, 0, 1}),  // rotation in the 1-2 plane
      GroupElement::from_entries(f7, {1, 0, 0, 0, 0, 1, 0, 6, 0}),  // rotation in the 2-3 plane
  };
  for (const auto& g : gens) CHECK(g.det() == 1);
  auto flags = classify_sl3(ElementSet::from_elements(gens));
  CHECK(flags.preserves_quadratic_form);
  CHECK_FALSE(flags.full_group);
}

TEST_CASE("classify_sl3: standard generators give the full group") {
  FieldParams f5(5, 3);
  auto flags = classify_sl3(ElementSet::from_elements(standard_generators(f5)));
  CHECK(flags.full_group);
  CHECK(flags.closure_size == 372000);
  CHECK_FALSE(flags.fixes_point);
  CHECK_FALSE(flags.any_proper_flag());
}

TEST_CASE("classify_sl3: abelian of small index") {
  FieldParams f7(7, 3);
  // the split torus plus a 3-cycle permutation: abelian subgroup of index 3
  std::vector<GroupElement> gens = {
      GroupElement::from_entries(f7, {3, 0, 0, 0, 5, 0, 0, 0, 1}),  // 3*5*1 = 15 = 1 mod 7
      GroupElement::from_entries(f7, {0, 1, 0, 0, 0, 1, 1, 0, 0}),
  };
  auto flags = classify_sl3(ElementSet::from_elements(gens));
  CHECK(flags.order_flags_known);
  CHECK(flags.abelian_index_le6);
  CHECK_FALSE(flags.full_group);
}

TEST_CASE("classify_sl2") {
  FieldParams f13(13, 2);
  // diagonal set: inside a Borel subgroup and a torus normalizer
  std::vector<GroupElement> diag = {GroupElement::from_entries(f13, {2, 0, 0, 7}),
                                    GroupElement::from_entries(f13, {4, 0, 0, 10})};
  auto flags = classify_sl2(ElementSet::from_elements(diag));
  CHECK(flags.in_borel);
  CHECK(flags.in_torus_normalizer);
  CHECK_FALSE(flags.full_group);
  CHECK(flags.galois_index_ok == 1);

  // diagonal/antidiagonal pair: torus normalizer but no common eigenvector
  std::vector<GroupElement> dih = {GroupElement::from_entries(f13, {2, 0, 0, 7}),
                                   GroupElement::from_entries(f13, {0, 1, 12, 0})};
  auto flags2 = classify_sl2(ElementSet::from_elements(dih));
  CHECK(flags2.in_torus_normalizer);
  CHECK_FALSE(flags2.in_borel);

  auto flags3 = classify_sl2(ElementSet::from_elements(standard_generators(f13)));
  CHECK(flags3.full_group);
  CHECK_FALSE(flags3.in_borel);
}

TEST_CASE("unipotent subgroup classification: explicit representatives") {
  FieldParams f5(5, 3);
  const std::uint32_t p = 5;

  auto make_closed = [&](std::vector<GroupElement> gens) {
    return *closure(ElementSet::from_elements(gens), 200);
  };

  CHECK(betson_classify(ElementSet::from_elements({GroupElement::identity(f5)})) ==
        UnipotentType::kTrivial);
  CHECK(betson_classify(make_closed({unitri(f5, 1, 0, 0), unitri(f5, 0, 0, 1)})) ==
        UnipotentType::kFull);
  CHECK(betson_classify(make_closed({unitri(f5, 1, 0, 0), unitri(f5, 0, 1, 0)})) ==
        UnipotentType::kRowPlane);
  CHECK(betson_classify(make_closed({unitri(f5, 0, 0, 1), unitri(f5, 0, 1, 0)})) ==
        UnipotentType::kColumnPlane);
  CHECK(betson_classify(make_closed({unitri(f5, 0, 1, 0)})) == UnipotentType::kCenterLine);
  CHECK(betson_classify(make_closed({unitri(f5, 1, 0, 0)})) == UnipotentType::kRootLine12);
  CHECK(betson_classify(make_closed({unitri(f5, 0, 0, 1)})) == UnipotentType::kRootLine23);
  CHECK(betson_classify(make_closed({unitri(f5, 1, 0, 1), unitri(f5, 0, 1, 0)})) ==
        UnipotentType::kBalancedPlane);
  // one-parameter regular curve: closure of exp of a regular nilpotent
  CHECK(betson_classify(make_closed({unitri(f5, 1, 3, 1)})) == UnipotentType::kPrincipalLine);

  CHECK((int)UnipotentType::kPrincipalLine == 8);  // nine labels in total
  CHECK(p == 5);
}

TEST_CASE("unipotent classification is invariant under Borel conjugation") {
  FieldParams f5(5, 3);
  auto make_closed = [&](std::vector<GroupElement> gens) {
    return *closure(ElementSet::from_elements(gens), 200);
  };
  std::vector<ElementSet> subs = {
      make_closed({unitri(f5, 1, 0, 0)}),
      make_closed({unitri(f5, 1, 2, 3)}),
      make_closed({unitri(f5, 1, 0, 0), unitri(f5, 0, 1, 0)}),
      make_closed({unitri(f5, 1, 0, 1), unitri(f5, 0, 1, 0)}),
  };
  // conjugation by upper-triangular elements (unipotent or not) stays inside
  // the Borel group and must not change the label
  std::vector<GroupElement> conjugators = {
      GroupElement::from_entries(f5, {1, 2, 4, 0, 1, 1, 0, 0, 1}),
      GroupElement::from_entries(f5, {2, 0, 0, 0, 3, 0, 0, 0, 1}),
      GroupElement::from_entries(f5, {3, 1, 0, 0, 4, 2, 0, 0, 3}),
  };
  for (const auto& b : conjugators)
    for (const auto& H : subs) {
      std::vector<GroupElement> conj;
      for (const auto& h : H.elements()) conj.push_back(conjugate(b, h));
      CHECK(betson_classify(ElementSet::from_elements(conj)) == betson_classify(H));
    }
}

TEST_CASE("parabolic decomposition") {
  FieldParams f11(11, 2);
  FieldParams f11_3(11, 3);

  // block-diagonal element of the mirabolic part: pi_minus is the element
  auto gm = GroupElement::from_entries(f11_3, {2, 3, 0, 5, 8, 0, 0, 0, 1});
  REQUIRE(gm.det() == 1);
  auto parts = parabolic_decompose(gm);
  REQUIRE(parts.pi_minus.has_value());
  CHECK(*parts.pi_minus == gm);
  CHECK(parts.pi_two == 1);
  CHECK(parts.pi_one.det() == 1);

  // translation part: pi_one is the identity
  auto ga = GroupElement::from_entries(f11_3, {1, 0, 4, 0, 1, 7, 0, 0, 1});
  auto parts2 = parabolic_decompose(ga);
  CHECK(parts2.pi_one == GroupElement::identity(f11));

  // random elements with a square corner: reassembly identity
  Rng rng(61);
  for (int t = 0; t < 50; t++) {
    std::uint64_t s = 1 + rng.below(10);
    std::uint64_t s2 = s * s % 11;
    auto m = random_element(f11, rng);  // SL2 block
    std::uint64_t si = FieldParams(11, 2).inv(s);
    auto g = GroupElement::from_entries(
        f11_3, {(std::uint32_t)((std::uint64_t)m.at(0, 0) * si % 11),
                (std::uint32_t)((std::uint64_t)m.at(0, 1) * si % 11), (std::uint32_t)rng.below(11),
                (std::uint32_t)((std::uint64_t)m.at(1, 0) * si % 11),
                (std::uint32_t)((std::uint64_t)m.at(1, 1) * si % 11), (std::uint32_t)rng.below(11),
                0, 0, (std::uint32_t)s2});
    REQUIRE(g.det() == 1);
    auto ps = parabolic_decompose(g);
    // reassemble: put the cleared column back onto pi_plus
    auto re = GroupElement::from_entries(
        f11_3, {ps.pi_plus.at(0, 0), ps.pi_plus.at(0, 1), ps.e, ps.pi_plus.at(1, 0),
                ps.pi_plus.at(1, 1), ps.f, 0, 0, ps.pi_plus.at(2, 2)});
    CHECK(re == g);
    // pi_one has determinant 1 and rebuilds the block up to the root scaling
    CHECK(ps.pi_one.det() == 1);
    std::uint64_t sc = ps.sqrt_pi_two;
    CHECK((sc * sc) % 11 == ps.pi_two);
  }

  // non-square corner or non-parabolic shape is rejected
  auto bad = GroupElement::from_entries(f11_3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK_NOTHROW(parabolic_decompose(bad));
  CHECK_THROWS_AS(parabolic_decompose(GroupElement::from_entries(
                      f11_3, {0, 1, 0, 0, 0, 1, 1, 0, 0})),
                  ConfigError);
  // 2 is a non-residue mod 11: diag(a, b, 2) with a*b = 6 has a non-square corner
  CHECK_THROWS_AS(parabolic_decompose(GroupElement::from_entries(
                      f11_3, {1, 0, 0, 0, 6, 0, 0, 0, 2})),
                  ConfigError);
}

TEST_CASE("four-factor unipotent factorization") {
  FieldParams f7(7, 3);
  auto id = GroupElement::identity(f7);
  auto fid = u1u2_factorize(id);
  CHECK(fid.u1 == id);
  CHECK(fid.u2 == id);

  auto up = unitri(f7, 2, 3, 4);
  auto fup = u1u2_factorize(up);
  CHECK(fup.u1 == up);
  CHECK(fup.u2 == id);
  CHECK(fup.u1p == id);
  CHECK(fup.u2p == id);

  Rng rng(62);
  for (int t = 0; t < 300; t++) {
    auto g = random_element(f7, rng);
    auto f = u1u2_factorize(g);
    CHECK(is_upper_unitriangular(f.u1));
    CHECK(is_lower_unitriangular(f.u2));
    CHECK(is_upper_unitriangular(f.u1p));
    CHECK(is_lower_unitriangular(f.u2p));
    CHECK(mul(mul(mul(f.u1, f.u2), f.u1p), f.u2p) == g);
  }
}

TEST_CASE("factorization is total on SL3(F5)") {
  // exhaustive run over all 372000 elements via the group closure
  FieldParams f5(5, 3);
  auto G = closure(ElementSet::from_elements(standard_generators(f5)), 400000);
  REQUIRE(G.has_value());
  REQUIRE(G->size() == 372000);
  std::size_t bad = 0;
  for (Code c : G->codes()) {
    auto g = GroupElement::decode(f5, c);
    auto f = u1u2_factorize(g);
    if (!(mul(mul(mul(f.u1, f.u2), f.u1p), f.u2p) == g)) bad++;
  }
  CHECK(bad == 0);
}

TEST_CASE("factorization is total on SL3(F2) and SL3(F3)") {
  for (auto& g : all_of_sl3_f2()) {
    auto f = u1u2_factorize(g);
    CHECK(mul(mul(mul(f.u1, f.u2), f.u1p), f.u2p) == g);
  }

  FieldParams f3(3, 3);
  std::uint64_t count = 0;
  std::uint64_t total = 19683;  // 3^9
  for (std::uint64_t code = 0; code < total; code++) {
    std::uint64_t c = code;
    std::vector<std::uint32_t> e(9);
    for (int i = 0; i < 9; i++) {
      e[i] = c % 3;
      c /= 3;
    }
    GroupElement g;
    try {
      g = GroupElement::from_entries(f3, e);
    } catch (const ConfigError&) {
      continue;
    }
    count++;
    auto f = u1u2_factorize(g);
    CHECK(mul(mul(mul(f.u1, f.u2), f.u1p), f.u2p) == g);
  }
  CHECK(count == 5616);
}

TEST_CASE("every proper subgroup of SL3(F2) carries a proper flag") {
  auto all = all_of_sl3_f2();
  REQUIRE(all.size() == 168);
  // every subgroup of this group is generated by at most two elements, so
  // closures of pairs enumerate the full subgroup lattice
  std::set<std::vector<Code>> seen;
  FieldParams f2(2, 3);
  std::size_t proper = 0, full = 0;
  for (std::size_t i = 0; i < all.size(); i++)
    for (std::size_t j = i; j < all.size(); j++) {
      auto cl = closure(ElementSet::from_elements({all[i], all[j]}), 200);
      if (!seen.insert(cl->codes()).second) continue;
      auto flags = classify_sl3(*cl, 400);
      if (cl->size() == 168) {
        CHECK(flags.full_group);
        full++;
      } else {
        CHECK(flags.any_proper_flag());
        proper++;
      }
    }
  CHECK(full == 1);
  CHECK(proper > 100);  // the lattice is rich: cyclic, Klein, S4-type, 7:3
}

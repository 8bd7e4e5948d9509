#include "doctest.h"
#include "growthlab/poly.hpp"

#include <sstream>

using namespace growthlab;

TEST_CASE("polynomial arithmetic and evaluation") {
  FieldParams f7(7, 3);
  auto one = PolySparse::constant(7, 9, 1);
  Rng rng(41);
  auto g = random_element(f7, rng);
  CHECK(one.eval(g) == 1);

  auto det1 = det_minus_one_poly(f7);
  for (int i = 0; i < 50; i++) CHECK(det1.eval(random_element(f7, rng)) == 0);

  auto disc = discriminant_poly(f7);
  CHECK(disc.eval(GroupElement::identity(f7)) == 0);

  CHECK_THROWS_AS(PolySparse::constant(7, 4, 1).eval(g), ConfigError);
}

TEST_CASE("discriminant expansion agrees with the numeric discriminant") {
  for (std::uint32_t p : {5u, 13u}) {
    FieldParams f2(p, 2);
    auto d2 = discriminant_poly(f2);
    Rng rng(42);
    for (int i = 0; i < 500; i++) {
      auto g = random_element(f2, rng);
      CHECK(d2.eval(g) == charpoly_discriminant(g));
    }
    FieldParams f3(p, 3);
    auto d3 = discriminant_poly(f3);
    for (int i = 0; i < 500; i++) {
      auto g = random_element(f3, rng);
      CHECK(d3.eval(g) == charpoly_discriminant(g));
    }
  }
}

TEST_CASE("discriminant of diagonal elements is the eigenvalue product formula") {
  FieldParams f13(13, 3);
  auto disc = discriminant_poly(f13);
  for (std::uint64_t a = 1; a < 13; a++)
    for (std::uint64_t b = 1; b < 13; b++) {
      std::uint64_t c = FieldParams(13, 3).inv(a * b % 13);
      auto g = GroupElement::from_entries(
          f13, {(std::uint32_t)a, 0, 0, 0, (std::uint32_t)b, 0, 0, 0, (std::uint32_t)c});
      std::uint64_t prod = 1;
      std::uint64_t ev[3] = {a, b, c};
      for (int i = 0; i < 3; i++)
        for (int j = i + 1; j < 3; j++) {
          std::uint64_t diff = (ev[i] + 13 - ev[j]) % 13;
          prod = prod * diff % 13 * diff % 13;
        }
      CHECK(disc.eval(g) == prod);
    }
}

TEST_CASE("variety file format round trip") {
  FieldParams f7(7, 3);
  Variety v;
  v.polys.push_back(discriminant_poly(f7));
  v.polys.push_back(det_minus_one_poly(f7));
  std::stringstream ss;
  v.write(ss);
  auto v2 = Variety::read(ss, 7, 9);
  REQUIRE(v2.polys.size() == 2);
  Rng rng(43);
  for (int i = 0; i < 100; i++) {
    auto g = random_element(f7, rng);
    CHECK(v.polys[0].eval(g) == v2.polys[0].eval(g));
    CHECK(v.polys[1].eval(g) == v2.polys[1].eval(g));
  }
}

TEST_CASE("escape") {
  FieldParams f7(7, 3);
  auto A = ElementSet::from_elements(standard_generators(f7));

  // x off the variety: the identity works at radius 0
  Variety disc;
  disc.polys.push_back(discriminant_poly(f7));
  auto x = GroupElement::from_entries(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4});
  auto w = escape(A, disc, x, 5);
  REQUIRE(w.has_value());
  CHECK(w->radius == 0);
  CHECK(w->g == GroupElement::identity(f7));

  // the empty-set variety {1 = 0}: nothing lies on it
  Variety never;
  never.polys.push_back(PolySparse::constant(7, 9, 1));
  auto w2 = escape(A, never, GroupElement::identity(f7), 5);
  REQUIRE(w2.has_value());
  CHECK(w2->radius == 0);

  // exhausted: the trivial set cannot move the identity off the locus
  auto only_id = ElementSet::from_elements({GroupElement::identity(f7)});
  CHECK_FALSE(escape(only_id, disc, GroupElement::identity(f7), 6).has_value());

  // witnesses never land on the variety, and runs are deterministic
  auto w3 = escape(A, disc, GroupElement::identity(f7), 10);
  REQUIRE(w3.has_value());
  CHECK_FALSE(disc.contains(mul(w3->g, GroupElement::identity(f7))));
  auto w4 = escape(A, disc, GroupElement::identity(f7), 10);
  CHECK(w3->g == w4->g);
  CHECK(w3->radius == w4->radius);
  // recorded witness: the cyclic permutation matrix (the smallest-code
  // regular semisimple element of the radius-1 layer) at radius 1
  CHECK(w3->radius == 1);
  CHECK(w3->g == GroupElement::from_entries(f7, {0, 1, 0, 0, 0, 1, 1, 0, 0}));
}

TEST_CASE("escape to a regular semisimple element") {
  FieldParams f7(7, 3);
  auto t = GroupElement::from_entries(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4});

  // already regular semisimple: identity witness
  auto A = ElementSet::from_elements(standard_generators(f7));
  auto w = escape_regss(A, t, 5);
  REQUIRE(w.has_value());
  CHECK(w->radius == 0);
  CHECK(w->g == GroupElement::identity(f7));

  // a single regular semisimple generator escapes at radius 1 from identity
  auto single = ElementSet::from_elements({t});
  auto w2 = escape_regss(single, GroupElement::identity(f7), 5);
  REQUIRE(w2.has_value());
  CHECK(w2->radius == 1);
  CHECK(is_regular_semisimple(mul(w2->g, GroupElement::identity(f7))));

  Rng rng(44);
  for (int trial = 0; trial < 25; trial++) {
    std::vector<GroupElement> gens = {random_element(f7, rng), random_element(f7, rng)};
    auto B = ElementSet::from_elements(gens);
    auto wb = escape_regss(B, GroupElement::identity(f7), 10);
    REQUIRE(wb.has_value());
    CHECK(is_regular_semisimple(mul(wb->g, GroupElement::identity(f7))));
    CHECK(wb->radius <= 10);
  }
}

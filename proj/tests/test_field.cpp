#include "doctest.h"
#include "growthlab/field.hpp"

#include <set>
#include <vector>

using namespace growthlab;

namespace {

// Enumeration oracle: count SL_n(F_p) by filtering all matrices on det = 1.
// Deliberately avoids the group-law code paths.
std::uint64_t count_by_determinant(std::uint32_t p, int n) {
  const int d = n * n;
  std::uint64_t total = 1;
  for (int i = 0; i < d; i++) total *= p;
  std::uint64_t count = 0;
  std::vector<std::uint64_t> m(d);
  for (std::uint64_t code = 0; code < total; code++) {
    std::uint64_t c = code;
    for (int i = 0; i < d; i++) {
      m[i] = c % p;
      c /= p;
    }
    std::uint64_t det;
    if (n == 2) {
      det = (m[0] * m[3] % p + p - m[1] * m[2] % p) % p;
    } else {
      auto mi = [&](int a1, int b1, int a2, int b2) {
        return (m[a1] * m[b2] % p + p - m[b1] * m[a2] % p) % p;
      };
      det = (m[0] * mi(4, 5, 7, 8) % p + p - m[1] * mi(3, 5, 6, 8) % p + m[2] * mi(3, 4, 6, 7) % p) % p;
    }
    if (det == 1) count++;
  }
  return count;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS(FieldParams(4, 2), ConfigError);
  CHECK_THROWS_AS(FieldParams(5, 4), ConfigError);
  CHECK_THROWS_AS(FieldParams(16411, 3), ConfigError);  // above the 3x3 cap
  CHECK(FieldParams(16381, 3).p == 16381);
}

TEST_CASE("multiplication basics") {
  FieldParams fp(5, 2);
  auto a = GroupElement::from_entries(fp, {1, 1, 0, 1});
  auto id = GroupElement::identity(fp);
  CHECK(mul(id, a) == a);
  CHECK(mul(a, id) == a);

  FieldParams f13(13, 2);
  auto g = GroupElement::from_entries(f13, {1, 1, 0, 1});
  auto h = GroupElement::from_entries(f13, {1, 0, 1, 1});
  CHECK(mul(g, h) == GroupElement::from_entries(f13, {2, 1, 1, 1}));

  CHECK_THROWS_AS(mul(a, g), ConfigError);

  Rng rng(1);
  for (int i = 0; i < 100; i++) {
    auto r = random_element(fp, rng);
    CHECK(mul(r, inv(r)) == id);
  }
}

TEST_CASE("inverse") {
  FieldParams fp(7, 3);
  auto id = GroupElement::identity(fp);
  CHECK(inv(id) == id);
  auto d = GroupElement::from_entries(fp, {2, 0, 0, 0, 2, 0, 0, 0, 2});
  CHECK(inv(d) == GroupElement::from_entries(fp, {4, 0, 0, 0, 4, 0, 0, 0, 4}));
  Rng rng(2);
  for (int i = 0; i < 100; i++) {
    auto r = random_element(fp, rng);
    CHECK(inv(inv(r)) == r);
    CHECK(r.det() == 1);
  }
}

TEST_CASE("kappa") {
  FieldParams f7(7, 3);
  Kappa k = kappa(GroupElement::identity(f7));
  CHECK(k.count == 2);
  CHECK(k.coeffs[0] == 7 - 3);  // char poly (l-1)^3
  CHECK(k.coeffs[1] == 3);

  FieldParams f5(5, 2);
  Kappa k2 = kappa(GroupElement::from_entries(f5, {1, 1, 0, 1}));
  CHECK(k2.count == 1);
  CHECK(k2.coeffs[0] == 3);

  Rng rng(3);
  for (int i = 0; i < 100; i++) {
    auto g = random_element(f7, rng);
    auto h = random_element(f7, rng);
    CHECK(kappa(conjugate(h, g)) == kappa(g));
  }
}

TEST_CASE("regular semisimple detection") {
  FieldParams f5(5, 2);
  CHECK_FALSE(is_regular_semisimple(GroupElement::identity(f5)));
  CHECK_FALSE(is_regular_semisimple(GroupElement::from_entries(f5, {1, 1, 0, 1})));

  FieldParams f7(7, 3);
  auto d = GroupElement::from_entries(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4});
  CHECK(d.det() == 1);
  CHECK(is_regular_semisimple(d));
  // oracle: disc of the char poly of a diagonal matrix is prod (li - lj)^2
  std::uint64_t prod = 1;
  std::uint64_t ev[3] = {1, 2, 4};
  for (int i = 0; i < 3; i++)
    for (int j = i + 1; j < 3; j++) {
      std::uint64_t diff = (ev[i] + 7 - ev[j]) % 7;
      prod = prod * diff % 7 * diff % 7;
    }
  CHECK(charpoly_discriminant(d) == prod);
}

TEST_CASE("encode and decode") {
  FieldParams f5(5, 2);
  CHECK(GroupElement::identity(f5).encode() == Code(126));
  Rng rng(4);
  for (int i = 0; i < 10000; i++) {
    auto g = random_element(f5, rng);
    CHECK(GroupElement::decode(f5, g.encode()) == g);
  }

  // injectivity on all of SL2(F3), via exhaustive enumeration
  FieldParams f3(3, 2);
  std::set<Code> codes;
  std::uint64_t count = 0;
  for (std::uint32_t a = 0; a < 3; a++)
    for (std::uint32_t b = 0; b < 3; b++)
      for (std::uint32_t c = 0; c < 3; c++)
        for (std::uint32_t d = 0; d < 3; d++) {
          if ((a * d % 3 + 3 - b * c % 3) % 3 != 1) continue;
          count++;
          codes.insert(GroupElement::from_entries(f3, {a, b, c, d}).encode());
        }
  CHECK(count == 24);
  CHECK(codes.size() == 24);
}

TEST_CASE("group order formula matches enumeration") {
  CHECK(count_by_determinant(3, 2) == FieldParams(3, 2).group_order());
  CHECK(count_by_determinant(5, 2) == FieldParams(5, 2).group_order());
  CHECK(count_by_determinant(7, 2) == FieldParams(7, 2).group_order());
  CHECK(count_by_determinant(2, 3) == FieldParams(2, 3).group_order());
  CHECK(count_by_determinant(3, 3) == FieldParams(3, 3).group_order());
  CHECK(FieldParams(3, 2).group_order() == 24);
  CHECK(FieldParams(5, 2).group_order() == 120);
  CHECK(FieldParams(2, 3).group_order() == 168);
  CHECK(FieldParams(3, 3).group_order() == 5616);
}

TEST_CASE("kappa separates conjugacy classes on regular semisimple elements") {
  // exhaustive in SL2(F3): equal kappa on reg-ss pairs implies conjugacy in G
  FieldParams fp(3, 2);
  std::vector<GroupElement> all;
  for (std::uint32_t a = 0; a < 3; a++)
    for (std::uint32_t b = 0; b < 3; b++)
      for (std::uint32_t c = 0; c < 3; c++)
        for (std::uint32_t d = 0; d < 3; d++)
          if ((a * d % 3 + 3 - b * c % 3) % 3 == 1)
            all.push_back(GroupElement::from_entries(fp, {a, b, c, d}));
  for (std::size_t i = 0; i < all.size(); i++) {
    if (!is_regular_semisimple(all[i])) continue;
    for (std::size_t j = i + 1; j < all.size(); j++) {
      if (!is_regular_semisimple(all[j])) continue;
      if (!(kappa(all[i]) == kappa(all[j]))) continue;
      bool conj = false;
      for (const auto& h : all)
        if (conjugate(h, all[i]) == all[j]) {
          conj = true;
          break;
        }
      CHECK(conj);
    }
  }
}

TEST_CASE("field helpers") {
  FieldParams fp(13, 2);
  CHECK(fp.mult_order(2) == 12);
  CHECK(fp.inv(2) == 7);
  CHECK(fp.is_square(4));
  CHECK(fp.sqrt_mod(4) == 2);
  CHECK_FALSE(fp.is_square(2));
  CHECK(fp.sqrt_mod(2) == 13);
}

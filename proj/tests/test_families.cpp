#include "doctest.h"
#include "growthlab/families.hpp"

using namespace growthlab;

TEST_CASE("family construction sizes match their closed forms") {
  FamilySpec heis{FamilyId::kHeisenbergBox, 7, 1, 0, 0.0};
  CHECK(build_family(heis).size() == 27);

  FamilySpec tp{FamilyId::kTorusPowers, 13, 5, 2, 0.0};
  CHECK(build_family(tp).size() == 5);

  FamilySpec dih{FamilyId::kDihedral, 13, 3, 2, 0.0};
  CHECK(build_family(dih).size() == 14);

  FamilySpec bf{FamilyId::kBorelFiber, 11, 4, 2, 0.0};
  CHECK(build_family(bf).size() == 44);

  FamilySpec be{FamilyId::kBorelEps, 1009, 64, 0, 0.25};
  CHECK(build_family(be).size() == 2 * 64);

  // auto-selected generator
  FamilySpec tp2{FamilyId::kTorusPowers, 13, 5, 0, 0.0};
  CHECK(build_family(tp2).size() == 5);
}

TEST_CASE("family parameter validation") {
  // 3 does not generate F_13^* (3^3 = 27 = 1)
  FamilySpec bad{FamilyId::kTorusPowers, 13, 5, 3, 0.0};
  CHECK_THROWS_AS(build_family(bad), ConfigError);

  FamilySpec big{FamilyId::kTorusPowers, 13, 13, 2, 0.0};
  CHECK_THROWS_AS(build_family(big), ConfigError);

  // dihedral window must avoid exponent wraparound
  FamilySpec wrap{FamilyId::kDihedral, 13, 6, 2, 0.0};
  CHECK_THROWS_AS(build_family(wrap), ConfigError);

  // box must fit the field: 2N^2+1 <= p
  FamilySpec box{FamilyId::kHeisenbergBox, 7, 2, 0, 0.0};
  CHECK_THROWS_AS(build_family(box), ConfigError);

  FamilySpec eps0{FamilyId::kBorelEps, 1009, 2, 0, 0.0};
  CHECK(build_family(eps0).size() == 2);  // floor(N^0) = 1 row
}

TEST_CASE("family regressions") {
  FamilySpec tp{FamilyId::kTorusPowers, 13, 5, 2, 0.0};
  auto r1 = family_regression(tp);
  CHECK(r1.growth.size_aaa == 12);
  CHECK(r1.bound_value == 15);
  CHECK(r1.pass);

  FamilySpec bf{FamilyId::kBorelFiber, 11, 4, 2, 0.0};
  auto r2 = family_regression(bf);
  CHECK(r2.growth.size_aaa == 110);
  CHECK(r2.pass);

  for (std::uint64_t N = 2; N <= 5; N++) {
    FamilySpec dih{FamilyId::kDihedral, 13, N, 2, 0.0};
    CHECK(family_regression(dih).pass);
  }

  FamilySpec heis{FamilyId::kHeisenbergBox, 1009, 2, 0, 0.0};
  auto r3 = family_regression(heis);
  CHECK(r3.exact_match_checked);
  CHECK(r3.growth.size_aaa == 6493);
  CHECK(r3.pass);

  FamilySpec be{FamilyId::kBorelEps, 1009, 64, 0, 0.25};
  auto r4 = family_regression(be);
  CHECK(r4.exact_match_checked);
  CHECK(r4.growth.size_aaa == 2591);
  CHECK(r4.pass);

  // no committed constant for an arbitrary borel_eps configuration
  FamilySpec unknown{FamilyId::kBorelEps, 1009, 50, 0, 0.25};
  CHECK_THROWS_AS(family_regression(unknown), ConfigError);
}

TEST_CASE("family name parsing") {
  CHECK(family_from_string("heisenberg") == FamilyId::kHeisenbergBox);
  CHECK(family_from_string("torus_powers") == FamilyId::kTorusPowers);
  CHECK_THROWS_AS(family_from_string("nope"), ConfigError);
}

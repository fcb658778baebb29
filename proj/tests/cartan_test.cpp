#include <doctest.h>

#include <set>

#include "kmr/cartan.hpp"
#include "kmr/errors.hpp"
#include "kmr/loop_algebra.hpp"

using namespace kmr;

TEST_CASE("validate_affine accepts the defining GCM of A1^1") {
  auto gcm = GeneralizedCartanMatrix::validate_affine({{2, -2}, {-2, 2}});
  CHECK(gcm->size() == 2);
  CHECK(gcm->null_vector() == std::vector<long>{1, 1});
}

TEST_CASE("validate_affine rejects finite and malformed matrices") {
  CHECK_THROWS_AS(GeneralizedCartanMatrix::validate_affine({{2, -1}, {-1, 2}}),
                  NotAffineError);
  CHECK_THROWS_AS(GeneralizedCartanMatrix::validate_affine({{1, -1}, {-1, 2}}),
                  NotGCMError);
  CHECK_THROWS_AS(GeneralizedCartanMatrix::validate_affine({{2, 1}, {-1, 2}}),
                  NotGCMError);
  CHECK_THROWS_AS(GeneralizedCartanMatrix::validate_affine({{2, 0}, {-1, 2}}),
                  NotGCMError);
  // two affine blocks: corank 2
  CHECK_THROWS_AS(GeneralizedCartanMatrix::validate_affine(
                      {{2, -2, 0, 0}, {-2, 2, 0, 0}, {0, 0, 2, -2}, {0, 0, -2, 2}}),
                  NotAffineError);
}

TEST_CASE("A2^1 null vector from the kernel") {
  auto gcm =
      GeneralizedCartanMatrix::validate_affine({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  CHECK(gcm->null_vector() == std::vector<long>{1, 1, 1});
  for (int i = 0; i < 3; ++i) {
    long s = 0;
    for (int j = 0; j < 3; ++j) s += gcm->a(i, j) * gcm->null_vector()[j];
    CHECK(s == 0);
  }
}

TEST_CASE("pairing values") {
  auto gcm = affine_type_a_gcm(2);
  WeightVector a0 = WeightVector::simple_root(*gcm, 0);
  CHECK(a0.pairing(1) == Rat(-2));
  CHECK(a0.pairing(0) == Rat(2));
  CHECK(a0.delta_coord() == Rat(1));
  WeightVector rho = WeightVector::rho(*gcm);
  for (int i = 0; i < 2; ++i) CHECK(rho.pairing(i) == Rat(1));
  WeightVector delta = WeightVector::delta(*gcm);
  for (int i = 0; i < 2; ++i) CHECK(delta.pairing(i) == Rat(0));
  CHECK(delta.delta_coord() == Rat(1));
  CHECK_THROWS_AS(rho.pairing(5), IndexOutOfRangeError);
}

TEST_CASE("antidominance predicate") {
  auto gcm = affine_type_a_gcm(2);
  WeightVector rho = WeightVector::rho(*gcm);
  CHECK(is_rho_regular_antidominant(*gcm, rho * Rat(-2)));
  CHECK_FALSE(is_rho_regular_antidominant(*gcm, WeightVector::zero(2)));
  CHECK_FALSE(is_rho_regular_antidominant(
      *gcm, WeightVector(std::vector<Rat>{Rat(-3), Rat(1)}, 0)));
}

TEST_CASE("positive roots of A1^1 up to height 3") {
  LoopAlgebra alg(2);
  auto roots = positive_roots_up_to_height(*alg.gcm(), 3, alg.imaginary_mult_fn());
  REQUIRE(roots.size() == 5);
  std::set<std::vector<long>> coords;
  for (const auto& r : roots) {
    coords.insert(r.simple_coords);
    CHECK(r.multiplicity == 1);
  }
  std::set<std::vector<long>> expect{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};
  CHECK(coords == expect);
}

TEST_CASE("positive roots of A1^1 at height 1 are the simples") {
  LoopAlgebra alg(2);
  auto roots = positive_roots_up_to_height(*alg.gcm(), 1, alg.imaginary_mult_fn());
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].height == 1);
  CHECK(roots[1].height == 1);
}

TEST_CASE("delta of A2^1 has multiplicity 2") {
  LoopAlgebra alg(3);
  auto roots = positive_roots_up_to_height(*alg.gcm(), 3, alg.imaginary_mult_fn());
  bool found = false;
  for (const auto& r : roots) {
    if (r.simple_coords == std::vector<long>{1, 1, 1}) {
      found = true;
      CHECK(r.multiplicity == 2);
      CHECK_FALSE(r.is_real);
    }
  }
  CHECK(found);
}

TEST_CASE("imaginary multiplicities need a realization") {
  auto gcm = affine_type_a_gcm(2);
  CHECK_THROWS_AS(positive_roots_up_to_height(*gcm, 2, nullptr),
                  MultiplicityUnavailableError);
  CHECK_NOTHROW(positive_roots_up_to_height(*gcm, 1, nullptr));
}

TEST_CASE("roots are sorted by height then coordinates") {
  LoopAlgebra alg(3);
  auto roots = positive_roots_up_to_height(*alg.gcm(), 6, alg.imaginary_mult_fn());
  for (size_t t = 1; t < roots.size(); ++t) {
    bool ordered = roots[t - 1].height < roots[t].height ||
                   (roots[t - 1].height == roots[t].height &&
                    roots[t - 1].simple_coords < roots[t].simple_coords);
    CHECK(ordered);
  }
}

TEST_CASE("decompose_in_simple_roots round trip") {
  auto gcm = affine_type_a_gcm(3);
  std::vector<long> coords{2, 1, 3};
  WeightVector w = root_from_simple_coords(*gcm, coords);
  auto dec = decompose_in_simple_roots(*gcm, w);
  REQUIRE(dec.has_value());
  for (int j = 0; j < 3; ++j) CHECK((*dec)[j] == Rat(coords[j]));
}

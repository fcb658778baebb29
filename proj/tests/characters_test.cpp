#include <doctest.h>

#include <functional>
#include <map>

#include "kmr/characters.hpp"
#include "kmr/errors.hpp"
#include "kmr/loop_algebra.hpp"
#include "kmr/weyl.hpp"

using namespace kmr;

namespace {

// Independent oracle: Kostant-style partition count. Counts the multisets
// of negative roots (with multiplicity copies counted as distinct colours)
// summing to the given offset.
long long partition_count(const std::vector<std::pair<std::vector<long>, long>>& roots,
                          const std::vector<long>& target) {
  // roots: (negative coords, multiplicity); recursive with memo on
  // (index, remaining) would be overkill at this scale; plain recursion.
  std::function<long long(size_t, std::vector<long>)> rec =
      [&](size_t idx, std::vector<long> rest) -> long long {
    bool zero = true;
    for (long c : rest)
      if (c != 0) zero = false;
    if (zero) return 1;
    if (idx == roots.size()) return 0;
    // choose the exponent profile of the multiplicity copies of this root:
    // k copies across m colours contribute C(k + m - 1, m - 1) ways.
    const auto& [rc, mult] = roots[idx];
    long long total = 0;
    std::vector<long> cur = rest;
    long k = 0;
    while (true) {
      // k copies spread over mult colours: C(k + mult - 1, mult - 1) ways
      long long ways = 1;
      for (long t = 1; t < mult; ++t) ways = ways * (k + t) / t;
      total += ways * rec(idx + 1, cur);
      bool ok = true;
      for (size_t j = 0; j < cur.size(); ++j) {
        cur[j] -= rc[j];
        if (cur[j] < 0) ok = false;
      }
      ++k;
      if (!ok) break;
    }
    return total;
  };
  return rec(0, target);
}

}  // namespace

TEST_CASE("verma character values against the partition oracle") {
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-2);
  CharRegion region;
  region.base = lambda;
  region.i = 1;
  region.x_min = -6;
  region.x_max = 0;
  region.delta_min = -3;
  region.residual_bound = 0;
  auto chr = char_verma(gcm, lambda, region, alg->imaginary_mult_fn());

  WeightVector a1 = WeightVector::simple_root(*gcm, 1);
  WeightVector delta = WeightVector::delta(*gcm);
  CHECK(chr.mult(lambda) == 1);
  CHECK(chr.mult(lambda - a1) == 1);
  CHECK(chr.mult(lambda - delta) == 2);
  CHECK(chr.mult(lambda + a1) == 0);

  // full-region comparison against the oracle
  auto roots = positive_roots_up_to_height(*gcm, 14, alg->imaginary_mult_fn());
  std::vector<std::pair<std::vector<long>, long>> neg;
  for (const auto& r : roots) neg.push_back({r.simple_coords, r.multiplicity});
  for (long x = region.x_min; x <= region.x_max; ++x) {
    for (long y = region.delta_min; y <= 0; ++y) {
      // offset = -(x alpha_1 + y delta) expressed in positive coordinates
      std::vector<long> target{-(y), -(x + y)};
      if (target[0] < 0 || target[1] < 0) continue;
      WeightVector mu = lambda + a1 * Rat(x) + delta * Rat(y);
      CHECK(chr.mult(mu) == partition_count(neg, target));
    }
  }
}

TEST_CASE("relaxed formula rows") {
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-2);
  Rat alpha(1, 2);
  CharRegion region = relaxed_region(gcm, lambda, alpha, 1, -6, 6, 2, 0);
  auto chr = char_relaxed_formula(gcm, lambda, alpha, 1, region,
                                  alg->imaginary_mult_fn());
  WeightVector a1 = WeightVector::simple_root(*gcm, 1);
  WeightVector delta = WeightVector::delta(*gcm);
  for (long x = -6; x <= 6; ++x) {
    WeightVector top = region.base + a1 * Rat(x);
    CHECK(chr.mult(top) == 1);
    CHECK(chr.mult(top - delta) == 3);
    CHECK(chr.mult(top - delta * 2) == 9);
  }
}

TEST_CASE("alpha shift leaves the relaxed character unchanged") {
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-3);
  for (const Rat& alpha : {Rat(1, 3), Rat(-1, 2), Rat(0)}) {
    CharRegion r1 = relaxed_region(gcm, lambda, alpha, 1, -5, 5, 2, 0);
    CharRegion r2 = relaxed_region(gcm, lambda, alpha + 1, 1, -5, 5, 2, 0);
    auto c1 =
        char_relaxed_formula(gcm, lambda, alpha, 1, r1, alg->imaginary_mult_fn());
    auto c2 =
        char_relaxed_formula(gcm, lambda, alpha + 1, 1, r2, alg->imaginary_mult_fn());
    auto cmp = equal_on_region(c1, c2);
    CHECK(cmp.equal);
  }
}

TEST_CASE("integer fan shifts of the base weight are absorbed") {
  // char R(s_1 w . lambda, alpha) = char R(w . lambda, alpha): the two base
  // weights differ by an integer multiple of alpha_1, which the Z-fan eats.
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-3);
  auto s1 = WeylElement::simple(gcm, 1);
  auto s0 = WeylElement::simple(gcm, 0);
  WeylElement w = s1.multiply(s0);
  WeightVector wl = w.dot_act(lambda);
  WeightVector siwl = s1.multiply(w).dot_act(lambda);
  Rat alpha(1, 3);
  auto c1 = char_relaxed_formula(gcm, wl, alpha, 1,
                                 relaxed_region(gcm, wl, alpha, 1, -8, 8, 2, 0),
                                 alg->imaginary_mult_fn());
  auto c2 = char_relaxed_formula(gcm, siwl, alpha, 1,
                                 relaxed_region(gcm, siwl, alpha, 1, -8, 8, 2, 0),
                                 alg->imaginary_mult_fn());
  // compare supports on a central box valid for both windows
  int checked = 0;
  WeightVector a1 = WeightVector::simple_root(*gcm, 1);
  WeightVector delta = WeightVector::delta(*gcm);
  WeightVector base = wl + a1 * rat_frac(alpha);
  for (int x = -2; x <= 2; ++x) {
    for (int y = 0; y >= -2; --y) {
      WeightVector mu = base + a1 * Rat(x) + delta * Rat(y);
      CHECK(c1.mult(mu) == c2.mult(mu));
      if (c1.mult(mu) > 0) ++checked;
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("equal_on_region reports the first discrepancy") {
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-2);
  CharRegion region;
  region.base = lambda;
  region.i = 1;
  region.x_min = -2;
  region.x_max = 0;
  region.delta_min = -1;
  region.residual_bound = 0;
  auto c1 = char_verma(gcm, lambda, region, alg->imaginary_mult_fn());
  FormalCharacter c2(gcm, region);
  for (const auto& [w, m] : c1.support()) c2.add(w, m);
  WeightVector delta = WeightVector::delta(*gcm);
  c2.add(lambda - delta, 1);
  auto cmp = equal_on_region(c1, c2);
  CHECK_FALSE(cmp.equal);
  REQUIRE(cmp.first_difference.has_value());
  CHECK(*cmp.first_difference == lambda - delta);

  CharRegion other = region;
  other.x_min = -3;
  FormalCharacter c3(gcm, other);
  CHECK_THROWS_AS(equal_on_region(c1, c3), RegionMismatchError);
}

TEST_CASE("rank 3 verma character against the oracle") {
  auto alg = std::make_shared<LoopAlgebra>(3);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-2);
  CharRegion region;
  region.base = lambda;
  region.i = 1;
  region.x_min = -4;
  region.x_max = 0;
  region.delta_min = -2;
  region.residual_bound = 4;
  auto chr = char_verma(gcm, lambda, region, alg->imaginary_mult_fn());

  auto roots = positive_roots_up_to_height(*gcm, 16, alg->imaginary_mult_fn());
  std::vector<std::pair<std::vector<long>, long>> neg;
  for (const auto& r : roots) neg.push_back({r.simple_coords, r.multiplicity});
  // check every weight the character reports, plus zero multiplicities nearby
  long checked = 0;
  for (const auto& [mu, mult] : chr.support()) {
    auto dec = decompose_in_simple_roots(*gcm, mu - lambda);
    REQUIRE(dec.has_value());
    std::vector<long> target(3);
    for (int j = 0; j < 3; ++j) target[j] = -rat_to_long((*dec)[j]);
    CHECK(mult == partition_count(neg, target));
    ++checked;
  }
  CHECK(checked > 10);
}

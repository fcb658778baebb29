#include "kmr/verify.hpp"

#include <random>
#include <sstream>

#include "kmr/characters.hpp"
#include "kmr/errors.hpp"
#include "kmr/induced.hpp"
#include "kmr/loop_algebra.hpp"
#include "kmr/p1.hpp"
#include "kmr/sl2_relaxed.hpp"
#include "kmr/weyl.hpp"

namespace kmr {

namespace {

VerifyResult fail(const std::string& suite, const std::string& detail) {
  return {suite, false, detail};
}

VerifyResult pass(const std::string& suite) { return {suite, true, ""}; }

std::vector<long> negate(const std::vector<long>& c) {
  std::vector<long> r(c);
  for (auto& x : r) x = -x;
  return r;
}

}  // namespace

VerifyResult verify_cartan(const VerifyParams& p) {
  const char* suite = "cartan";
  LoopAlgebra alg(p.rank);
  auto gcm = alg.gcm();
  long H = std::min<long>(p.depth, 12);
  auto roots = positive_roots_up_to_height(*gcm, H, alg.imaginary_mult_fn());

  std::set<std::vector<long>> root_set;
  for (const auto& rd : roots) root_set.insert(rd.simple_coords);

  // Real roots reflect to roots of the same multiplicity inside the window.
  for (const auto& rd : roots) {
    for (int i = 0; i < gcm->size(); ++i) {
      std::vector<long> r = rd.simple_coords;
      long s = 0;
      for (int j = 0; j < gcm->size(); ++j) s += gcm->a(i, j) * r[j];
      r[i] -= s;
      long ht = 0;
      for (long c : r) ht += c;
      if (ht >= 1 && ht <= H) {
        if (!root_set.count(r))
          return fail(suite, "reflection of " + rd.root.str() + " left the root set");
        if (rd.is_real && alg.root_space_dimension(r) != rd.multiplicity)
          return fail(suite, "reflection changed a multiplicity");
      }
    }
  }

  // Imaginary roots are the delta multiples, with multiplicity rank-1.
  for (const auto& rd : roots) {
    if (!rd.is_real && rd.multiplicity != p.rank - 1)
      return fail(suite, "delta multiple with unexpected multiplicity");
  }

  // The dot action does not depend on the choice of rho with rho(h_i) = 1.
  auto s0 = WeylElement::simple(gcm, 0);
  WeightVector lam(std::vector<Rat>(gcm->size(), Rat(-2)), Rat(1) / 3);
  WeightVector rho1 = WeightVector::rho(*gcm);
  WeightVector rho2 = rho1;
  rho2 = WeightVector(std::vector<Rat>(gcm->size(), 1), Rat(5) / 7);
  WeightVector d1 = s0.act(lam + rho1) - rho1;
  WeightVector d2 = s0.act(lam + rho2) - rho2;
  for (int i = 0; i < gcm->size(); ++i)
    if (d1.pairing(i) != d2.pairing(i))
      return fail(suite, "dot action depends on the rho choice");
  return pass(suite);
}

VerifyResult verify_weyl(const VerifyParams& p) {
  const char* suite = "weyl";
  LoopAlgebra alg(p.rank);
  auto gcm = alg.gcm();
  auto elements = enumerate_weyl(gcm, p.max_length);

  for (const auto& w : elements) {
    for (int i = 0; i < gcm->size(); ++i) {
      WeylElement sw = WeylElement::simple(gcm, i).multiply(w);
      if (std::abs(sw.length() - w.length()) != 1)
        return fail(suite, "length of s_i w differs from l(w) +- 1 at " + w.str());
    }
    if (!bruhat_leq(WeylElement::identity(gcm), w))
      return fail(suite, "identity not below " + w.str());
  }

  // Partial-order axioms on the enumerated set.
  for (const auto& u : elements) {
    for (const auto& w : elements) {
      bool uw = bruhat_leq(u, w), wu = bruhat_leq(w, u);
      if (uw && u.length() > w.length())
        return fail(suite, "bruhat_leq violates length monotonicity");
      if (uw && wu && !(u == w)) return fail(suite, "antisymmetry failed");
    }
  }
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<size_t> pick(0, elements.size() - 1);
  for (int t = 0; t < 200; ++t) {
    const auto& a = elements[pick(rng)];
    const auto& b = elements[pick(rng)];
    const auto& c = elements[pick(rng)];
    if (bruhat_leq(a, b) && bruhat_leq(b, c) && !bruhat_leq(a, c))
      return fail(suite, "transitivity failed");
  }

  // Inversion count equals the length.
  long H = 3 * p.max_length + 3;
  auto roots = positive_roots_up_to_height(*gcm, H, alg.imaginary_mult_fn());
  for (const auto& w : elements) {
    WeylElement winv = w.inverse();
    long inversions = 0;
    for (const auto& rd : roots) {
      auto img = winv.act_on_root(rd.simple_coords);
      bool neg = false;
      for (long c : img)
        if (c != 0) {
          neg = c < 0;
          break;
        }
      if (neg) ++inversions;
    }
    if (inversions != w.length())
      return fail(suite, "inversion count mismatch at " + w.str());
  }

  // Strata: dimensions are lengths and the plain/mirror swap preserves the
  // arrow set.
  for (int i = 0; i < gcm->size(); ++i) {
    StrataPoset sp = strata(gcm, i, std::min(p.max_length, 5));
    std::map<StratumLabel, int> index;
    for (size_t k = 0; k < sp.nodes.size(); ++k) {
      if (sp.nodes[k].dimension() != sp.nodes[k].w.length())
        return fail(suite, "stratum dimension mismatch");
      index.emplace(sp.nodes[k], static_cast<int>(k));
    }
    auto swapped = [&](int idx) {
      StratumLabel lab = sp.nodes[idx];
      if (lab.kind == StratumLabel::Kind::Plain)
        lab.kind = StratumLabel::Kind::Mirror;
      else if (lab.kind == StratumLabel::Kind::Mirror)
        lab.kind = StratumLabel::Kind::Plain;
      return index.at(lab);
    };
    std::set<std::pair<int, int>> arrows(sp.arrows.begin(), sp.arrows.end());
    for (const auto& [a, b] : sp.arrows) {
      if (!arrows.count({swapped(a), swapped(b)}))
        return fail(suite, "plain/mirror swap is not a poset automorphism");
    }
  }
  return pass(suite);
}

VerifyResult verify_algebra(const VerifyParams& p) {
  const char* suite = "algebra";
  LoopAlgebra alg(p.rank);
  auto gcm = alg.gcm();
  int trunc = p.depth;

  // Collect basis elements within a small window.
  std::vector<AlgebraElement> sample;
  auto roots = positive_roots_up_to_height(*gcm, std::min<long>(p.depth, 8),
                                           alg.imaginary_mult_fn());
  for (const auto& rd : roots) {
    for (const auto& b : alg.basis_of_root(rd.simple_coords))
      sample.emplace_back(b, Rat(1), trunc);
    for (const auto& b : alg.basis_of_root(negate(rd.simple_coords)))
      sample.emplace_back(b, Rat(1), trunc);
  }
  for (int i = 0; i < gcm->size(); ++i) sample.push_back(alg.h(i, trunc));

  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<size_t> pick(0, sample.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const auto& x = sample[pick(rng)];
    const auto& y = sample[pick(rng)];
    const auto& z = sample[pick(rng)];
    AlgebraElement xy = alg.bracket(x, y);
    AlgebraElement yx = alg.bracket(y, x);
    if (!(xy + yx).is_zero()) return fail(suite, "antisymmetry failed");
    AlgebraElement jac = alg.bracket(x, alg.bracket(y, z)) +
                         alg.bracket(y, alg.bracket(z, x)) +
                         alg.bracket(z, alg.bracket(x, y));
    if (!jac.is_zero()) return fail(suite, "Jacobi identity failed");
  }

  // Grading: bracket of root vectors lands in the sum root space.
  for (int t = 0; t < 40; ++t) {
    const auto& x = sample[pick(rng)];
    const auto& y = sample[pick(rng)];
    const LoopBasisElement& xb = x.terms().begin()->first;
    const LoopBasisElement& yb = y.terms().begin()->first;
    WeightVector sum = alg.weight_of(xb) + alg.weight_of(yb);
    AlgebraElement br = alg.bracket(x, y);
    for (const auto& [zb, zc] : br.terms()) {
      if (!(alg.weight_of(zb) == sum)) return fail(suite, "grading violated");
    }
  }

  // Tits automorphism is a Lie algebra map and acts on h as the reflection.
  for (int i = 0; i < gcm->size(); ++i) {
    for (int t = 0; t < 25; ++t) {
      const auto& x = sample[pick(rng)];
      const auto& y = sample[pick(rng)];
      AlgebraElement lhs = alg.tits_automorphism(i, alg.bracket(x, y));
      AlgebraElement rhs =
          alg.bracket(alg.tits_automorphism(i, x), alg.tits_automorphism(i, y));
      if (!(lhs - rhs).is_zero())
        return fail(suite, "Tits automorphism is not a Lie algebra map");
    }
    for (int j = 0; j < gcm->size(); ++j) {
      AlgebraElement lhs = alg.tits_automorphism(i, alg.h(j, trunc));
      AlgebraElement rhs = alg.h(j, trunc) - alg.h(i, trunc) * Rat(gcm->a(i, j));
      if (!(lhs - rhs).is_zero())
        return fail(suite, "Tits automorphism differs from the reflection on h");
    }
    // sl2 triple relations for (e_i, h_i, f_i).
    AlgebraElement e = alg.e(i, trunc), f = alg.f(i, trunc), h = alg.h(i, trunc);
    if (!(alg.bracket(e, f) - h).is_zero() ||
        !(alg.bracket(h, e) - e * 2).is_zero() ||
        !(alg.bracket(h, f) + f * 2).is_zero())
      return fail(suite, "sl2 triple relations failed");
  }

  // Delta bound: holds at d = 4, fails at d = 0.
  std::string witness;
  for (long l = 4; l <= 6; ++l) {
    if (!alg.verify_delta_bound(1, l, 4, p.depth, &witness))
      return fail(suite, "delta bound failed at d=4, l=" + std::to_string(l) +
                             ": " + witness);
  }
  if (alg.verify_delta_bound(1, 5, 0, p.depth, &witness))
    return fail(suite, "delta bound unexpectedly holds at d=0");
  return pass(suite);
}

VerifyResult verify_sl2(const VerifyParams& p) {
  const char* suite = "sl2";
  int w = 8;
  std::vector<std::pair<Sl2Family, Rat>> cases;
  for (long L = -4; L <= 4; ++L) {
    cases.emplace_back(Sl2Family::Eq, Rat(L));
    cases.emplace_back(Sl2Family::Lt, Rat(L));
    cases.emplace_back(Sl2Family::Gt, Rat(L));
    cases.emplace_back(Sl2Family::Generic, Rat(L));
  }
  cases.emplace_back(Sl2Family::Generic, Rat(-3));
  for (const auto& [fam, L] : cases) {
    Rat alpha = fam == Sl2Family::Generic ? Rat(1, 2) : Rat(0);
    DenseSl2Module m = DenseSl2Module::construct(L, fam, alpha, -w, w);
    if (auto bad = m.table().first_relation_violation())
      return fail(suite, "sl2 relations failed at slot " + std::to_string(*bad));
    DenseSl2Module dd = m.dual_sl2().dual_sl2();
    if (!dd.table().same_tables(m.table().gauge_normalized()))
      return fail(suite, "double dual differs from the original");
    if (fam == Sl2Family::Generic) {
      if (!m.a_zero_indices().empty() || !m.b_zero_indices().empty())
        return fail(suite, "generic family has a break");
    }
    if (fam == Sl2Family::Eq) {
      long Lint = rat_to_long(L);
      auto az = m.a_zero_indices(), bz = m.b_zero_indices();
      std::vector<int> expect_a, expect_b;
      if (-Lint - 1 >= -w && -Lint - 1 <= w - 1)
        expect_a.push_back(static_cast<int>(-Lint - 1));
      expect_b.push_back(1);
      if (az != expect_a || bz != expect_b)
        return fail(suite, "eq family break pattern unexpected at Lambda=" +
                               std::to_string(Lint));
    }
  }
  return pass(suite);
}

VerifyResult verify_induced(const VerifyParams& p) {
  const char* suite = "induced";
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-2);
  DenseSl2Module top =
      DenseSl2Module::construct(lambda.pairing(1), Sl2Family::Generic, Rat(1, 2),
                                -8, 8);
  InducedTruncation tr;
  tr.delta_depth = 2;
  tr.x_lo = -6;
  tr.x_hi = 6;
  tr.top_lo = -8;
  tr.top_hi = 8;
  auto mod = InducedModule::relaxed(alg, 1, lambda, top, tr);

  // Representation property on sampled pairs of generators and vectors.
  std::vector<AlgebraElement> gens;
  for (int i = 0; i < 2; ++i) {
    gens.push_back(alg->e(i, 4));
    gens.push_back(alg->f(i, 4));
    gens.push_back(alg->h(i, 4));
  }
  gens.emplace_back(LoopBasisElement::H(1, -1), Rat(1), 4);
  gens.emplace_back(LoopBasisElement::E(1, 2, -1), Rat(1), 4);
  gens.emplace_back(LoopBasisElement::E(2, 1, 1), Rat(1), 4);
  gens.emplace_back(LoopBasisElement::D(), Rat(1), 4);
  gens.emplace_back(LoopBasisElement::K(), Rat(1), 4);

  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> top_pick(-2, 2);
  int checked = 0;
  for (int t = 0; t < 80 && checked < 40; ++t) {
    const auto& x = gens[pick(rng)];
    const auto& y = gens[pick(rng)];
    ModuleVector v = mod->top_vector(top_pick(rng));
    try {
      ModuleVector lhs = mod->act(x, mod->act(y, v)) - mod->act(y, mod->act(x, v));
      ModuleVector rhs = mod->act(alg->bracket(x, y), v);
      if (!(lhs - rhs).is_zero())
        return fail(suite, "representation property failed");
      ++checked;
    } catch (const DepthOverflowError&) {
      continue;  // sample hit the truncation boundary
    }
  }
  if (checked < 10) return fail(suite, "not enough representation samples");

  // Local nilpotency of n_i within the window: positive root vectors other
  // than e_i kill every vector after at most depth+1 steps.
  std::vector<LoopBasisElement> ni_roots{
      LoopBasisElement::E(1, 2, 1),   // alpha_1 + delta
      LoopBasisElement::E(2, 1, 1),   // alpha_0
      LoopBasisElement::H(1, 1),      // delta
      LoopBasisElement::E(1, 2, 2),
  };
  for (const auto& xr : ni_roots) {
    AlgebraElement x(xr, 1, 6);
    for (int start : {-2, 0, 1}) {
      ModuleVector v = mod->top_vector(start);
      v = v + mod->act(alg->f(0, 6), v);  // mix in a PBW-dressed component
      for (int k = 0; k < 2 * tr.delta_depth + 2 && !v.is_zero(); ++k)
        v = mod->act(x, v);
      if (!v.is_zero())
        return fail(suite, "n_i root vector not nilpotent in window: " + xr.str());
    }
  }
  return pass(suite);
}

VerifyResult verify_characters(const VerifyParams& p) {
  const char* suite = "characters";
  auto alg = std::make_shared<LoopAlgebra>(2);
  auto gcm = alg->gcm();
  WeightVector lambda = WeightVector::rho(*gcm) * Rat(-2);

  // alpha-shift invariance of the relaxed formula.
  for (const Rat& alpha : {Rat(1, 3), Rat(-1, 2), Rat(0)}) {
    CharRegion r1 = relaxed_region(gcm, lambda, alpha, 1, -4, 4, 2, 0);
    CharRegion r2 = relaxed_region(gcm, lambda, alpha + 1, 1, -4, 4, 2, 0);
    auto c1 = char_relaxed_formula(gcm, lambda, alpha, 1, r1, alg->imaginary_mult_fn());
    auto c2 =
        char_relaxed_formula(gcm, lambda, alpha + 1, 1, r2, alg->imaginary_mult_fn());
    auto cmp = equal_on_region(c1, c2);
    if (!cmp.equal) return fail(suite, "alpha shift changed the character: " + cmp.str());
  }

  // Twist equivariance: the twisted module character is the s_i image.
  DenseSl2Module top = DenseSl2Module::construct(lambda.pairing(1), Sl2Family::Eq,
                                                 Rat(0), -8, 8);
  InducedTruncation tr;
  tr.delta_depth = 2;
  tr.x_lo = -5;
  tr.x_hi = 5;
  tr.top_lo = -8;
  tr.top_hi = 8;
  auto mod = InducedModule::relaxed(alg, 1, lambda, top, tr);
  auto base_dims = mod->dimension_table();
  TwistedModuleView tw(mod, 1);
  auto twisted = tw.dimension_table();
  std::map<WeightVector, long long> base_ll(base_dims.begin(), base_dims.end());
  auto reflected = reflect_support(gcm, 1, base_ll);
  std::map<WeightVector, long long> twisted_ll(twisted.begin(), twisted.end());
  if (reflected != twisted_ll)
    return fail(suite, "twisted character is not the s_i image");

  // Top-row partition: s_i(char M(w.lambda)) and char M(s_i w.lambda)
  // partition the fan row of char R(w.lambda, =).
  auto s1 = WeylElement::simple(gcm, 1);
  auto s0 = WeylElement::simple(gcm, 0);
  WeylElement w = s1.multiply(s0);  // any w with s_1 w < w
  WeightVector wl = w.dot_act(lambda);
  long Lw = rat_to_long(wl.pairing(1));
  std::set<long> fan_offsets;
  for (long n = -8; n <= 8; ++n) fan_offsets.insert(n);
  std::set<long> part;
  for (long kk = 0; kk <= 80; ++kk) {
    // s_i image of the M(w.lambda) string: offsets -Lw + k
    long off = -Lw + kk;
    if (off >= -8 && off <= 8) part.insert(off);
    // M(s_i w . lambda) string: offsets -(Lw+1) - k
    long off2 = -(Lw + 1) - kk;
    if (off2 >= -8 && off2 <= 8) part.insert(off2);
  }
  if (part != fan_offsets)
    return fail(suite, "top-row strings do not partition the fan");
  return pass(suite);
}

VerifyResult verify_p1(const VerifyParams& p) {
  const char* suite = "p1";
  for (int n_twist = -3; n_twist <= 5; ++n_twist) {
    auto [lo, hi] = default_p1_window(n_twist);
    // Star extensions have no higher cohomology.
    auto star = cohomology(TwistedP1Module::c_times(n_twist, Rat(0),
                                                    TwistedP1Module::Extension::Star),
                           lo, hi);
    if (star.h1_total() != 0) return fail(suite, "star extension with H1 != 0");
    auto bstar = cohomology(
        TwistedP1Module::a1_cell(n_twist, TwistedP1Module::Extension::Star), lo, hi);
    if (bstar.h1_total() != 0) return fail(suite, "cell star extension with H1 != 0");
    // M family: H1 nonzero exactly for n_twist <= 0.
    auto mfam = cohomology(
        TwistedP1Module::a1_cell(n_twist, TwistedP1Module::Extension::Shriek), lo, hi);
    if ((mfam.h1_total() != 0) != (n_twist <= 0))
      return fail(suite, "M family H1 pattern wrong at n_twist=" +
                             std::to_string(n_twist));
    // Euler consistency per slot.
    for (int s = lo; s <= hi; ++s) {
      auto get = [&](const std::map<int, int>& mm) {
        auto it = mm.find(s);
        return it == mm.end() ? 0 : it->second;
      };
      int chi_chart = get(mfam.chart0_dims) + get(mfam.chart1_dims) -
                      get(mfam.overlap_dims);
      int chi_coh = get(mfam.h0_dims) - get(mfam.h1_dims);
      if (chi_chart != chi_coh) return fail(suite, "Euler characteristic mismatch");
    }
    // alpha shift invariance for fractional monodromy.
    auto a1 = cohomology(TwistedP1Module::c_times(n_twist, Rat(1, 3),
                                                  TwistedP1Module::Extension::Star),
                         lo, hi);
    auto a2 = cohomology(TwistedP1Module::c_times(n_twist, Rat(4, 3),
                                                  TwistedP1Module::Extension::Star),
                         lo, hi);
    if (!a1.h0.same_tables(a2.h0))
      return fail(suite, "alpha shift changed the P1 tables");
    // Double dual returns the original tables.
    auto sh = shriek_via_duality(TwistedP1Module::c_times(
                                     n_twist, Rat(0),
                                     TwistedP1Module::Extension::Shriek),
                                 lo, hi);
    auto back = sh;
    back.h0 = sh.h0.dual();
    if (!back.h0.same_tables(star.h0.gauge_normalized()))
      return fail(suite, "double dual differs from the star tables");
  }
  return pass(suite);
}

std::vector<VerifyResult> run_suite(const std::string& name, const VerifyParams& p) {
  std::vector<VerifyResult> out;
  auto want = [&](const char* s) { return name == "all" || name == s; };
  if (want("cartan")) out.push_back(verify_cartan(p));
  if (want("weyl")) out.push_back(verify_weyl(p));
  if (want("algebra")) out.push_back(verify_algebra(p));
  if (want("sl2")) out.push_back(verify_sl2(p));
  if (want("induced")) out.push_back(verify_induced(p));
  if (want("characters")) out.push_back(verify_characters(p));
  if (want("p1")) out.push_back(verify_p1(p));
  if (out.empty()) throw BadParametersError("unknown suite: " + name);
  return out;
}

}  // namespace kmr

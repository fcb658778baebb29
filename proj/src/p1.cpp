#include "kmr/p1.hpp"

#include <algorithm>
#include <sstream>

#include "kmr/errors.hpp"

namespace kmr {

namespace {

using Source = TwistedP1Module::Source;
using Extension = TwistedP1Module::Extension;

// Slot-diagonal chart space: a masked coefficient table plus the per-slot
// restriction coefficient into the overlap sections.
struct Chart {
  Sl2Table ops;
  std::vector<Rat> restr;

  bool present(int s) const { return ops.has(s); }
};

enum class Role {
  AllSections,   // full Laurent sections of the local system
  BangAtX,       // !-model at the chart-origin point (delta part below 0)
  BangAtZ,       // !-model at the opposite point (delta part above m)
  CellRegular,   // sections regular away from the removed point: slots <= m
  RegularAtX,    // minimal-extension sections at the origin: slots >= 0
  SkyQuotient,   // skyscraper sections at the chart origin: slots <= -1
  Zero,
};

// The base operator table on section slots: slot s carries x-degree
// betafrac + s; e raises the slot, f lowers it, h reads the twist m.
Sl2Table base_table(const Rat& betafrac, int m, int w_lo, int w_hi) {
  Sl2Table t;
  t.h0 = 2 * betafrac - m;
  t.n_min = w_lo;
  t.n_max = w_hi;
  t.present.assign(t.slots(), 1);
  t.a.assign(t.slots(), 0);
  t.b.assign(t.slots(), 0);
  for (int s = w_lo; s <= w_hi; ++s) {
    Rat beta = betafrac + s;
    t.a[s - w_lo] = Rat(m) - beta;
    t.b[s - w_lo] = beta;
  }
  return t;
}

Chart make_chart(Role role, const Rat& betafrac, int m, int w_lo, int w_hi) {
  Chart c;
  c.ops = base_table(betafrac, m, w_lo, w_hi);
  c.restr.assign(c.ops.slots(), 1);
  auto set_absent = [&](int s) {
    c.ops.present[s - w_lo] = 0;
    c.ops.a[s - w_lo] = 0;
    c.ops.b[s - w_lo] = 0;
    c.restr[s - w_lo] = 0;
  };
  switch (role) {
    case Role::AllSections:
      break;
    case Role::BangAtX:
      // Sections of the !-extension over the chart containing the origin:
      // the delta tower sits on slots <= -1, glued to the regular part by a
      // nonzero f-cross out of slot 0; the e-chain breaks at -1 instead.
      if (betafrac != 0) throw BadParametersError("!-model needs trivial monodromy");
      if (w_lo <= -1 && w_hi >= 0) {
        c.ops.a[-1 - w_lo] = 0;
        c.ops.b[0 - w_lo] = 1;
      }
      for (int s = w_lo; s <= w_hi; ++s)
        if (s <= -1) c.restr[s - w_lo] = 0;
      break;
    case Role::BangAtZ:
      if (betafrac != 0) throw BadParametersError("!-model needs trivial monodromy");
      if (w_lo <= m && w_hi >= m + 1) {
        c.ops.b[m + 1 - w_lo] = 0;
        c.ops.a[m - w_lo] = 1;
      }
      for (int s = w_lo; s <= w_hi; ++s)
        if (s >= m + 1) c.restr[s - w_lo] = 0;
      break;
    case Role::CellRegular:
      if (betafrac != 0)
        throw BadParametersError("cell sections need trivial monodromy");
      for (int s = w_lo; s <= w_hi; ++s)
        if (s > m) set_absent(s);
      break;
    case Role::RegularAtX:
      if (betafrac != 0)
        throw BadParametersError("regular sections need trivial monodromy");
      for (int s = w_lo; s <= w_hi; ++s)
        if (s < 0) set_absent(s);
      break;
    case Role::SkyQuotient:
      if (betafrac != 0) throw BadParametersError("skyscraper needs trivial monodromy");
      for (int s = w_lo; s <= w_hi; ++s)
        if (s > -1) set_absent(s);
      if (w_lo <= -1 && w_hi >= 0) c.ops.a[-1 - w_lo] = 0;
      for (auto& r : c.restr) r = 0;
      break;
    case Role::Zero:
      for (int s = w_lo; s <= w_hi; ++s) set_absent(s);
      break;
  }
  if (auto bad = c.ops.first_relation_violation())
    throw Error("internal: chart operators violate the sl2 relations at slot " +
                std::to_string(*bad));
  return c;
}

struct ChartPlan {
  Role chart0;
  Role chart1;
  bool overlap_present;
};

ChartPlan plan_for(const TwistedP1Module& mod) {
  bool integral = rat_is_integer(mod.alpha);
  switch (mod.source) {
    case Source::CTimes:
      if (mod.ext == Extension::Star || !integral)
        return {Role::AllSections, Role::AllSections, true};
      if (mod.ext == Extension::Intermediate)
        return {Role::RegularAtX, Role::CellRegular, true};
      return {Role::BangAtX, Role::BangAtZ, true};
    case Source::A1Cell:
      if (!integral) throw BadParametersError("affine cell has trivial monodromy");
      if (mod.ext == Extension::Star)
        return {Role::AllSections, Role::CellRegular, true};
      if (mod.ext == Extension::Intermediate)
        return {Role::RegularAtX, Role::CellRegular, true};
      return {Role::BangAtX, Role::CellRegular, true};
    case Source::Sky:
      return {Role::SkyQuotient, Role::Zero, false};
  }
  throw BadParametersError("unknown source");
}

}  // namespace

std::pair<int, int> default_p1_window(int n_twist) {
  int span = std::abs(n_twist) + 8;
  return {-span, span};
}

int CohomologyResult::slot_to_index_shift() const {
  // Slot s has weight 2(frac(alpha)+s) - m; index n has weight
  // -n_twist + 2 alpha + 2n. Hence n = s + 1 - floor(alpha).
  return 1 - static_cast<int>(rat_to_long(rat_floor(alpha)));
}

Sl2Table CohomologyResult::top_table(bool use_h1) const {
  if (!use_h1 && !h0_simple)
    throw BadParametersError("H0 has a two-dimensional weight space");
  const Sl2Table& t = use_h1 ? h1 : h0;
  return t.shifted(slot_to_index_shift());
}

std::string CohomologyResult::to_json() const {
  std::ostringstream os;
  os << "{\"n_twist\":" << n_twist << ",\"alpha\":\"" << rat_str(alpha)
     << "\",\"rows\":[";
  bool first = true;
  for (int s = w_lo; s <= w_hi; ++s) {
    auto d0 = h0_dims.count(s) ? h0_dims.at(s) : 0;
    auto d1 = h1_dims.count(s) ? h1_dims.at(s) : 0;
    Rat wt = 2 * (rat_frac(alpha) + s) - (n_twist - 2);
    os << (first ? "" : ",") << "{\"weight\":\"" << rat_str(wt)
       << "\",\"dimH0\":" << d0 << ",\"dimH1\":" << d1 << "}";
    first = false;
  }
  os << "]";
  auto emit_table = [&](const char* name, const Sl2Table& t, bool valid) {
    os << ",\"" << name << "\":";
    if (!valid) {
      os << "null";
      return;
    }
    os << "{\"h0\":\"" << rat_str(t.h0) << "\",\"window\":[" << t.n_min << ","
       << t.n_max << "],\"a\":[";
    for (int n = t.n_min; n <= t.n_max - 1; ++n)
      os << (n > t.n_min ? "," : "") << "\"" << rat_str(t.has(n) ? t.a_at(n) : Rat(0))
         << "\"";
    os << "],\"b\":[";
    for (int n = t.n_min + 1; n <= t.n_max; ++n)
      os << (n > t.n_min + 1 ? "," : "") << "\""
         << rat_str(t.has(n) ? t.b_at(n) : Rat(0)) << "\"";
    os << "]}";
  };
  emit_table("h0_table", h0, h0_simple);
  emit_table("h1_table", h1, true);
  os << "}";
  return os.str();
}

CohomologyResult cohomology(const TwistedP1Module& mod, int w_lo, int w_hi) {
  int m = mod.n_twist - 2;
  if (w_lo > std::min(-2, m - 2) || w_hi < std::max(2, m + 2))
    throw WindowTooSmallError("window must cover both break slots");
  Rat betafrac = rat_frac(mod.alpha);
  ChartPlan plan = plan_for(mod);

  Chart c0 = make_chart(plan.chart0, betafrac, m, w_lo, w_hi);
  Chart c1 = make_chart(plan.chart1, betafrac, m, w_lo, w_hi);
  Sl2Table overlap = base_table(betafrac, m, w_lo, w_hi);

  CohomologyResult res;
  res.n_twist = mod.n_twist;
  res.alpha = mod.alpha;
  res.source = mod.source;
  res.ext = mod.ext;
  res.w_lo = w_lo;
  res.w_hi = w_hi;

  // Kernel and cokernel of (x, y) -> restr0(x) - restr1(y), slot by slot.
  struct KernelVec {
    Rat x = 0, y = 0;
  };
  std::map<int, KernelVec> kernel;  // only when dim = 1
  for (int s = w_lo; s <= w_hi; ++s) {
    int idx = s - w_lo;
    bool p0 = c0.present(s), p1 = c1.present(s);
    res.chart0_dims[s] = p0 ? 1 : 0;
    res.chart1_dims[s] = p1 ? 1 : 0;
    res.overlap_dims[s] = plan.overlap_present ? 1 : 0;
    Rat r0 = p0 ? c0.restr[idx] : Rat(0);
    Rat r1 = p1 ? c1.restr[idx] : Rat(0);
    int dim_domain = (p0 ? 1 : 0) + (p1 ? 1 : 0);
    bool image_nonzero = plan.overlap_present && ((p0 && r0 != 0) || (p1 && r1 != 0));
    int h0dim = dim_domain - (image_nonzero ? 1 : 0);
    int h1dim = (plan.overlap_present ? 1 : 0) - (image_nonzero ? 1 : 0);
    if (h0dim > 0) res.h0_dims[s] = h0dim;
    if (h1dim > 0) res.h1_dims[s] = h1dim;
    if (h0dim == 1) {
      KernelVec k;
      if (p0 && p1) {
        if (r0 == 0 && r1 != 0) {
          k.x = 1;  // (1, 0)
        } else if (r1 == 0 && r0 != 0) {
          k.y = 1;
        } else if (r0 != 0 && r1 != 0) {
          k.x = 1;
          k.y = r0 / r1;
        } else {
          throw Error("internal: ambiguous kernel");  // dim would be 2
        }
      } else if (p0) {
        k.x = 1;
      } else {
        k.y = 1;
      }
      kernel[s] = k;
    } else if (h0dim > 1) {
      res.h0_simple = false;
    }
  }

  // H0 coefficient table: act with the chart operators on the kernel basis
  // and express the image in the kernel basis of the next slot.
  res.h0 = base_table(betafrac, m, w_lo, w_hi);
  for (int s = w_lo; s <= w_hi; ++s) {
    int idx = s - w_lo;
    res.h0.present[idx] = kernel.count(s) && res.h0_dims.count(s) &&
                          res.h0_dims.at(s) == 1;
    res.h0.a[idx] = 0;
    res.h0.b[idx] = 0;
  }
  if (res.h0_simple) {
    auto express = [&](int s, const Rat& ex, const Rat& ey, int target) -> Rat {
      if (ex == 0 && ey == 0) return 0;
      auto it = kernel.find(target);
      if (it == kernel.end())
        throw Error("internal: image leaves the kernel");
      const KernelVec& k = it->second;
      Rat coeff = 0;
      if (k.x != 0)
        coeff = ex / k.x;
      else if (k.y != 0)
        coeff = ey / k.y;
      if (coeff * k.x != ex || coeff * k.y != ey)
        throw Error("internal: image not proportional to the kernel basis");
      return coeff;
    };
    for (const auto& [s, k] : kernel) {
      if (s + 1 <= w_hi) {
        Rat ex = c0.present(s) ? c0.ops.a_at(s) * k.x : Rat(0);
        Rat ey = c1.present(s) ? c1.ops.a_at(s) * k.y : Rat(0);
        res.h0.a[s - w_lo] = express(s, ex, ey, s + 1);
      }
      if (s - 1 >= w_lo) {
        Rat fx = c0.present(s) ? c0.ops.b_at(s) * k.x : Rat(0);
        Rat fy = c1.present(s) ? c1.ops.b_at(s) * k.y : Rat(0);
        res.h0.b[s - w_lo] = express(s, fx, fy, s - 1);
      }
    }
    if (auto bad = res.h0.first_relation_violation())
      throw Error("internal: H0 table violates the sl2 relations at slot " +
                  std::to_string(*bad));
  }

  // H1: the overlap table masked to the cokernel slots.
  res.h1 = overlap;
  for (int s = w_lo; s <= w_hi; ++s) {
    int idx = s - w_lo;
    bool in_coker = res.h1_dims.count(s) > 0;
    res.h1.present[idx] = in_coker;
    if (!in_coker) {
      res.h1.a[idx] = 0;
      res.h1.b[idx] = 0;
    }
  }
  for (int s = w_lo; s <= w_hi; ++s) {
    int idx = s - w_lo;
    if (!res.h1.present[idx]) continue;
    if (s + 1 > w_hi || !res.h1.present[s + 1 - w_lo]) res.h1.a[idx] = 0;
    if (s - 1 < w_lo || !res.h1.present[s - 1 - w_lo]) res.h1.b[idx] = 0;
  }
  if (auto bad = res.h1.first_relation_violation())
    throw Error("internal: H1 table violates the sl2 relations at slot " +
                std::to_string(*bad));
  return res;
}

CohomologyResult shriek_via_duality(const TwistedP1Module& mod, int w_lo, int w_hi) {
  TwistedP1Module star = mod;
  star.ext = Extension::Star;
  star.alpha = -mod.alpha;
  CohomologyResult base = cohomology(star, w_lo, w_hi);
  CohomologyResult res = base;
  res.alpha = mod.alpha;
  res.ext = Extension::Shriek;
  if (res.h0_simple) res.h0 = base.h0.dual();
  res.h1 = base.h1.dual();
  return res;
}

std::shared_ptr<InducedModule> induce_to_g(const CohomologyResult& result,
                                           bool use_h1,
                                           std::shared_ptr<const LoopAlgebra> alg,
                                           int i, const WeightVector& lambda,
                                           const InducedTruncation& trunc) {
  if (lambda.pairing(i) != Rat(-result.n_twist))
    throw ParameterMismatchError("n_twist must equal -lambda(h_i)");
  Sl2Table top = result.top_table(use_h1);
  Rat alpha = result.alpha;
  if (top.h0 != lambda.pairing(i) + 2 * alpha)
    throw ParameterMismatchError("top table does not match lambda and alpha");
  return InducedModule::relaxed(std::move(alg), i, lambda, alpha, std::move(top),
                                trunc);
}

}  // namespace kmr

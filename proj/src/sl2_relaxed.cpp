#include "kmr/sl2_relaxed.hpp"

#include <algorithm>
#include <sstream>

#include "kmr/errors.hpp"

namespace kmr {

const char* sl2_family_name(Sl2Family f) {
  switch (f) {
    case Sl2Family::Generic: return "generic";
    case Sl2Family::Eq: return "eq";
    case Sl2Family::Lt: return "lt";
    case Sl2Family::Gt: return "gt";
  }
  return "?";
}

std::optional<Sl2Family> sl2_family_from_name(const std::string& s) {
  if (s == "generic") return Sl2Family::Generic;
  if (s == "eq") return Sl2Family::Eq;
  if (s == "lt") return Sl2Family::Lt;
  if (s == "gt") return Sl2Family::Gt;
  return std::nullopt;
}

std::optional<int> Sl2Table::first_relation_violation() const {
  // [e,f] v_n = (b_n a_{n-1} - a_n b_{n+1}) v_n must equal (h0+2n) v_n on
  // slots whose neighbours are inside the window.
  for (int n = n_min + 1; n <= n_max - 1; ++n) {
    if (!has(n)) continue;
    Rat ef = 0;
    if (has(n - 1)) ef += b_at(n) * a_at(n - 1);
    if (has(n + 1)) ef -= a_at(n) * b_at(n + 1);
    if (ef != weight(n)) return n;
  }
  return std::nullopt;
}

Sl2Table Sl2Table::dual() const {
  Sl2Table d;
  d.h0 = h0;
  d.n_min = n_min;
  d.n_max = n_max;
  d.present = present;
  d.a.assign(slots(), 0);
  d.b.assign(slots(), 0);
  for (int n = n_min; n <= n_max - 1; ++n) d.a[n - n_min] = b_at(n + 1);
  for (int n = n_min + 1; n <= n_max; ++n) d.b[n - n_min] = a_at(n - 1);
  return d.gauge_normalized();
}

Sl2Table Sl2Table::gauge_normalized() const {
  Sl2Table g = *this;
  // c_{n+1} = a_n c_n where a_n != 0, reset to 1 at chain breaks.
  std::vector<Rat> c(slots(), 1);
  for (int n = n_min; n < n_max; ++n) {
    Rat an = a_at(n);
    c[n + 1 - n_min] = (an != 0 && has(n) && has(n + 1)) ? an * c[n - n_min] : Rat(1);
  }
  for (int n = n_min; n <= n_max - 1; ++n) {
    if (!has(n) || !has(n + 1)) { g.a[n - n_min] = 0; continue; }
    g.a[n - n_min] = a_at(n) * c[n - n_min] / c[n + 1 - n_min];
  }
  for (int n = n_min + 1; n <= n_max; ++n) {
    if (!has(n) || !has(n - 1)) { g.b[n - n_min] = 0; continue; }
    g.b[n - n_min] = b_at(n) * c[n - n_min] / c[n - 1 - n_min];
  }
  // The b value across an e-break is pure gauge (its relation coefficient is
  // multiplied by the vanishing a); pin nonzero crosses to 1.
  for (int n = n_min + 1; n <= n_max; ++n) {
    if (!has(n) || !has(n - 1)) continue;
    if (g.a[n - 1 - n_min] == 0 && g.b[n - n_min] != 0) g.b[n - n_min] = 1;
  }
  return g;
}

Sl2Table Sl2Table::shifted(int d) const {
  Sl2Table s = *this;
  s.n_min = n_min + d;
  s.n_max = n_max + d;
  s.h0 = h0 - 2 * d;
  return s;
}

bool Sl2Table::same_tables(const Sl2Table& o) const {
  if (h0 != o.h0 || n_min != o.n_min || n_max != o.n_max || present != o.present)
    return false;
  for (int n = n_min; n <= n_max - 1; ++n)
    if (has(n) && has(n + 1) && a_at(n) != o.a_at(n)) return false;
  for (int n = n_min + 1; n <= n_max; ++n)
    if (has(n) && has(n - 1) && b_at(n) != o.b_at(n)) return false;
  return true;
}

Sl2Table solve_sl2_table(const Rat& h0, int n_min, int n_max,
                         const std::set<int>& a_zeros, const std::set<int>& b_zeros) {
  if (n_min > n_max) throw InconsistentWindowError("empty sl2 window");
  // Extend internally so every anchor near the chain breaks is captured and
  // the window view is the restriction of the global solution.
  int lo = n_min, hi = n_max;
  for (int z : a_zeros) { lo = std::min(lo, z - 2); hi = std::max(hi, z + 2); }
  for (int z : b_zeros) { lo = std::min(lo, z - 2); hi = std::max(hi, z + 2); }

  int m = hi - lo + 1;
  auto w = [&](int n) { return h0 + 2 * n; };
  std::vector<Rat> a(m, 1), b(m, 0);
  std::vector<char> bset(m, 0);
  for (int z : a_zeros)
    if (z >= lo && z <= hi) a[z - lo] = 0;
  for (int z : b_zeros)
    if (z >= lo && z <= hi) { b[z - lo] = 0; bset[z - lo] = 1; }

  auto set_b = [&](int n, const Rat& v) {
    int idx = n - lo;
    if (bset[idx]) {
      if (b[idx] != v)
        throw BadParametersError("inconsistent break placement in sl2 recursion");
      return false;
    }
    b[idx] = v;
    bset[idx] = 1;
    return true;
  };

  // Commutation b_n a_{n-1} - a_n b_{n+1} = w_n, for n with both slots in
  // the extended range. Fixpoint propagation; leftovers are the gauge-free
  // cross coefficients.
  bool progress = true;
  while (progress) {
    progress = false;
    for (int n = lo + 1; n <= hi - 1; ++n) {
      const Rat& an1 = a[n - 1 - lo];
      const Rat& an = a[n - lo];
      if (an1 == 0 && an == 0) {
        if (w(n) != 0)
          throw BadParametersError("adjacent e-breaks force a nonzero weight to vanish");
        continue;
      }
      if (an1 == 0) {
        progress |= set_b(n + 1, -w(n) / an);
        continue;
      }
      if (an == 0) {
        progress |= set_b(n, w(n) / an1);
        continue;
      }
      bool kn = bset[n - lo], kn1 = bset[n + 1 - lo];
      if (kn && !kn1) {
        progress |= set_b(n + 1, (b[n - lo] * an1 - w(n)) / an);
      } else if (!kn && kn1) {
        progress |= set_b(n, (w(n) + an * b[n + 1 - lo]) / an1);
      } else if (kn && kn1) {
        if (b[n - lo] * an1 - an * b[n + 1 - lo] != w(n))
          throw BadParametersError("inconsistent sl2 recursion anchors");
      }
    }
  }
  for (int idx = 1; idx < m; ++idx)
    if (!bset[idx]) { b[idx] = 1; bset[idx] = 1; }

  // Final exact verification.
  for (int n = lo + 1; n <= hi - 1; ++n) {
    if (b[n - lo] * a[n - 1 - lo] - a[n - lo] * b[n + 1 - lo] != w(n))
      throw BadParametersError("sl2 recursion verification failed");
  }

  Sl2Table t;
  t.h0 = h0;
  t.n_min = n_min;
  t.n_max = n_max;
  t.present.assign(n_max - n_min + 1, 1);
  t.a.assign(n_max - n_min + 1, 0);
  t.b.assign(n_max - n_min + 1, 0);
  for (int n = n_min; n <= n_max; ++n) {
    t.a[n - n_min] = a[n - lo];
    t.b[n - n_min] = b[n - lo];
  }
  return t;
}

DenseSl2Module DenseSl2Module::construct(const Rat& Lambda, Sl2Family family,
                                         const Rat& alpha, int n_min, int n_max) {
  if (n_min > n_max) throw InconsistentWindowError("empty sl2 window");
  DenseSl2Module mod;
  mod.Lambda_ = Lambda;
  mod.family_ = family;

  if (family == Sl2Family::Generic) {
    if (rat_is_integer(alpha))
      throw BadParametersError("generic family requires a non-integer alpha");
    mod.alpha_ = alpha;
    Sl2Table t;
    t.h0 = Lambda + 2 * alpha;
    t.n_min = n_min;
    t.n_max = n_max;
    t.present.assign(n_max - n_min + 1, 1);
    t.a.assign(n_max - n_min + 1, 1);
    t.b.assign(n_max - n_min + 1, 0);
    for (int n = n_min; n <= n_max; ++n)
      t.b[n - n_min] = -(alpha + n) * (alpha + n - 1 + Lambda);
    if (auto bad = t.first_relation_violation())
      throw BadParametersError("generic closed form failed at slot " +
                               std::to_string(*bad));
    mod.table_ = std::move(t);
    return mod;
  }

  if (!rat_is_integer(Lambda))
    throw BadParametersError("integral families require an integer Lambda");
  if (alpha != 0)
    throw BadParametersError("integral families carry alpha = 0");
  mod.alpha_ = 0;
  long L = rat_to_long(Lambda);
  std::set<int> a_zeros, b_zeros;
  switch (family) {
    case Sl2Family::Eq:
      a_zeros = {static_cast<int>(-L - 1)};
      b_zeros = {1};
      break;
    case Sl2Family::Lt:
      b_zeros = {static_cast<int>(-L), 1};
      break;
    case Sl2Family::Gt:
      a_zeros = {static_cast<int>(-L - 1), 0};
      break;
    case Sl2Family::Generic:
      break;
  }
  mod.table_ = solve_sl2_table(Lambda, n_min, n_max, a_zeros, b_zeros);
  return mod;
}

const Rat& DenseSl2Module::a(int n) const {
  if (n < n_min() || n > n_max() - 1)
    throw WindowEdgeError("a(" + std::to_string(n) + ") outside window");
  return table_.a_at(n);
}

const Rat& DenseSl2Module::b(int n) const {
  if (n < n_min() + 1 || n > n_max())
    throw WindowEdgeError("b(" + std::to_string(n) + ") outside window");
  return table_.b_at(n);
}

Rat DenseSl2Module::fe_eigenvalue(int n) const {
  if (n < n_min() || n + 1 > n_max())
    throw WindowEdgeError("fe_eigenvalue needs slots n and n+1");
  return table_.a_at(n) * table_.b_at(n + 1);
}

DenseSl2Module DenseSl2Module::dual_sl2() const {
  DenseSl2Module d = *this;
  d.table_ = table_.dual();
  return d;
}

std::vector<int> DenseSl2Module::a_zero_indices() const {
  std::vector<int> out;
  for (int n = n_min(); n <= n_max() - 1; ++n)
    if (table_.a_at(n) == 0) out.push_back(n);
  return out;
}

std::vector<int> DenseSl2Module::b_zero_indices() const {
  std::vector<int> out;
  for (int n = n_min() + 1; n <= n_max(); ++n)
    if (table_.b_at(n) == 0) out.push_back(n);
  return out;
}

std::string DenseSl2Module::to_json() const {
  std::ostringstream os;
  os << "{\"Lambda\":\"" << rat_str(Lambda_) << "\",\"family\":\""
     << sl2_family_name(family_) << "\",\"alpha\":\"" << rat_str(alpha_)
     << "\",\"window\":[" << n_min() << "," << n_max() << "],\"a\":[";
  for (int n = n_min(); n <= n_max() - 1; ++n)
    os << (n > n_min() ? "," : "") << "\"" << rat_str(table_.a_at(n)) << "\"";
  os << "],\"b\":[";
  for (int n = n_min() + 1; n <= n_max(); ++n)
    os << (n > n_min() + 1 ? "," : "") << "\"" << rat_str(table_.b_at(n)) << "\"";
  os << "]}";
  return os.str();
}

}  // namespace kmr

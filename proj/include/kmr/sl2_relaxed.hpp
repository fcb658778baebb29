#ifndef KMR_SL2_RELAXED_HPP
#define KMR_SL2_RELAXED_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kmr/rational.hpp"

namespace kmr {

/// Families of weight sl2-modules with one-dimensional weight spaces on the
/// ladder L + 2a + 2Z. Generic is the dense simple module (a not an
/// integer); Eq, Lt, Gt are the three integral degenerations, distinguished
/// by where the e- and f-chains break:
///   Eq: a_n = 0 iff n = -L-1,  b_n = 0 iff n = 1
///   Lt: a_n never 0,           b_n = 0 iff n in {-L, 1}
///   Gt: a_n = 0 iff n in {-L-1, 0},  b_n never 0
enum class Sl2Family { Generic, Eq, Lt, Gt };

const char* sl2_family_name(Sl2Family f);
std::optional<Sl2Family> sl2_family_from_name(const std::string& s);

/// Coefficient table of an sl2 weight module with weight spaces of dimension
/// at most one along a ladder: v_n has h-eigenvalue h0 + 2n, e v_n = a_n
/// v_{n+1} and f v_n = b_n v_{n-1}. Slots may be absent entirely (dimension
/// zero), which the induced-module machinery uses for highest/lowest weight
/// strings.
struct Sl2Table {
  Rat h0;  // h-eigenvalue at slot 0
  int n_min = 0, n_max = -1;
  std::vector<char> present;  // size n_max - n_min + 1
  std::vector<Rat> a;         // slot n -> coefficient into slot n+1
  std::vector<Rat> b;         // slot n -> coefficient into slot n-1

  int slots() const { return n_max - n_min + 1; }
  bool in_window(int n) const { return n >= n_min && n <= n_max; }
  bool has(int n) const { return in_window(n) && present[n - n_min]; }
  const Rat& a_at(int n) const { return a[n - n_min]; }
  const Rat& b_at(int n) const { return b[n - n_min]; }
  Rat weight(int n) const { return h0 + 2 * n; }

  /// Verifies [e,f] = h on every interior present slot; returns the first
  /// violating slot if any.
  std::optional<int> first_relation_violation() const;

  /// Transpose through the Chevalley anti-involution (e <-> f), then
  /// renormalize so every nonzero a equals 1. Weights are unchanged.
  Sl2Table dual() const;

  /// Gauge normalization: rescale basis vectors so a is 0/1-valued.
  Sl2Table gauge_normalized() const;

  /// Relabels slots n -> n + d (same physical weights: h0 drops by 2d).
  Sl2Table shifted(int d) const;

  bool same_tables(const Sl2Table& o) const;
};

/// The relaxed sl2 Verma modules on a Z-window, by explicit coefficient
/// sequences in the gauge a = 1 wherever nonzero.
class DenseSl2Module {
 public:
  /// Generic requires alpha not an integer; the integral families require
  /// Lambda integral (their alpha is 0).
  static DenseSl2Module construct(const Rat& Lambda, Sl2Family family,
                                  const Rat& alpha, int n_min, int n_max);

  const Rat& Lambda() const { return Lambda_; }
  Sl2Family family() const { return family_; }
  const Rat& alpha() const { return alpha_; }
  int n_min() const { return table_.n_min; }
  int n_max() const { return table_.n_max; }

  /// h-eigenvalue of v_n: Lambda + 2 alpha + 2n.
  Rat weight(int n) const { return table_.weight(n); }

  const Rat& a(int n) const;  // e v_n = a(n) v_{n+1}, n in [n_min, n_max-1]
  const Rat& b(int n) const;  // f v_n = b(n) v_{n-1}, n in [n_min+1, n_max]

  /// a_n * b_{n+1}; the scalar mu of the fe-relation at the generator index.
  Rat fe_eigenvalue(int n) const;

  /// Same weights; e/f transposed through the anti-involution swapping e
  /// and f, gauge-renormalized back to a in {0,1}.
  DenseSl2Module dual_sl2() const;

  std::vector<int> a_zero_indices() const;
  std::vector<int> b_zero_indices() const;

  const Sl2Table& table() const { return table_; }
  std::string to_json() const;

 private:
  DenseSl2Module() = default;
  Rat Lambda_ = 0;
  Sl2Family family_ = Sl2Family::Generic;
  Rat alpha_ = 0;
  Sl2Table table_;
};

/// Solves the commutation recursion b_n a_{n-1} - a_n b_{n+1} = h0 + 2n on a
/// window, with a prescribed 0/1 a-pattern and prescribed b-zero slots.
/// Unconstrained slots receive 1. Throws BadParametersError when the system
/// is inconsistent. Exposed for the p1 module and for tests.
Sl2Table solve_sl2_table(const Rat& h0, int n_min, int n_max,
                         const std::set<int>& a_zeros, const std::set<int>& b_zeros);

}  // namespace kmr

#endif

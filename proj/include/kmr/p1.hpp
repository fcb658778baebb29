#ifndef KMR_P1_HPP
#define KMR_P1_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "kmr/induced.hpp"
#include "kmr/sl2_relaxed.hpp"

namespace kmr {

/// A rank-one twisted right D-module on the projective line, presented by
/// its source cell and extension type. n_twist is -lambda(h_i); c_times
/// carries the monodromy exponent alpha, the two affine cells require
/// trivial monodromy. The sky source is the skyscraper at the point fixed
/// by the torus inside the cell closure (the base point of the Schubert
/// curve).
struct TwistedP1Module {
  enum class Source { CTimes, A1Cell, Sky };
  enum class Extension { Star, Shriek, Intermediate };

  int n_twist = 0;
  Source source = Source::CTimes;
  Rat alpha = 0;
  Extension ext = Extension::Star;

  static TwistedP1Module c_times(int n_twist, Rat alpha, Extension ext) {
    return {n_twist, Source::CTimes, std::move(alpha), ext};
  }
  static TwistedP1Module a1_cell(int n_twist, Extension ext) {
    return {n_twist, Source::A1Cell, 0, ext};
  }
  static TwistedP1Module skyscraper(int n_twist) {
    return {n_twist, Source::Sky, 0, Extension::Star};
  }
};

/// Cohomology of a twisted module on the projective line computed from the
/// two-chart section spaces. Slots are graded section indices; slot s has
/// h_i-eigenvalue 2(frac(alpha) + s) - m with the internal twist
/// m = n_twist - 2 (the canonical-bundle shift of right modules).
struct CohomologyResult {
  int n_twist = 0;
  Rat alpha = 0;
  TwistedP1Module::Source source = TwistedP1Module::Source::CTimes;
  TwistedP1Module::Extension ext = TwistedP1Module::Extension::Star;
  int w_lo = 0, w_hi = 0;

  Sl2Table h0;  // valid when h0_simple
  bool h0_simple = true;
  std::map<int, int> h0_dims;

  Sl2Table h1;
  std::map<int, int> h1_dims;

  // Chart dimensions per slot, for Euler-characteristic checks.
  std::map<int, int> chart0_dims, chart1_dims, overlap_dims;

  long h1_total() const {
    long t = 0;
    for (auto& [s, d] : h1_dims) t += d;
    return t;
  }

  /// Relabelling shift from section slots to module indices: the slot s
  /// corresponds to the ladder index n = s + shift, where the index-0 slot
  /// of the induced top has weight lambda + alpha alpha_i.
  int slot_to_index_shift() const;

  /// h0 (or h1) as a top-level table in module index labels.
  Sl2Table top_table(bool use_h1 = false) const;

  std::string to_json() const;
};

/// Default slot window covering h-weights in [-|Lambda|-6, |Lambda|+6].
std::pair<int, int> default_p1_window(int n_twist);

/// Two-chart Cech cohomology of the module, exact.
/// Throws WindowTooSmallError when the window misses the break slots.
CohomologyResult cohomology(const TwistedP1Module& mod, int w_lo, int w_hi);

/// !-extension cohomology computed as the transposed dual (e <-> f) of the
/// star extension with negated monodromy. Agrees with the direct
/// presentation on H0 whenever 2*alpha is an integer; H1 is carried over
/// from the star side and is therefore only meaningful where the star and
/// shriek higher cohomology agree (n_twist >= 2 or alpha not integral).
CohomologyResult shriek_via_duality(const TwistedP1Module& mod, int w_lo, int w_hi);

/// Induces the H^j tables to a g-module over the concrete affine algebra:
/// U(g) tensor_{U(p_i)} H^j. Requires n_twist == -lambda(h_i).
std::shared_ptr<InducedModule> induce_to_g(const CohomologyResult& result,
                                           bool use_h1,
                                           std::shared_ptr<const LoopAlgebra> alg,
                                           int i, const WeightVector& lambda,
                                           const InducedTruncation& trunc);

}  // namespace kmr

#endif

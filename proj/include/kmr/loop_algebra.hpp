#ifndef KMR_LOOP_ALGEBRA_HPP
#define KMR_LOOP_ALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kmr/cartan.hpp"

namespace kmr {

/// Basis vector of the untwisted affine algebra of type A_{n-1}^(1) in the
/// loop realization sl_n[t, t^-1] + C K + C d.
///
/// MatrixTensor with a != b is E_ab tensor t^k; with a == b it is the
/// traceless diagonal H_a = E_aa - E_{a+1,a+1} tensor t^k (1 <= a <= n-1).
struct LoopBasisElement {
  enum class Kind { MatrixTensor, CentralK, DerivationD };
  Kind kind = Kind::MatrixTensor;
  int a = 0, b = 0;  // 1-based matrix indices
  int k = 0;         // loop degree

  static LoopBasisElement E(int a, int b, int k) {
    return {Kind::MatrixTensor, a, b, k};
  }
  static LoopBasisElement H(int c, int k) { return {Kind::MatrixTensor, c, c, k}; }
  static LoopBasisElement K() { return {Kind::CentralK, 0, 0, 0}; }
  static LoopBasisElement D() { return {Kind::DerivationD, 0, 0, 0}; }

  int loop_degree() const { return kind == Kind::MatrixTensor ? k : 0; }

  auto tie() const { return std::tuple(static_cast<int>(kind), k, a, b); }
  bool operator<(const LoopBasisElement& o) const { return tie() < o.tie(); }
  bool operator==(const LoopBasisElement& o) const { return tie() == o.tie(); }

  std::string str() const;
};

/// Sparse rational combination of loop basis vectors with a loop-degree
/// truncation window [-trunc, trunc]. Immutable by convention.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(int trunc) : trunc_(trunc) {}
  AlgebraElement(LoopBasisElement x, Rat coeff, int trunc);

  const std::map<LoopBasisElement, Rat>& terms() const { return terms_; }
  int trunc() const { return trunc_; }
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement& add_term(const LoopBasisElement& x, const Rat& c);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const Rat& c) const;

  /// Widens or narrows the window; narrowing throws TruncationOverflowError
  /// when terms fall outside.
  AlgebraElement with_trunc(int trunc) const;

  std::string str() const;
  std::string to_json() const;

 private:
  std::map<LoopBasisElement, Rat> terms_;
  int trunc_ = 0;
};

enum class Selector {
  N,
  NMinus,
  H,
  B,
  BMinus,
  Ni,
  NMinusI,
  NMinusL,
  Pi,
  PiMinus,
  Gi,
  GiPrime,
};

/// Subalgebra described by root-support inspection.
struct SubalgebraSpec {
  Selector sel;
  int param = -1;  // the index i or the height threshold l, where relevant
};

/// Concrete loop realization of the affine algebra of type A_{n-1}^(1).
class LoopAlgebra {
 public:
  explicit LoopAlgebra(int n);

  int n() const { return n_; }
  const GcmPtr& gcm() const { return gcm_; }

  AlgebraElement e(int i, int trunc) const;
  AlgebraElement f(int i, int trunc) const;
  AlgebraElement h(int i, int trunc) const;

  /// Weight of a basis vector for the adjoint h-action (its root; zero for h).
  WeightVector weight_of(const LoopBasisElement& x) const;

  /// Simple-root coordinates of the root of x, or nullopt for Cartan vectors.
  std::optional<std::vector<long>> root_coords_of(const LoopBasisElement& x) const;

  /// Loop bracket with 2-cocycle tr(xy) and derivation d = t d/dt.
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

  /// Basis of the root space g_beta intersected with the subalgebra.
  std::vector<AlgebraElement> root_space_basis(const WeightVector& beta,
                                               const SubalgebraSpec& spec,
                                               int trunc) const;

  /// Basis of g_beta for a root given in simple-root coordinates.
  std::vector<LoopBasisElement> basis_of_root(const std::vector<long>& coords) const;

  /// Dimension of the root space (the honest multiplicity source).
  long root_space_dimension(const std::vector<long>& coords) const;

  /// Multiplicity callback for positive_roots_up_to_height.
  ImaginaryMultiplicityFn imaginary_mult_fn() const;

  /// Membership of a single basis vector in the subalgebra; for GiPrime the
  /// Cartan part is handled at the element level in root_space_basis.
  bool member(const LoopBasisElement& x, const SubalgebraSpec& spec) const;

  /// exp(ad e_i) exp(-ad f_i) exp(ad e_i), applied exactly.
  AlgebraElement tits_automorphism(int i, const AlgebraElement& a) const;

  /// Checks n^-_{l+d} subset s~_i(n^-_l) subset n^-_{l-d} on all root spaces
  /// of height >= -depth. On failure *witness (if given) receives a
  /// description of the offending root.
  bool verify_delta_bound(int i, long l, long d, long depth,
                          std::string* witness = nullptr) const;

  /// Decomposition of a weight as sum of simple roots, when one exists.
  std::optional<std::vector<Rat>> decompose_in_simple_roots(
      const WeightVector& beta) const;

 private:
  AlgebraElement bracket_basis(const LoopBasisElement& x,
                               const LoopBasisElement& y) const;
  AlgebraElement exp_ad(const AlgebraElement& x, const AlgebraElement& a) const;

  int n_;
  GcmPtr gcm_;
};

/// The GCM of type A_{n-1}^(1) (size n); n = 2 gives [[2,-2],[-2,2]].
GcmPtr affine_type_a_gcm(int n);

}  // namespace kmr

#endif

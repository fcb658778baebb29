#ifndef KMR_INDUCED_HPP
#define KMR_INDUCED_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kmr/characters.hpp"
#include "kmr/loop_algebra.hpp"
#include "kmr/sl2_relaxed.hpp"

namespace kmr {

/// Ordered PBW monomial over a fixed factor basis (X_k): factor indices are
/// strictly decreasing left to right, exponents positive.
struct PBWMonomial {
  std::vector<std::pair<int, int>> factors;  // (index, exponent)

  bool empty() const { return factors.empty(); }
  int total_degree() const {
    int d = 0;
    for (auto& [k, e] : factors) d += e;
    return d;
  }
  auto operator<=>(const PBWMonomial&) const = default;
  std::string str() const;
};

/// Basis vector of an induced module: ordered monomial applied to a top
/// level slot.
struct ModuleBasisKey {
  PBWMonomial mono;
  int top = 0;
  auto operator<=>(const ModuleBasisKey&) const = default;
};

/// Sparse rational vector in the monomial x top-slot basis.
class ModuleVector {
 public:
  const std::map<ModuleBasisKey, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const ModuleBasisKey& k, const Rat& c);
  ModuleVector operator+(const ModuleVector& o) const;
  ModuleVector operator-(const ModuleVector& o) const;
  ModuleVector operator*(const Rat& c) const;
  std::string str() const;
  std::string to_json() const;

 private:
  std::map<ModuleBasisKey, Rat> terms_;
};

/// Truncation of an induced module: a weight box around the generator
/// weight plus a top-slot window.
struct InducedTruncation {
  int delta_depth = 2;      // PBW delta-degree budget
  int x_lo = -6, x_hi = 6;  // alpha_i offsets of admitted weights
  long residual_bound = 0;  // residual box (0 suffices in rank 2)
  int top_lo = -8, top_hi = 8;
};

/// Verma and relaxed Verma modules over the concrete affine algebra, with
/// exact straightening of the g-action in the PBW basis. Immutable after
/// construction; action matrices are cached per weight space.
class InducedModule {
 public:
  /// Relaxed module induced from C_lambda tensor the given sl2 top table at
  /// the simple index i. The table's h0 must equal lambda(h_i) + 2 alpha.
  static std::shared_ptr<InducedModule> relaxed(
      std::shared_ptr<const LoopAlgebra> alg, int i, const WeightVector& lambda,
      const Rat& alpha, Sl2Table top, const InducedTruncation& trunc);

  /// Convenience: relaxed module with a DenseSl2Module top.
  static std::shared_ptr<InducedModule> relaxed(
      std::shared_ptr<const LoopAlgebra> alg, int i, const WeightVector& lambda,
      const DenseSl2Module& top, const InducedTruncation& trunc);

  /// Verma module M(lambda).
  static std::shared_ptr<InducedModule> verma(std::shared_ptr<const LoopAlgebra> alg,
                                              const WeightVector& lambda,
                                              const InducedTruncation& trunc);

  bool is_verma() const { return i_ < 0; }
  int simple_index() const { return i_; }
  const WeightVector& inducing_weight() const { return lambda_; }
  /// Weight of the top slot 0 (lambda + alpha alpha_i; lambda for Verma).
  const WeightVector& generator_weight() const { return lambda_gen_; }
  const Sl2Table& top() const { return top_; }
  const InducedTruncation& truncation() const { return trunc_; }
  const std::shared_ptr<const LoopAlgebra>& algebra() const { return alg_; }

  const std::vector<LoopBasisElement>& factor_basis() const { return factors_; }

  /// The generator vector 1 (x) v_n.
  ModuleVector top_vector(int n) const;

  WeightVector weight_of(const ModuleBasisKey& key) const;
  bool weight_admitted(const WeightVector& mu) const;

  const std::vector<ModuleBasisKey>& weight_space_basis(const WeightVector& mu) const;
  long weight_space_dim(const WeightVector& mu) const;

  /// Exact action by straightening; throws DepthOverflowError when a result
  /// term leaves the admitted box.
  ModuleVector act(const AlgebraElement& x, const ModuleVector& v) const;
  ModuleVector act_basis(const LoopBasisElement& g, const ModuleBasisKey& key) const;

  /// Matrix of the action of the single basis generator g from the mu weight
  /// space to the (mu + root(g)) space; rows index the target basis.
  std::vector<std::vector<Rat>> action_matrix(const LoopBasisElement& g,
                                              const WeightVector& mu) const;

  /// Matrix of g on the restricted dual at weight mu: the transpose of the
  /// matrix of omega(g) on the module, omega the anti-involution with
  /// omega(e_i) = f_i and omega|h = id.
  std::vector<std::vector<Rat>> restricted_dual_action(const LoopBasisElement& g,
                                                       const WeightVector& mu) const;

  /// Basis of the n-annihilated vectors of the mu weight space.
  std::vector<ModuleVector> find_primitive_vectors(const WeightVector& mu) const;

  /// Span of repeated generator applications to v (all simple e_j and f_j),
  /// restricted to delta degree >= -depth_delta; applications leaving the
  /// admitted box are skipped. Returns per-weight dimensions.
  std::map<WeightVector, long> submodule_character(const ModuleVector& v,
                                                   int depth_delta,
                                                   bool lowering_only = false) const;

  /// True iff the submodule generated by v meets the subspace spanned by the
  /// two extremal top chains (top slots <= lo or >= hi) nontrivially.
  bool submodule_meets_verma_pair(const ModuleVector& v, int depth_delta, int chain_lo,
                                  int chain_hi) const;

  /// dim span{v, e_i v, ..., e_i^K v}.
  long gprime_finiteness_probe(const ModuleVector& v, int K) const;

  /// Character on the region (throws OutOfDepthError when the region is not
  /// fully covered by the truncation).
  FormalCharacter character(const CharRegion& region) const;

  /// All admitted weights with their dimensions.
  std::map<WeightVector, long> dimension_table() const;

  /// Range of alpha_i offsets realized by PBW monomials; a character region
  /// [x_min, x_max] needs the top window to cover
  /// [x_min - fan_reach().second, x_max - fan_reach().first].
  std::pair<long, long> fan_reach() const { return {mono_x_min_, mono_x_max_}; }

  /// Chevalley anti-involution on basis vectors: E_ab t^k -> E_ba t^-k.
  static LoopBasisElement omega(const LoopBasisElement& g);

 private:
  InducedModule() = default;
  void build_basis();
  std::optional<int> factor_index(const LoopBasisElement& g) const;
  ModuleVector top_action(const LoopBasisElement& g, const Rat& coeff, int n) const;
  ModuleVector mult_factor(int k, const ModuleBasisKey& key) const;
  void check_admitted(const ModuleBasisKey& key) const;
  BoxCoords offset_box(const WeightVector& mu) const;

  std::shared_ptr<const LoopAlgebra> alg_;
  int i_ = -1;  // -1 for Verma
  WeightVector lambda_;
  WeightVector lambda_gen_;
  Rat alpha_ = 0;
  Sl2Table top_;
  InducedTruncation trunc_;

  std::vector<LoopBasisElement> factors_;
  std::map<LoopBasisElement, int> factor_index_;
  std::vector<WeightVector> factor_weights_;
  std::map<WeightVector, std::vector<ModuleBasisKey>> spaces_;
  std::map<ModuleBasisKey, int> basis_position_;
  long mono_x_min_ = 0, mono_x_max_ = 0;  // alpha_i offsets over all monomials

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<LoopBasisElement, WeightVector>,
                   std::vector<std::vector<Rat>>>
      matrix_cache_;
};

/// View of a module with the action precomposed with the Tits automorphism
/// s~_i; weights are relabelled by the reflection s_i.
class TwistedModuleView {
 public:
  TwistedModuleView(std::shared_ptr<const InducedModule> base, int i)
      : base_(std::move(base)), i_(i) {}

  const InducedModule& base() const { return *base_; }
  int twist_index() const { return i_; }

  /// Action of x on the twisted module.
  ModuleVector act(const AlgebraElement& x, const ModuleVector& v) const;

  /// Weight of a basis key in the twisted module: s_i of the base weight.
  WeightVector weight_of(const ModuleBasisKey& key) const;

  /// Support of the twisted character: the s_i image of the base support.
  std::map<WeightVector, long> dimension_table() const;

 private:
  std::shared_ptr<const InducedModule> base_;
  int i_;
};

}  // namespace kmr

#endif

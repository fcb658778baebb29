#ifndef KMR_WEYL_HPP
#define KMR_WEYL_HPP

#include <set>
#include <string>
#include <vector>

#include "kmr/cartan.hpp"

namespace kmr {

/// A Weyl group element in canonical form: the lexicographically least
/// reduced word. Equality of elements is equality of canonical words.
class WeylElement {
 public:
  static WeylElement identity(GcmPtr gcm) { return WeylElement(std::move(gcm), {}); }
  static WeylElement simple(GcmPtr gcm, int i);

  /// Canonicalizes an arbitrary word in the simple reflections.
  static WeylElement from_word(GcmPtr gcm, const std::vector<int>& word);

  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }
  const GcmPtr& gcm() const { return gcm_; }

  WeylElement multiply(const WeylElement& v) const;
  WeylElement inverse() const;

  /// Linear action on h*: s_i(lambda) = lambda - lambda(h_i) alpha_i.
  WeightVector act(const WeightVector& lambda) const;

  /// Dot action w . lambda = w(lambda + rho) - rho.
  WeightVector dot_act(const WeightVector& lambda) const;

  /// Action on a root in simple-root coordinates.
  std::vector<long> act_on_root(const std::vector<long>& coords) const;

  /// True iff l(s_i w) < l(w), i.e. w^{-1}(alpha_i) < 0.
  bool descends_left(int i) const;

  bool operator==(const WeylElement& o) const { return word_ == o.word_; }
  bool operator!=(const WeylElement& o) const { return word_ != o.word_; }
  bool operator<(const WeylElement& o) const {
    if (word_.size() != o.word_.size()) return word_.size() < o.word_.size();
    return word_ < o.word_;
  }

  std::string str() const;

 private:
  WeylElement(GcmPtr gcm, std::vector<int> canonical_word)
      : gcm_(std::move(gcm)), word_(std::move(canonical_word)) {}

  GcmPtr gcm_;
  std::vector<int> word_;
};

/// True iff u <= w in Bruhat order (subword property).
bool bruhat_leq(const WeylElement& u, const WeylElement& w);

/// Convenience wrapper matching the reflection-side predicate descends(i, w).
inline bool descends(int i, const WeylElement& w) { return w.descends_left(i); }

/// All elements of length <= max_length, breadth-first by length.
std::vector<WeylElement> enumerate_weyl(const GcmPtr& gcm, int max_length);

/// Strata of the refined orbit decomposition attached to a fixed simple
/// index i. Plain(w) labels X_w and Mirror(w) labels s_i X_w for s_i w > w;
/// Cell(w) labels X_w cap s_i X_w for s_i w < w. All have dimension l(w).
struct StratumLabel {
  enum class Kind { Plain, Mirror, Cell };
  Kind kind;
  WeylElement w;

  int dimension() const { return w.length(); }
  bool operator==(const StratumLabel& o) const { return kind == o.kind && w == o.w; }
  bool operator<(const StratumLabel& o) const {
    if (w.length() != o.w.length()) return w.length() < o.w.length();
    if (!(w == o.w)) return w < o.w;
    return static_cast<int>(kind) < static_cast<int>(o.kind);
  }
  std::string str() const;
};

/// Closure poset of the strata of dimension <= max_dim, with covering arrows
/// A -> B iff B lies in the boundary of A and dim B = dim A - 1.
struct StrataPoset {
  int i = 0;
  std::vector<StratumLabel> nodes;
  std::vector<std::pair<int, int>> arrows;  // indices into nodes, (from, to)

  /// Full closure of a node (set of node indices, including the node).
  std::set<int> closure(int node_index) const;

  std::string to_dot() const;
  std::string to_json() const;

 private:
  friend StrataPoset strata(const GcmPtr& gcm, int i, int max_dim);
  std::vector<std::set<int>> closures_;
};

StrataPoset strata(const GcmPtr& gcm, int i, int max_dim);

}  // namespace kmr

#endif

#ifndef KMR_CARTAN_HPP
#define KMR_CARTAN_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kmr/rational.hpp"

namespace kmr {

/// An affine generalized Cartan matrix together with its canonical null
/// vector (the marks of delta). Instances are immutable; build them through
/// validate_affine().
class GeneralizedCartanMatrix {
 public:
  /// Validates a square integer matrix as an affine GCM.
  ///
  /// Throws NotGCMError when the diagonal/sign/zero-pairing axioms fail and
  /// NotAffineError when the matrix is not symmetrizable of corank exactly 1
  /// with a strictly positive integer null vector.
  static std::shared_ptr<const GeneralizedCartanMatrix> validate_affine(
      const std::vector<std::vector<long>>& matrix,
      std::string type_label = "");

  int size() const { return size_; }
  long a(int i, int j) const { return entries_[i * size_ + j]; }

  /// Marks of delta: the unique primitive positive integer null vector.
  const std::vector<long>& null_vector() const { return null_vector_; }

  const std::string& type_label() const { return label_; }

  bool operator==(const GeneralizedCartanMatrix& o) const {
    return size_ == o.size_ && entries_ == o.entries_;
  }

 private:
  GeneralizedCartanMatrix(int size, std::vector<long> entries,
                          std::vector<long> null_vector, std::string label)
      : size_(size),
        entries_(std::move(entries)),
        null_vector_(std::move(null_vector)),
        label_(std::move(label)) {}

  int size_;
  std::vector<long> entries_;      // row-major a_{ij}
  std::vector<long> null_vector_;  // delta marks
  std::string label_;
};

using GcmPtr = std::shared_ptr<const GeneralizedCartanMatrix>;

/// Element of h* in fundamental-weight + delta coordinates:
/// fundamental_coords[i] = lambda(h_i) and delta_coord = lambda(d),
/// with the convention alpha_i(d) = [i == 0].
class WeightVector {
 public:
  WeightVector() = default;
  WeightVector(std::vector<Rat> fundamental, Rat delta)
      : fund_(std::move(fundamental)), delta_(std::move(delta)) {}

  static WeightVector zero(int n) { return WeightVector(std::vector<Rat>(n, 0), 0); }

  /// The simple root alpha_i read off the GCM: alpha_i(h_j) = a_{ji}.
  static WeightVector simple_root(const GeneralizedCartanMatrix& gcm, int i);

  /// rho with rho(h_i) = 1 for all i and rho(d) = 0 (fixed choice).
  static WeightVector rho(const GeneralizedCartanMatrix& gcm);

  /// delta = sum of marks times simple roots; spans the GCM kernel.
  static WeightVector delta(const GeneralizedCartanMatrix& gcm);

  int size() const { return static_cast<int>(fund_.size()); }
  const Rat& fundamental(int i) const { return fund_[i]; }
  const Rat& delta_coord() const { return delta_; }

  /// Evaluation lambda(h_i).
  const Rat& pairing(int i) const;

  /// Evaluation against the canonical central element K = sum marks^vee h_i.
  /// For type A all dual marks are 1.
  Rat pairing_central(const GeneralizedCartanMatrix& gcm) const;

  bool is_integral() const;

  WeightVector operator+(const WeightVector& o) const;
  WeightVector operator-(const WeightVector& o) const;
  WeightVector operator*(const Rat& c) const;
  WeightVector operator-() const { return *this * Rat(-1); }
  bool operator==(const WeightVector& o) const {
    return fund_ == o.fund_ && delta_ == o.delta_;
  }
  bool operator!=(const WeightVector& o) const { return !(*this == o); }
  bool operator<(const WeightVector& o) const;  // lexicographic, for map keys

  std::string str() const;

 private:
  std::vector<Rat> fund_;
  Rat delta_ = 0;
};

/// True iff (lambda+rho)(h_i) < 0 for all i.
bool is_rho_regular_antidominant(const GeneralizedCartanMatrix& gcm,
                                 const WeightVector& lambda);

/// A root with its multiplicity. simple_coords are the coordinates in the
/// simple-root basis; root is the same vector in weight coordinates.
struct RootDatum {
  WeightVector root;
  std::vector<long> simple_coords;
  long height = 0;
  long multiplicity = 1;
  bool is_real = true;
};

/// Converts simple-root coordinates to weight coordinates.
WeightVector root_from_simple_coords(const GeneralizedCartanMatrix& gcm,
                                     const std::vector<long>& coords);

/// Writes beta as a rational combination of the simple roots, when possible.
std::optional<std::vector<Rat>> decompose_in_simple_roots(
    const GeneralizedCartanMatrix& gcm, const WeightVector& beta);

/// Callback supplying the dimension of the root space for an imaginary root
/// given by simple-root coordinates. Registered by a concrete realization.
using ImaginaryMultiplicityFn = std::function<long(const std::vector<long>&)>;

/// Every positive root of height <= H, sorted by (height, lexicographic
/// coords). Real roots always carry multiplicity 1; imaginary roots require
/// imaginary_mult, else MultiplicityUnavailableError is thrown.
std::vector<RootDatum> positive_roots_up_to_height(
    const GeneralizedCartanMatrix& gcm, long height_bound,
    const ImaginaryMultiplicityFn& imaginary_mult = nullptr);

}  // namespace kmr

#endif

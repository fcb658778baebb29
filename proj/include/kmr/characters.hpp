#ifndef KMR_CHARACTERS_HPP
#define KMR_CHARACTERS_HPP

#include <map>
#include <optional>
#include <string>

#include "kmr/cartan.hpp"

namespace kmr {

/// Truncation region for formal characters: a box in the coordinates
/// (alpha_i offset x, delta degree y, residual finite directions) around a
/// base weight. Weights of a character are base + x alpha_i + y delta +
/// residual with y in [delta_min, 0], x in [x_min, x_max] and the summed
/// absolute residual coordinates bounded by residual_bound.
struct CharRegion {
  WeightVector base;
  int i = 1;
  int x_min = 0, x_max = 0;
  int delta_min = 0;
  long residual_bound = 0;

  bool operator==(const CharRegion& o) const {
    return base == o.base && i == o.i && x_min == o.x_min && x_max == o.x_max &&
           delta_min == o.delta_min && residual_bound == o.residual_bound;
  }
};

/// Box coordinates of a weight relative to a region base.
struct BoxCoords {
  long x = 0;
  long y = 0;
  long residual = 0;  // sum of |r_j| over j != i
};

/// Computes box coordinates of mu relative to region.base, or nullopt when
/// mu - base is not in the root lattice.
std::optional<BoxCoords> box_coords(const GeneralizedCartanMatrix& gcm,
                                    const CharRegion& region, const WeightVector& mu);

bool region_contains(const GeneralizedCartanMatrix& gcm, const CharRegion& region,
                     const WeightVector& mu);

/// Finitely supported weight -> multiplicity map with its truncation region.
class FormalCharacter {
 public:
  FormalCharacter(GcmPtr gcm, CharRegion region)
      : gcm_(std::move(gcm)), region_(std::move(region)) {}

  const CharRegion& region() const { return region_; }
  const std::map<WeightVector, long long>& support() const { return support_; }
  const GcmPtr& gcm() const { return gcm_; }

  void add(const WeightVector& w, long long mult);
  long long mult(const WeightVector& w) const;

  std::string to_json() const;
  /// TSV matrix: rows are delta degrees (0 down to delta_min), columns the
  /// alpha_i window; entries sum multiplicities over residual directions.
  std::string to_tsv() const;

 private:
  GcmPtr gcm_;
  CharRegion region_;
  std::map<WeightVector, long long> support_;
};

struct CharComparison {
  bool equal = true;
  std::optional<WeightVector> first_difference;
  long long mult_left = 0, mult_right = 0;
  std::string str() const;
};

/// Exact multiset equality on the common (identical) region; throws
/// RegionMismatchError when the regions differ.
CharComparison equal_on_region(const FormalCharacter& c1, const FormalCharacter& c2);

/// Character of the Verma module M(lambda):
/// e^lambda * prod_{beta < 0} (1 - e^beta)^{-mult beta}, truncated.
FormalCharacter char_verma(const GcmPtr& gcm, const WeightVector& lambda,
                           const CharRegion& region,
                           const ImaginaryMultiplicityFn& imag_mult);

/// Character of the relaxed module with monodromy alpha at the simple index
/// i: the Z-fan through lambda + alpha alpha_i times Sym of the negative
/// root spaces other than -alpha_i. The base of the returned region is
/// lambda + frac(alpha) alpha_i, so integer shifts of alpha yield literally
/// identical characters.
FormalCharacter char_relaxed_formula(const GcmPtr& gcm, const WeightVector& lambda,
                                     const Rat& alpha, int i, const CharRegion& region,
                                     const ImaginaryMultiplicityFn& imag_mult);

/// Canonical region for the relaxed character of (lambda, alpha):
/// base = lambda + frac(alpha) alpha_i with the given windows.
CharRegion relaxed_region(const GcmPtr& gcm, const WeightVector& lambda,
                          const Rat& alpha, int i, int x_min, int x_max,
                          int delta_depth, long residual_bound);

/// Applies a Weyl reflection (linear action) to every weight of the support.
std::map<WeightVector, long long> reflect_support(
    const GcmPtr& gcm, int i, const std::map<WeightVector, long long>& support);

}  // namespace kmr

#endif

#include "kmr/characters.hpp"

#include <algorithm>
#include <sstream>

#include "kmr/errors.hpp"

namespace kmr {

namespace {

int reference_index(const CharRegion& region) { return region.i == 0 ? 1 : 0; }

}  // namespace

std::optional<BoxCoords> box_coords(const GeneralizedCartanMatrix& gcm,
                                    const CharRegion& region, const WeightVector& mu) {
  auto dec = decompose_in_simple_roots(gcm, mu - region.base);
  if (!dec) return std::nullopt;
  for (const Rat& c : *dec)
    if (!rat_is_integer(c)) return std::nullopt;
  int jref = reference_index(region);
  const auto& marks = gcm.null_vector();
  long y_num = rat_to_long((*dec)[jref]);
  if (y_num % marks[jref] != 0) return std::nullopt;
  BoxCoords out;
  out.y = y_num / marks[jref];
  out.x = rat_to_long((*dec)[region.i]) - out.y * marks[region.i];
  for (int j = 0; j < gcm.size(); ++j) {
    if (j == region.i) continue;
    out.residual += std::abs(rat_to_long((*dec)[j]) - out.y * marks[j]);
  }
  return out;
}

bool region_contains(const GeneralizedCartanMatrix& gcm, const CharRegion& region,
                     const WeightVector& mu) {
  auto bc = box_coords(gcm, region, mu);
  if (!bc) return false;
  return bc->x >= region.x_min && bc->x <= region.x_max && bc->y >= region.delta_min &&
         bc->y <= 0 && bc->residual <= region.residual_bound;
}

void FormalCharacter::add(const WeightVector& w, long long m) {
  if (m == 0) return;
  auto [it, inserted] = support_.emplace(w, m);
  if (!inserted) {
    it->second += m;
    if (it->second == 0) support_.erase(it);
  }
}

long long FormalCharacter::mult(const WeightVector& w) const {
  auto it = support_.find(w);
  return it == support_.end() ? 0 : it->second;
}

std::string FormalCharacter::to_json() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [w, m] : support_) {
    os << (first ? "" : ",") << "{\"weight\":\"" << w.str() << "\",\"mult\":" << m
       << "}";
    first = false;
  }
  os << "]";
  return os.str();
}

std::string FormalCharacter::to_tsv() const {
  // rows: delta degree from 0 down; columns: alpha_i offset window.
  std::map<std::pair<long, long>, long long> grid;
  for (const auto& [w, m] : support_) {
    auto bc = box_coords(*gcm_, region_, w);
    if (!bc) continue;
    grid[{bc->y, bc->x}] += m;
  }
  std::ostringstream os;
  os << "ddeg";
  for (long x = region_.x_min; x <= region_.x_max; ++x) os << "\t" << x;
  os << "\n";
  for (long y = 0; y >= region_.delta_min; --y) {
    os << y;
    for (long x = region_.x_min; x <= region_.x_max; ++x) {
      auto it = grid.find({y, x});
      os << "\t" << (it == grid.end() ? 0 : it->second);
    }
    os << "\n";
  }
  return os.str();
}

std::string CharComparison::str() const {
  if (equal) return "equal";
  std::ostringstream os;
  os << "first difference at " << first_difference->str() << ": " << mult_left
     << " vs " << mult_right;
  return os.str();
}

CharComparison equal_on_region(const FormalCharacter& c1, const FormalCharacter& c2) {
  if (!(c1.region() == c2.region()))
    throw RegionMismatchError("characters carry different truncation regions");
  CharComparison cmp;
  // Merge keys; report the first differing weight in the (y, x, weight)
  // lexicographic order.
  std::vector<WeightVector> keys;
  for (const auto& [w, m] : c1.support()) keys.push_back(w);
  for (const auto& [w, m] : c2.support()) keys.push_back(w);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end(),
                         [](const WeightVector& a, const WeightVector& b) {
                           return a == b;
                         }),
             keys.end());
  const auto& gcm = *c1.gcm();
  std::stable_sort(keys.begin(), keys.end(),
                   [&](const WeightVector& a, const WeightVector& b) {
                     auto ba = box_coords(gcm, c1.region(), a);
                     auto bb = box_coords(gcm, c1.region(), b);
                     if (ba && bb) {
                       if (ba->y != bb->y) return ba->y > bb->y;
                       if (ba->x != bb->x) return ba->x < bb->x;
                     }
                     return a < b;
                   });
  for (const auto& w : keys) {
    long long m1 = c1.mult(w), m2 = c2.mult(w);
    if (m1 != m2) {
      cmp.equal = false;
      cmp.first_difference = w;
      cmp.mult_left = m1;
      cmp.mult_right = m2;
      return cmp;
    }
  }
  return cmp;
}

namespace {

// Multiplies the character by the geometric series 1 + e^beta + e^{2 beta} +
// ... inside a widened box; per-coordinate movement under a fixed shift is
// monotone, so dropping terms once they exit is exact.
void multiply_geometric(FormalCharacter& chr, const GeneralizedCartanMatrix& gcm,
                        const CharRegion& wide, const WeightVector& beta) {
  std::map<WeightVector, long long> frontier = chr.support();
  while (!frontier.empty()) {
    std::map<WeightVector, long long> next;
    for (const auto& [w, m] : frontier) {
      WeightVector shifted = w + beta;
      if (!region_contains(gcm, wide, shifted)) continue;
      next[shifted] += m;
    }
    for (const auto& [w, m] : next) chr.add(w, m);
    frontier = std::move(next);
  }
}

// Enumeration height needed so that every negative root with delta degree
// down to delta_min and residual part within the bound is present.
long enumeration_height(const GeneralizedCartanMatrix& gcm, const CharRegion& region) {
  long marks_sum = 0;
  for (long m : gcm.null_vector()) marks_sum += m;
  return (-static_cast<long>(region.delta_min) + 1) * marks_sum +
         region.residual_bound + std::abs(region.x_max) + std::abs(region.x_min) +
         gcm.size();
}

long box_extension(const GeneralizedCartanMatrix& gcm, const CharRegion& region) {
  long marks_sum = 0;
  for (long m : gcm.null_vector()) marks_sum += m;
  return (marks_sum + 2) * (-static_cast<long>(region.delta_min) + 1) +
         region.residual_bound + 4;
}

FormalCharacter truncated_product(const GcmPtr& gcm, const CharRegion& region,
                                  const std::map<WeightVector, long long>& seed,
                                  bool exclude_minus_alpha_i,
                                  const ImaginaryMultiplicityFn& imag_mult) {
  // Work in a widened box so terms that wander out in the x or residual
  // direction and come back via later factors are kept.
  CharRegion wide = region;
  long ext = box_extension(*gcm, region);
  wide.x_min -= static_cast<int>(ext);
  wide.x_max += static_cast<int>(ext);
  wide.residual_bound += ext;

  FormalCharacter chr(gcm, wide);
  for (const auto& [w, m] : seed) chr.add(w, m);

  auto roots = positive_roots_up_to_height(*gcm, enumeration_height(*gcm, region),
                                           imag_mult);
  for (const auto& rd : roots) {
    // Skip roots that already start below the delta window.
    auto bc = box_coords(*gcm, CharRegion{WeightVector::zero(gcm->size()), region.i,
                                          0, 0, 0, 0},
                         WeightVector::zero(gcm->size()) - rd.root);
    if (bc && bc->y < region.delta_min) continue;
    if (exclude_minus_alpha_i) {
      bool is_alpha_i = rd.height == 1 && rd.simple_coords[region.i] == 1;
      if (is_alpha_i) continue;
    }
    WeightVector neg = WeightVector::zero(gcm->size()) - rd.root;
    for (long copy = 0; copy < rd.multiplicity; ++copy)
      multiply_geometric(chr, *gcm, wide, neg);
  }

  FormalCharacter out(gcm, region);
  for (const auto& [w, m] : chr.support())
    if (region_contains(*gcm, region, w)) out.add(w, m);
  return out;
}

}  // namespace

CharRegion relaxed_region(const GcmPtr& gcm, const WeightVector& lambda,
                          const Rat& alpha, int i, int x_min, int x_max,
                          int delta_depth, long residual_bound) {
  CharRegion r;
  r.base = lambda + WeightVector::simple_root(*gcm, i) * rat_frac(alpha);
  r.i = i;
  r.x_min = x_min;
  r.x_max = x_max;
  r.delta_min = -delta_depth;
  r.residual_bound = residual_bound;
  return r;
}

FormalCharacter char_verma(const GcmPtr& gcm, const WeightVector& lambda,
                           const CharRegion& region,
                           const ImaginaryMultiplicityFn& imag_mult) {
  std::map<WeightVector, long long> seed{{lambda, 1}};
  return truncated_product(gcm, region, seed, false, imag_mult);
}

FormalCharacter char_relaxed_formula(const GcmPtr& gcm, const WeightVector& lambda,
                                     const Rat& alpha, int i, const CharRegion& region,
                                     const ImaginaryMultiplicityFn& imag_mult) {
  if (region.i != i) throw RegionMismatchError("region fan index mismatch");
  WeightVector ai = WeightVector::simple_root(*gcm, i);
  WeightVector base = lambda + ai * rat_frac(alpha);
  if (!(base == region.base))
    throw RegionMismatchError("region base does not match lambda + frac(alpha) alpha_i");
  // The fan is extended beyond the x window so products that drift back into
  // the box are complete.
  long marks_sum = 0;
  for (long m : gcm->null_vector()) marks_sum += m;
  long ext = (marks_sum + 2) * (-static_cast<long>(region.delta_min) + 1) +
             region.residual_bound + 4;
  std::map<WeightVector, long long> seed;
  for (long x = region.x_min - ext; x <= region.x_max + ext; ++x)
    seed[base + ai * Rat(x)] = 1;
  return truncated_product(gcm, region, seed, true, imag_mult);
}

std::map<WeightVector, long long> reflect_support(
    const GcmPtr& gcm, int i, const std::map<WeightVector, long long>& support) {
  WeightVector ai = WeightVector::simple_root(*gcm, i);
  std::map<WeightVector, long long> out;
  for (const auto& [w, m] : support) out[w - ai * w.pairing(i)] += m;
  return out;
}

}  // namespace kmr

#ifndef KMR_LINALG_HPP
#define KMR_LINALG_HPP

#include <map>
#include <vector>

#include "kmr/rational.hpp"

namespace kmr {

/// Exact kernel basis of the column map m: Q^cols -> Q^rows.
inline std::vector<std::vector<Rat>> kernel_basis(std::vector<std::vector<Rat>> m,
                                                  int cols) {
  int rows = static_cast<int>(m.size());
  std::vector<int> pivot_of_col(cols, -1);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rat p = m[rank][c];
    for (int cc = 0; cc < cols; ++cc) m[rank][cc] /= p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (int cc = 0; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    pivot_of_col[c] = rank;
    ++rank;
  }
  std::vector<std::vector<Rat>> kernel;
  for (int c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<Rat> v(cols, 0);
    v[c] = 1;
    for (int cc = 0; cc < cols; ++cc) {
      if (pivot_of_col[cc] >= 0) v[cc] = -m[pivot_of_col[cc]][c];
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}

/// Incremental sparse row echelon span over arbitrary ordered keys.
template <typename Key>
class SparseSpan {
 public:
  using Vec = std::map<Key, Rat>;

  /// Reduces v against the span; inserts the monic remainder when nonzero.
  /// Returns true iff the span grew.
  bool insert(Vec v) {
    reduce(v);
    if (v.empty()) return false;
    Rat lead = v.begin()->second;
    for (auto& [k, c] : v) c /= lead;
    Key key = v.begin()->first;
    rows_.emplace(key, std::move(v));
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    return v.empty();
  }

  long rank() const { return static_cast<long>(rows_.size()); }
  const std::map<Key, Vec>& rows() const { return rows_; }

 private:
  void reduce(Vec& v) const {
    while (!v.empty()) {
      auto it = rows_.find(v.begin()->first);
      if (it == rows_.end()) return;
      Rat c = v.begin()->second;
      for (const auto& [k, x] : it->second) {
        auto [vit, inserted] = v.emplace(k, -c * x);
        if (!inserted) {
          vit->second -= c * x;
          if (vit->second == 0) v.erase(vit);
        }
      }
    }
  }

  std::map<Key, Vec> rows_;
};

}  // namespace kmr

#endif

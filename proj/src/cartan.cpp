#include "kmr/cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "kmr/errors.hpp"

namespace kmr {

namespace {

// Exact rank of a rational matrix by Gaussian elimination.
int rational_rank(std::vector<std::vector<Rat>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    ++rank;
  }
  return rank;
}

// One kernel vector of an n x n rational matrix with corank 1.
std::vector<Rat> kernel_vector(const std::vector<std::vector<long>>& a) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
  // Reduced row echelon form.
  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rat p = m[rank][c];
    for (int cc = 0; cc < n; ++cc) m[rank][cc] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (int cc = 0; cc < n; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    pivot_col[rank] = c;
    ++rank;
  }
  // Free column = the one that is not a pivot.
  std::vector<bool> is_pivot(n, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  int free_col = -1;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_col = c;
  std::vector<Rat> v(n, 0);
  v[free_col] = 1;
  for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free_col];
  return v;
}

bool symmetrizable(const std::vector<std::vector<long>>& a) {
  int n = static_cast<int>(a.size());
  // Propagate d_i with d_i a_{ij} = d_j a_{ji} along the Dynkin graph and
  // check consistency on cycles.
  std::vector<Rat> d(n, 0);
  for (int start = 0; start < n; ++start) {
    if (d[start] != 0) continue;
    d[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (i == j || a[i][j] == 0) continue;
        Rat dj = d[i] * a[i][j] / a[j][i];
        if (d[j] == 0) {
          d[j] = dj;
          stack.push_back(j);
        } else if (d[j] != dj) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const GeneralizedCartanMatrix>
GeneralizedCartanMatrix::validate_affine(
    const std::vector<std::vector<long>>& matrix, std::string type_label) {
  int n = static_cast<int>(matrix.size());
  if (n == 0) throw NotGCMError("empty matrix");
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n) throw NotGCMError("matrix not square");
  }
  for (int i = 0; i < n; ++i) {
    if (matrix[i][i] != 2) throw NotGCMError("diagonal entry != 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (matrix[i][j] > 0) throw NotGCMError("positive off-diagonal entry");
      if ((matrix[i][j] == 0) != (matrix[j][i] == 0))
        throw NotGCMError("a_ij = 0 but a_ji != 0");
    }
  }
  if (!symmetrizable(matrix)) throw NotAffineError("matrix is not symmetrizable");

  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = matrix[i][j];
  int corank = n - rational_rank(m);
  if (corank != 1) {
    std::ostringstream os;
    os << "corank " << corank << " != 1";
    throw NotAffineError(os.str());
  }
  std::vector<Rat> v = kernel_vector(matrix);
  // Scale to the primitive integer vector.
  mpz_class lcm_den = 1;
  for (const Rat& x : v) {
    Rat c = x;
    c.canonicalize();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<mpz_class> iv;
  iv.reserve(v.size());
  for (const Rat& x : v) iv.push_back(mpz_class(x * Rat(lcm_den)));
  mpz_class g = 0;
  for (const auto& x : iv) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  bool all_neg = std::all_of(iv.begin(), iv.end(), [](const mpz_class& x) { return x < 0; });
  std::vector<long> marks;
  marks.reserve(iv.size());
  for (auto& x : iv) {
    mpz_class y = x / g;
    if (all_neg) y = -y;
    if (y <= 0) throw NotAffineError("null vector is not strictly positive");
    marks.push_back(y.get_si());
  }
  return std::shared_ptr<const GeneralizedCartanMatrix>(new GeneralizedCartanMatrix(
      n, [&] {
        std::vector<long> e;
        e.reserve(n * n);
        for (const auto& row : matrix) e.insert(e.end(), row.begin(), row.end());
        return e;
      }(),
      std::move(marks), std::move(type_label)));
}

WeightVector WeightVector::simple_root(const GeneralizedCartanMatrix& gcm, int i) {
  int n = gcm.size();
  if (i < 0 || i >= n) throw IndexOutOfRangeError("simple root index");
  std::vector<Rat> f(n);
  for (int j = 0; j < n; ++j) f[j] = gcm.a(j, i);
  return WeightVector(std::move(f), i == 0 ? 1 : 0);
}

WeightVector WeightVector::rho(const GeneralizedCartanMatrix& gcm) {
  return WeightVector(std::vector<Rat>(gcm.size(), 1), 0);
}

WeightVector WeightVector::delta(const GeneralizedCartanMatrix& gcm) {
  WeightVector d = WeightVector::zero(gcm.size());
  for (int i = 0; i < gcm.size(); ++i)
    d = d + simple_root(gcm, i) * Rat(gcm.null_vector()[i]);
  return d;
}

const Rat& WeightVector::pairing(int i) const {
  if (i < 0 || i >= size()) throw IndexOutOfRangeError("pairing index");
  return fund_[i];
}

Rat WeightVector::pairing_central(const GeneralizedCartanMatrix& gcm) const {
  // K = sum_i marks^vee_i h_i; for the symmetric type A matrices the dual
  // marks equal the marks.
  Rat s = 0;
  for (int i = 0; i < size(); ++i) s += Rat(gcm.null_vector()[i]) * fund_[i];
  return s;
}

bool WeightVector::is_integral() const {
  for (const Rat& x : fund_)
    if (!rat_is_integer(x)) return false;
  return rat_is_integer(delta_);
}

WeightVector WeightVector::operator+(const WeightVector& o) const {
  std::vector<Rat> f(fund_);
  for (int i = 0; i < size(); ++i) f[i] += o.fund_[i];
  return WeightVector(std::move(f), delta_ + o.delta_);
}

WeightVector WeightVector::operator-(const WeightVector& o) const {
  std::vector<Rat> f(fund_);
  for (int i = 0; i < size(); ++i) f[i] -= o.fund_[i];
  return WeightVector(std::move(f), delta_ - o.delta_);
}

WeightVector WeightVector::operator*(const Rat& c) const {
  std::vector<Rat> f(fund_);
  for (auto& x : f) x *= c;
  return WeightVector(std::move(f), delta_ * c);
}

bool WeightVector::operator<(const WeightVector& o) const {
  if (delta_ != o.delta_) return delta_ < o.delta_;
  return std::lexicographical_compare(fund_.begin(), fund_.end(), o.fund_.begin(),
                                      o.fund_.end());
}

std::string WeightVector::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < size(); ++i) os << (i ? "," : "") << rat_str(fund_[i]);
  os << ";" << rat_str(delta_) << ")";
  return os.str();
}

bool is_rho_regular_antidominant(const GeneralizedCartanMatrix& gcm,
                                 const WeightVector& lambda) {
  for (int i = 0; i < gcm.size(); ++i)
    if (lambda.pairing(i) + 1 >= 0) return false;
  return true;
}

WeightVector root_from_simple_coords(const GeneralizedCartanMatrix& gcm,
                                     const std::vector<long>& coords) {
  WeightVector w = WeightVector::zero(gcm.size());
  for (int i = 0; i < gcm.size(); ++i)
    if (coords[i] != 0) w = w + WeightVector::simple_root(gcm, i) * Rat(coords[i]);
  return w;
}

std::optional<std::vector<Rat>> decompose_in_simple_roots(
    const GeneralizedCartanMatrix& gcm, const WeightVector& beta) {
  // The delta coordinate pins the alpha_0 coefficient (alpha_i(d) = [i==0]);
  // the rest solves a linear system against the GCM columns.
  int n = gcm.size();
  std::vector<Rat> sol(n, 0);
  sol[0] = beta.delta_coord();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  std::vector<Rat> rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = gcm.a(i, j);
    rhs[i] = beta.pairing(i) - m[i][0] * sol[0];
  }
  std::vector<int> piv;
  int row = 0;
  for (int col = 1; col < n && row < n; ++col) {
    int p = -1;
    for (int r = row; r < n; ++r)
      if (m[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[row], m[p]);
    std::swap(rhs[row], rhs[p]);
    Rat d = m[row][col];
    for (int cc = 0; cc < n; ++cc) m[row][cc] /= d;
    rhs[row] /= d;
    for (int r = 0; r < n; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int cc = 0; cc < n; ++cc) m[r][cc] -= f * m[row][cc];
      rhs[r] -= f * rhs[row];
    }
    piv.push_back(col);
    ++row;
  }
  for (int r = 0; r < static_cast<int>(piv.size()); ++r) sol[piv[r]] = rhs[r];
  for (int i = 0; i < n; ++i) {
    Rat lhs = 0;
    for (int j = 0; j < n; ++j) lhs += Rat(gcm.a(i, j)) * sol[j];
    if (lhs != beta.pairing(i)) return std::nullopt;
  }
  return sol;
}

std::vector<RootDatum> positive_roots_up_to_height(
    const GeneralizedCartanMatrix& gcm, long height_bound,
    const ImaginaryMultiplicityFn& imaginary_mult) {
  int n = gcm.size();
  if (height_bound < 1) throw BadParametersError("height bound must be >= 1");
  std::set<std::vector<long>> found;
  std::vector<std::vector<std::vector<long>>> by_height(height_bound + 1);

  auto pairing_with_hi = [&](const std::vector<long>& c, int i) {
    long s = 0;
    for (int j = 0; j < n; ++j) s += gcm.a(i, j) * c[j];
    return s;
  };

  for (int i = 0; i < n; ++i) {
    std::vector<long> c(n, 0);
    c[i] = 1;
    found.insert(c);
    by_height[1].push_back(std::move(c));
  }
  // Extend height by height using unbroken root strings: gamma + alpha_i is a
  // root iff p - gamma(h_i) > 0 where p is the depth of the string below gamma.
  for (long h = 1; h < height_bound; ++h) {
    for (const auto& c : by_height[h]) {
      for (int i = 0; i < n; ++i) {
        std::vector<long> up(c);
        up[i] += 1;
        if (found.count(up)) continue;
        long p = 0;
        std::vector<long> down(c);
        while (true) {
          down[i] -= 1;
          bool zero = std::all_of(down.begin(), down.end(), [](long x) { return x == 0; });
          if (zero || !found.count(down)) break;
          ++p;
        }
        if (p - pairing_with_hi(c, i) > 0) {
          found.insert(up);
          by_height[h + 1].push_back(std::move(up));
        }
      }
    }
  }

  const std::vector<long>& marks = gcm.null_vector();
  auto delta_multiple = [&](const std::vector<long>& c) -> long {
    // Returns k > 0 when c == k * marks, else 0.
    if (c[0] % marks[0] != 0) return 0;
    long k = c[0] / marks[0];
    if (k <= 0) return 0;
    for (int i = 0; i < n; ++i)
      if (c[i] != k * marks[i]) return 0;
    return k;
  };

  std::vector<RootDatum> out;
  for (long h = 1; h <= height_bound; ++h) {
    auto& layer = by_height[h];
    std::sort(layer.begin(), layer.end());
    for (const auto& c : layer) {
      RootDatum r;
      r.simple_coords = c;
      r.height = h;
      r.root = root_from_simple_coords(gcm, c);
      long k = delta_multiple(c);
      r.is_real = (k == 0);
      if (r.is_real) {
        r.multiplicity = 1;
      } else {
        if (!imaginary_mult)
          throw MultiplicityUnavailableError(
              "imaginary root multiplicity requested without a concrete realization");
        r.multiplicity = imaginary_mult(c);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace kmr

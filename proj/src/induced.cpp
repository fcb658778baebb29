#include "kmr/induced.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "kmr/errors.hpp"
#include "kmr/linalg.hpp"

namespace kmr {

std::string PBWMonomial::str() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  for (size_t t = 0; t < factors.size(); ++t) {
    os << (t ? " " : "") << "X" << factors[t].first;
    if (factors[t].second > 1) os << "^" << factors[t].second;
  }
  return os.str();
}

void ModuleVector::add(const ModuleBasisKey& k, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
  ModuleVector out = *this;
  for (const auto& [k, c] : o.terms_) out.add(k, c);
  return out;
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const {
  ModuleVector out = *this;
  for (const auto& [k, c] : o.terms_) out.add(k, -c);
  return out;
}

ModuleVector ModuleVector::operator*(const Rat& c) const {
  ModuleVector out;
  if (c == 0) return out;
  for (const auto& [k, x] : terms_) out.add(k, x * c);
  return out;
}

std::string ModuleVector::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    os << (first ? "" : " + ") << rat_str(c) << "*(" << k.mono.str() << " (x) v_"
       << k.top << ")";
    first = false;
  }
  return os.str();
}

std::string ModuleVector::to_json() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [k, c] : terms_) {
    os << (first ? "" : ",") << "{\"monomial\":[";
    for (size_t t = 0; t < k.mono.factors.size(); ++t)
      os << (t ? "," : "") << "[" << k.mono.factors[t].first << ","
         << k.mono.factors[t].second << "]";
    os << "],\"top\":" << k.top << ",\"coeff\":\"" << rat_str(c) << "\"}";
    first = false;
  }
  os << "]";
  return os.str();
}

LoopBasisElement InducedModule::omega(const LoopBasisElement& g) {
  LoopBasisElement o = g;
  switch (g.kind) {
    case LoopBasisElement::Kind::CentralK:
    case LoopBasisElement::Kind::DerivationD:
      return o;
    case LoopBasisElement::Kind::MatrixTensor:
      o.a = g.b;
      o.b = g.a;
      o.k = -g.k;
      return o;
  }
  return o;
}

std::shared_ptr<InducedModule> InducedModule::relaxed(
    std::shared_ptr<const LoopAlgebra> alg, int i, const WeightVector& lambda,
    const Rat& alpha, Sl2Table top, const InducedTruncation& trunc) {
  if (i < 0 || i >= alg->n()) throw IndexOutOfRangeError("simple index");
  if (top.h0 != lambda.pairing(i) + 2 * alpha)
    throw ParameterMismatchError("top table h0 must equal lambda(h_i) + 2 alpha");
  auto mod = std::shared_ptr<InducedModule>(new InducedModule());
  mod->alg_ = std::move(alg);
  mod->i_ = i;
  mod->lambda_ = lambda;
  mod->alpha_ = alpha;
  mod->lambda_gen_ =
      lambda + WeightVector::simple_root(*mod->alg_->gcm(), i) * alpha;
  mod->top_ = std::move(top);
  mod->trunc_ = trunc;
  mod->trunc_.top_lo = std::max(trunc.top_lo, mod->top_.n_min);
  mod->trunc_.top_hi = std::min(trunc.top_hi, mod->top_.n_max);
  mod->build_basis();
  return mod;
}

std::shared_ptr<InducedModule> InducedModule::relaxed(
    std::shared_ptr<const LoopAlgebra> alg, int i, const WeightVector& lambda,
    const DenseSl2Module& top, const InducedTruncation& trunc) {
  return relaxed(std::move(alg), i, lambda, top.alpha(), top.table(), trunc);
}

std::shared_ptr<InducedModule> InducedModule::verma(
    std::shared_ptr<const LoopAlgebra> alg, const WeightVector& lambda,
    const InducedTruncation& trunc) {
  auto mod = std::shared_ptr<InducedModule>(new InducedModule());
  mod->alg_ = std::move(alg);
  mod->i_ = -1;
  mod->lambda_ = lambda;
  mod->lambda_gen_ = lambda;
  Sl2Table top;
  top.h0 = 0;
  top.n_min = top.n_max = 0;
  top.present = {1};
  top.a = {0};
  top.b = {0};
  mod->top_ = std::move(top);
  mod->trunc_ = trunc;
  mod->trunc_.top_lo = mod->trunc_.top_hi = 0;
  mod->build_basis();
  return mod;
}

BoxCoords InducedModule::offset_box(const WeightVector& mu) const {
  CharRegion probe;
  probe.base = lambda_gen_;
  probe.i = is_verma() ? 1 : i_;
  auto bc = box_coords(*alg_->gcm(), probe, mu);
  if (!bc) throw Error("internal: weight outside the root-lattice fan");
  return *bc;
}

bool InducedModule::weight_admitted(const WeightVector& mu) const {
  CharRegion probe;
  probe.base = lambda_gen_;
  probe.i = is_verma() ? 1 : i_;
  auto bc = box_coords(*alg_->gcm(), probe, mu);
  if (!bc) return false;
  return bc->x >= trunc_.x_lo && bc->x <= trunc_.x_hi && bc->y >= -trunc_.delta_depth &&
         bc->y <= 0 && bc->residual <= trunc_.residual_bound;
}

void InducedModule::build_basis() {
  const auto& gcm = *alg_->gcm();
  long marks_sum = 0;
  for (long m : gcm.null_vector()) marks_sum += m;
  long x_span = std::max(std::abs((long)trunc_.x_lo), std::abs((long)trunc_.x_hi));
  long t_span =
      std::max(std::abs((long)trunc_.top_lo), std::abs((long)trunc_.top_hi));
  long height_budget = (long)trunc_.delta_depth * marks_sum + x_span + t_span +
                       trunc_.residual_bound + 4;

  // Factor basis: negative root vectors within the budget; for relaxed
  // modules the -alpha_i line is excluded (it lives in the top level).
  auto roots = positive_roots_up_to_height(gcm, height_budget,
                                           alg_->imaginary_mult_fn());
  std::vector<std::pair<std::vector<long>, LoopBasisElement>> cand;
  for (const auto& rd : roots) {
    if (rd.simple_coords[0] > trunc_.delta_depth) continue;
    if (!is_verma()) {
      bool is_alpha_i = rd.height == 1 && rd.simple_coords[i_] == 1;
      if (is_alpha_i) continue;
    }
    std::vector<long> neg(rd.simple_coords);
    for (auto& c : neg) c = -c;
    for (const auto& x : alg_->basis_of_root(neg)) cand.emplace_back(neg, x);
  }
  // Order: by height towards 0 first, then delta degree, then matrix slot.
  std::sort(cand.begin(), cand.end(), [&](const auto& l, const auto& r) {
    long hl = 0, hr = 0;
    for (long c : l.first) hl += c;
    for (long c : r.first) hr += c;
    if (hl != hr) return hl > hr;
    if (l.first[0] != r.first[0]) return l.first[0] > r.first[0];
    return l.second < r.second;
  });
  factors_.clear();
  factor_index_.clear();
  factor_weights_.clear();
  for (size_t t = 0; t < cand.size(); ++t) {
    factors_.push_back(cand[t].second);
    factor_index_.emplace(cand[t].second, static_cast<int>(t));
    factor_weights_.push_back(alg_->weight_of(cand[t].second));
  }

  // Monomials: strictly decreasing factor indices, pruned by the (complete,
  // monotone) delta and total-height budgets.
  std::vector<std::pair<PBWMonomial, WeightVector>> monos;
  PBWMonomial current;
  WeightVector zero = WeightVector::zero(gcm.size());
  std::vector<long> heights(factors_.size());
  std::vector<long> ddegs(factors_.size());
  for (size_t t = 0; t < factors_.size(); ++t) {
    auto rc = alg_->root_coords_of(factors_[t]);
    long h = 0;
    for (long c : *rc) h += c;
    heights[t] = h;
    ddegs[t] = (*rc)[0];
  }
  // Future factors can shrink a partial monomial's residual by at most one
  // per unit of height still available, so this prune is exact-safe.
  CharRegion probe0;
  probe0.base = zero;
  probe0.i = is_verma() ? 1 : i_;
  auto residual_of = [&](const WeightVector& w) -> long {
    auto bc = box_coords(gcm, probe0, w);
    return bc ? bc->residual : 0;
  };
  std::function<void(int, long, long, WeightVector)> rec =
      [&](int next, long ht, long ddeg, WeightVector w) {
        monos.emplace_back(current, w);
        for (int k = next; k >= 0; --k) {
          long h2 = ht + heights[k];
          long d2 = ddeg + ddegs[k];
          if (h2 < -height_budget || d2 < -trunc_.delta_depth) continue;
          current.factors.emplace_back(k, 1);
          WeightVector w2 = w + factor_weights_[k];
          long hcur = h2;
          long dcur = d2;
          while (hcur >= -height_budget && dcur >= -trunc_.delta_depth) {
            long slack = height_budget + hcur;
            if (residual_of(w2) <= trunc_.residual_bound + slack)
              rec(k - 1, hcur, dcur, w2);
            current.factors.back().second += 1;
            w2 = w2 + factor_weights_[k];
            hcur += heights[k];
            dcur += ddegs[k];
          }
          current.factors.pop_back();
        }
      };
  rec(static_cast<int>(factors_.size()) - 1, 0, 0, zero);

  // Combine with top slots inside the weight box.
  WeightVector ai = is_verma() ? WeightVector::zero(gcm.size())
                               : WeightVector::simple_root(gcm, i_);
  spaces_.clear();
  basis_position_.clear();
  mono_x_min_ = mono_x_max_ = 0;
  CharRegion probe;
  probe.base = WeightVector::zero(gcm.size());
  probe.i = is_verma() ? 1 : i_;
  for (const auto& [mono, w] : monos) {
    auto bc = box_coords(gcm, probe, w);
    // Only monomials inside the residual box can pair with a top slot to
    // land on an admitted weight; they determine the required fan reach.
    if (bc && bc->residual <= trunc_.residual_bound) {
      mono_x_min_ = std::min(mono_x_min_, bc->x);
      mono_x_max_ = std::max(mono_x_max_, bc->x);
    }
  }
  for (const auto& [mono, w] : monos) {
    for (int n = trunc_.top_lo; n <= trunc_.top_hi; ++n) {
      if (!top_.has(n)) continue;
      WeightVector mu = lambda_gen_ + w + ai * Rat(n);
      if (!weight_admitted(mu)) continue;
      ModuleBasisKey key{mono, n};
      auto& space = spaces_[mu];
      basis_position_.emplace(key, static_cast<int>(space.size()));
      space.push_back(std::move(key));
    }
  }
}

std::optional<int> InducedModule::factor_index(const LoopBasisElement& g) const {
  auto it = factor_index_.find(g);
  if (it == factor_index_.end()) return std::nullopt;
  return it->second;
}

ModuleVector InducedModule::top_vector(int n) const {
  if (!top_.has(n)) throw WindowEdgeError("top slot absent");
  ModuleVector v;
  v.add({PBWMonomial{}, n}, 1);
  return v;
}

WeightVector InducedModule::weight_of(const ModuleBasisKey& key) const {
  const auto& gcm = *alg_->gcm();
  WeightVector w = lambda_gen_;
  if (!is_verma())
    w = w + WeightVector::simple_root(gcm, i_) * Rat(key.top);
  for (const auto& [k, e] : key.mono.factors) w = w + factor_weights_[k] * Rat(e);
  return w;
}

void InducedModule::check_admitted(const ModuleBasisKey& key) const {
  if (key.top < trunc_.top_lo || key.top > trunc_.top_hi)
    throw DepthOverflowError("top slot outside window");
  WeightVector mu = weight_of(key);
  if (!weight_admitted(mu)) throw DepthOverflowError("weight outside the box");
  if (!basis_position_.count(key))
    throw Error("internal: admitted key missing from basis");
}

const std::vector<ModuleBasisKey>& InducedModule::weight_space_basis(
    const WeightVector& mu) const {
  static const std::vector<ModuleBasisKey> kEmpty;
  // Weights above the top row, or outside the fan lattice, are zero exactly.
  CharRegion probe;
  probe.base = lambda_gen_;
  probe.i = is_verma() ? 1 : i_;
  auto bc = box_coords(*alg_->gcm(), probe, mu);
  if (!bc || bc->y > 0) return kEmpty;
  if (!weight_admitted(mu)) throw OutOfDepthError("weight outside truncation");
  auto it = spaces_.find(mu);
  return it == spaces_.end() ? kEmpty : it->second;
}

long InducedModule::weight_space_dim(const WeightVector& mu) const {
  return static_cast<long>(weight_space_basis(mu).size());
}

ModuleVector InducedModule::top_action(const LoopBasisElement& g, const Rat& coeff,
                                       int n) const {
  ModuleVector out;
  auto rc = alg_->root_coords_of(g);
  if (!rc) {
    // Cartan: evaluate the top-slot weight.
    WeightVector mu = weight_of({PBWMonomial{}, n});
    Rat scalar = 0;
    switch (g.kind) {
      case LoopBasisElement::Kind::CentralK:
        scalar = mu.pairing_central(*alg_->gcm());
        break;
      case LoopBasisElement::Kind::DerivationD:
        scalar = mu.delta_coord();
        break;
      case LoopBasisElement::Kind::MatrixTensor:
        scalar = mu.pairing(g.a);  // H_c = h_c for 1 <= c <= n-1
        break;
    }
    out.add({PBWMonomial{}, n}, coeff * scalar);
    return out;
  }
  long ht = 0;
  for (long c : *rc) ht += c;
  auto is_simple_i = [&](long sign) {
    if (is_verma()) return false;
    for (int j = 0; j < alg_->n(); ++j)
      if ((*rc)[j] != (j == i_ ? sign : 0)) return false;
    return true;
  };
  if (is_simple_i(1)) {
    // e_i via the top table.
    if (n > top_.n_max - 1) throw DepthOverflowError("e_i leaves the top window");
    Rat a = top_.a_at(n);
    if (a != 0) {
      if (!top_.has(n + 1)) throw Error("internal: nonzero a into absent slot");
      ModuleBasisKey key{PBWMonomial{}, n + 1};
      check_admitted(key);
      out.add(key, coeff * a);
    }
    return out;
  }
  if (is_simple_i(-1)) {
    if (n < top_.n_min + 1) throw DepthOverflowError("f_i leaves the top window");
    Rat b = top_.b_at(n);
    if (b != 0) {
      if (!top_.has(n - 1)) throw Error("internal: nonzero b into absent slot");
      ModuleBasisKey key{PBWMonomial{}, n - 1};
      check_admitted(key);
      out.add(key, coeff * b);
    }
    return out;
  }
  if (ht > 0) return out;  // n_i annihilates the top level
  throw DepthOverflowError("negative generator outside the factor basis");
}

ModuleVector InducedModule::mult_factor(int k, const ModuleBasisKey& key) const {
  ModuleVector out;
  if (key.mono.empty() || k >= key.mono.factors.front().first) {
    ModuleBasisKey merged = key;
    if (!merged.mono.factors.empty() && merged.mono.factors.front().first == k)
      merged.mono.factors.front().second += 1;
    else
      merged.mono.factors.insert(merged.mono.factors.begin(), {k, 1});
    check_admitted(merged);
    out.add(merged, 1);
    return out;
  }
  // X_k X_j = X_j X_k + [X_k, X_j] with j the leading index > k.
  int j = key.mono.factors.front().first;
  ModuleBasisKey rest = key;
  if (rest.mono.factors.front().second > 1)
    rest.mono.factors.front().second -= 1;
  else
    rest.mono.factors.erase(rest.mono.factors.begin());

  ModuleVector inner = mult_factor(k, rest);
  for (const auto& [kk, cc] : inner.terms()) {
    ModuleVector lifted = mult_factor(j, kk);
    out = out + lifted * cc;
  }
  AlgebraElement br = alg_->bracket(
      AlgebraElement(factors_[k], 1, 1 << 20), AlgebraElement(factors_[j], 1, 1 << 20));
  for (const auto& [gb, gc] : br.terms()) {
    auto idx = factor_index(gb);
    if (!idx) throw DepthOverflowError("bracket factor outside the factor basis");
    ModuleVector part = mult_factor(*idx, rest);
    out = out + part * gc;
  }
  return out;
}

ModuleVector InducedModule::act_basis(const LoopBasisElement& g,
                                      const ModuleBasisKey& key) const {
  if (auto idx = factor_index(g)) return mult_factor(*idx, key);
  if (key.mono.empty()) return top_action(g, 1, key.top);

  // g X_j^e rest = X_j (g X_j^{e-1} rest) + [g, X_j] (X_j^{e-1} rest)
  int j = key.mono.factors.front().first;
  ModuleBasisKey rest = key;
  if (rest.mono.factors.front().second > 1)
    rest.mono.factors.front().second -= 1;
  else
    rest.mono.factors.erase(rest.mono.factors.begin());

  ModuleVector out;
  ModuleVector inner = act_basis(g, rest);
  for (const auto& [kk, cc] : inner.terms()) {
    ModuleVector lifted = mult_factor(j, kk);
    out = out + lifted * cc;
  }
  AlgebraElement br = alg_->bracket(AlgebraElement(g, 1, 1 << 20),
                                    AlgebraElement(factors_[j], 1, 1 << 20));
  for (const auto& [gb, gc] : br.terms()) {
    ModuleVector part = act_basis(gb, rest);
    out = out + part * gc;
  }
  return out;
}

ModuleVector InducedModule::act(const AlgebraElement& x, const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [g, gc] : x.terms()) {
    for (const auto& [key, kc] : v.terms()) {
      ModuleVector part = act_basis(g, key);
      out = out + part * (gc * kc);
    }
  }
  return out;
}

std::vector<std::vector<Rat>> InducedModule::action_matrix(
    const LoopBasisElement& g, const WeightVector& mu) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = matrix_cache_.find({g, mu});
    if (it != matrix_cache_.end()) return it->second;
  }
  WeightVector target = mu + alg_->weight_of(g);
  const auto& from = weight_space_basis(mu);
  const auto& to = weight_space_basis(target);
  std::vector<std::vector<Rat>> m(to.size(), std::vector<Rat>(from.size(), 0));
  for (size_t col = 0; col < from.size(); ++col) {
    ModuleVector image = act_basis(g, from[col]);
    for (const auto& [key, c] : image.terms()) {
      auto pos = basis_position_.find(key);
      if (pos == basis_position_.end()) throw Error("internal: image key unknown");
      m[pos->second][col] = c;
    }
  }
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    matrix_cache_.emplace(std::make_pair(g, mu), m);
  }
  return m;
}

std::vector<std::vector<Rat>> InducedModule::restricted_dual_action(
    const LoopBasisElement& g, const WeightVector& mu) const {
  // x on the dual at mu is the transpose of omega(x): mu + root(g) -> mu.
  LoopBasisElement og = omega(g);
  WeightVector target = mu + alg_->weight_of(g);
  std::vector<std::vector<Rat>> m = action_matrix(og, target);
  std::vector<std::vector<Rat>> t(m.empty() ? 0 : m[0].size(),
                                  std::vector<Rat>(m.size(), 0));
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

std::vector<ModuleVector> InducedModule::find_primitive_vectors(
    const WeightVector& mu) const {
  const auto& basis = weight_space_basis(mu);
  if (basis.empty()) return {};
  std::vector<std::vector<Rat>> stacked;
  for (int j = 0; j < alg_->n(); ++j) {
    AlgebraElement ej_elem = alg_->e(j, 2);
    const LoopBasisElement& ej = ej_elem.terms().begin()->first;
    WeightVector target = mu + alg_->weight_of(ej);
    CharRegion probe;
    probe.base = lambda_gen_;
    probe.i = is_verma() ? 1 : i_;
    auto bc = box_coords(*alg_->gcm(), probe, target);
    if (bc && bc->y > 0) continue;  // the target space is zero exactly
    if (!weight_admitted(target))
      throw OutOfDepthError("primitive-vector probe needs margin above the weight");
    auto m = action_matrix(ej, mu);
    for (auto& row : m) stacked.push_back(std::move(row));
  }
  auto ker = kernel_basis(std::move(stacked), static_cast<int>(basis.size()));
  std::vector<ModuleVector> out;
  for (const auto& v : ker) {
    ModuleVector w;
    for (size_t c = 0; c < basis.size(); ++c) w.add(basis[c], v[c]);
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

std::optional<WeightVector> homogeneous_weight(const InducedModule& mod,
                                               const ModuleVector& v) {
  std::optional<WeightVector> w;
  for (const auto& [key, c] : v.terms()) {
    WeightVector kw = mod.weight_of(key);
    if (!w)
      w = kw;
    else if (!(*w == kw))
      return std::nullopt;
  }
  return w;
}

}  // namespace

std::map<WeightVector, long> InducedModule::submodule_character(
    const ModuleVector& v, int depth_delta, bool lowering_only) const {
  if (v.is_zero()) return {};
  SparseSpan<ModuleBasisKey> span;
  std::deque<ModuleVector> work;
  span.insert(v.terms());
  work.push_back(v);
  std::vector<AlgebraElement> gens;
  for (int j = 0; j < alg_->n(); ++j) {
    gens.push_back(alg_->f(j, trunc_.delta_depth + 2));
    if (!lowering_only) gens.push_back(alg_->e(j, trunc_.delta_depth + 2));
  }
  while (!work.empty()) {
    ModuleVector u = work.front();
    work.pop_front();
    auto uw = homogeneous_weight(*this, u);
    for (const auto& g : gens) {
      if (uw) {
        const LoopBasisElement& gb = g.terms().begin()->first;
        WeightVector target = *uw + alg_->weight_of(gb);
        CharRegion probe;
        probe.base = lambda_gen_;
        probe.i = is_verma() ? 1 : i_;
        auto bc = box_coords(*alg_->gcm(), probe, target);
        if (!weight_admitted(target)) continue;
        if (bc && bc->y < -depth_delta) continue;
      }
      ModuleVector img;
      try {
        img = act(g, u);
      } catch (const DepthOverflowError&) {
        continue;  // clipped at the truncation boundary
      }
      if (img.is_zero()) continue;
      if (span.insert(img.terms())) work.push_back(img);
    }
  }
  std::map<WeightVector, long> dims;
  for (const auto& [lead, row] : span.rows()) dims[weight_of(lead)] += 1;
  return dims;
}

bool InducedModule::submodule_meets_verma_pair(const ModuleVector& v, int depth_delta,
                                               int chain_lo, int chain_hi) const {
  if (v.is_zero()) throw BadParametersError("zero vector");
  SparseSpan<ModuleBasisKey> span;
  std::deque<ModuleVector> work;
  span.insert(v.terms());
  work.push_back(v);
  std::vector<AlgebraElement> gens;
  for (int j = 0; j < alg_->n(); ++j) {
    gens.push_back(alg_->f(j, trunc_.delta_depth + 2));
    gens.push_back(alg_->e(j, trunc_.delta_depth + 2));
  }

  auto meets_pair = [&]() {
    // Group echelon rows by weight and test for a nonzero combination
    // supported on the extremal chains (top <= chain_lo or >= chain_hi).
    std::map<WeightVector, std::vector<const std::map<ModuleBasisKey, Rat>*>> rows;
    for (const auto& [lead, row] : span.rows()) rows[weight_of(lead)].push_back(&row);
    for (const auto& [mu, list] : rows) {
      // rank of the projection onto the middle coordinates
      SparseSpan<ModuleBasisKey> middle;
      long middle_rank = 0;
      for (const auto* row : list) {
        std::map<ModuleBasisKey, Rat> proj;
        for (const auto& [key, c] : *row)
          if (key.top > chain_lo && key.top < chain_hi) proj.emplace(key, c);
        if (middle.insert(std::move(proj))) ++middle_rank;
      }
      if (middle_rank < static_cast<long>(list.size())) return true;
    }
    return false;
  };

  while (!work.empty()) {
    if (meets_pair()) return true;
    ModuleVector u = work.front();
    work.pop_front();
    auto uw = homogeneous_weight(*this, u);
    for (const auto& g : gens) {
      if (uw) {
        const LoopBasisElement& gb = g.terms().begin()->first;
        WeightVector target = *uw + alg_->weight_of(gb);
        CharRegion probe;
        probe.base = lambda_gen_;
        probe.i = is_verma() ? 1 : i_;
        auto bc = box_coords(*alg_->gcm(), probe, target);
        if (!weight_admitted(target)) continue;
        if (bc && bc->y < -depth_delta) continue;
      }
      ModuleVector img;
      try {
        img = act(g, u);
      } catch (const DepthOverflowError&) {
        continue;
      }
      if (img.is_zero()) continue;
      if (span.insert(img.terms())) work.push_back(img);
    }
  }
  return meets_pair();
}

long InducedModule::gprime_finiteness_probe(const ModuleVector& v, int K) const {
  if (v.is_zero()) return 0;
  if (is_verma()) throw BadParametersError("probe is for relaxed modules");
  AlgebraElement ei = alg_->e(i_, trunc_.delta_depth + 2);
  SparseSpan<ModuleBasisKey> span;
  ModuleVector u = v;
  long dim = 0;
  for (int k = 0; k <= K; ++k) {
    if (span.insert(u.terms())) ++dim;
    if (k < K) u = act(ei, u);
  }
  return dim;
}

FormalCharacter InducedModule::character(const CharRegion& region) const {
  const auto& gcm = *alg_->gcm();
  // The region base may sit anywhere on the generator's alpha_i fan.
  CharRegion probe;
  probe.base = lambda_gen_;
  probe.i = is_verma() ? 1 : i_;
  auto off = box_coords(gcm, probe, region.base);
  if (!off || off->y != 0 || off->residual != 0)
    throw RegionMismatchError("region base must lie on the generator fan");
  long k = off->x;
  if (region.delta_min < -trunc_.delta_depth ||
      region.x_min + k < trunc_.x_lo || region.x_max + k > trunc_.x_hi ||
      region.residual_bound > trunc_.residual_bound)
    throw OutOfDepthError("region exceeds the module truncation");
  // Completeness: every region weight must see all its top slots. The
  // monomial alpha_i offsets bound how far the fan reaches.
  if (!is_verma() &&
      (region.x_min + k - mono_x_max_ < trunc_.top_lo ||
       region.x_max + k - mono_x_min_ > trunc_.top_hi))
    throw OutOfDepthError("top window too narrow for the region");
  FormalCharacter chr(alg_->gcm(), region);
  for (const auto& [mu, basis] : spaces_) {
    if (!region_contains(gcm, region, mu)) continue;
    chr.add(mu, static_cast<long long>(basis.size()));
  }
  return chr;
}

std::map<WeightVector, long> InducedModule::dimension_table() const {
  std::map<WeightVector, long> out;
  for (const auto& [mu, basis] : spaces_) out[mu] = static_cast<long>(basis.size());
  return out;
}

ModuleVector TwistedModuleView::act(const AlgebraElement& x,
                                    const ModuleVector& v) const {
  return base_->act(base_->algebra()->tits_automorphism(i_, x), v);
}

WeightVector TwistedModuleView::weight_of(const ModuleBasisKey& key) const {
  WeightVector w = base_->weight_of(key);
  WeightVector ai = WeightVector::simple_root(*base_->algebra()->gcm(), i_);
  return w - ai * w.pairing(i_);
}

std::map<WeightVector, long> TwistedModuleView::dimension_table() const {
  WeightVector ai = WeightVector::simple_root(*base_->algebra()->gcm(), i_);
  std::map<WeightVector, long> out;
  for (const auto& [mu, d] : base_->dimension_table())
    out[mu - ai * mu.pairing(i_)] += d;
  return out;
}

}  // namespace kmr

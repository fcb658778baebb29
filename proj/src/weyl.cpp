#include "kmr/weyl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kmr/errors.hpp"

namespace kmr {

namespace {

// s_i on simple-root coordinates: c_i -= sum_j a_{ij} c_j.
void reflect_coords(const GeneralizedCartanMatrix& gcm, int i, std::vector<long>& c) {
  long s = 0;
  for (int j = 0; j < gcm.size(); ++j) s += gcm.a(i, j) * c[j];
  c[i] -= s;
}

// Sign of a root vector in simple-root coordinates (+1 positive, -1 negative).
int root_sign(const std::vector<long>& c) {
  for (long x : c) {
    if (x > 0) return 1;
    if (x < 0) return -1;
  }
  return 0;
}

// Applies the word to coords, leftmost letter acting last (as a function).
std::vector<long> apply_word_to_root(const GeneralizedCartanMatrix& gcm,
                                     const std::vector<int>& word,
                                     std::vector<long> c) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) reflect_coords(gcm, *it, c);
  return c;
}

// w^{-1}(alpha_i) in simple-root coordinates.
std::vector<long> inverse_on_simple(const GeneralizedCartanMatrix& gcm,
                                    const std::vector<int>& word, int i) {
  std::vector<long> c(gcm.size(), 0);
  c[i] = 1;
  // w^{-1} = s_{i_k} ... s_{i_1}, so the first letter acts first.
  for (int letter : word) reflect_coords(gcm, letter, c);
  return c;
}

}  // namespace

WeylElement WeylElement::simple(GcmPtr gcm, int i) {
  if (i < 0 || i >= gcm->size()) throw IndexOutOfRangeError("simple reflection index");
  return WeylElement(std::move(gcm), {i});
}

WeylElement WeylElement::from_word(GcmPtr gcm, const std::vector<int>& word) {
  const auto& g = *gcm;
  for (int i : word)
    if (i < 0 || i >= g.size()) throw IndexOutOfRangeError("word letter");

  // Canonical form: repeatedly strip the least left descent. Working with an
  // explicit residual word keeps everything exact; each strip shortens the
  // residual by the exchange condition.
  std::vector<int> residual = word;
  std::vector<int> canonical;
  while (!residual.empty()) {
    int chosen = -1;
    for (int i = 0; i < g.size(); ++i) {
      std::vector<long> c = inverse_on_simple(g, residual, i);
      if (root_sign(c) < 0) {
        chosen = i;
        break;
      }
    }
    if (chosen < 0) break;  // residual represents the identity
    canonical.push_back(chosen);
    // residual := s_chosen * residual, shortened via the exchange condition:
    // find the first prefix position t with s_chosen s_{i_1}..s_{i_t} losing
    // length, i.e. (s_{i_1}..s_{i_{t-1}})^{-1} alpha_chosen = alpha_{i_t}'s
    // positive root turning negative at step t.
    std::vector<long> c(g.size(), 0);
    c[chosen] = 1;
    int cut = -1;
    for (size_t t = 0; t < residual.size(); ++t) {
      std::vector<long> next = c;
      reflect_coords(g, residual[t], next);
      if (root_sign(next) < 0) {
        cut = static_cast<int>(t);
        break;
      }
      c = next;
    }
    if (cut < 0) throw Error("internal: exchange condition failed");
    residual.erase(residual.begin() + cut);
  }
  // 'canonical' lists the stripped descents in order: w = s_{c1} s_{c2} ...
  return WeylElement(std::move(gcm), std::move(canonical));
}

WeylElement WeylElement::multiply(const WeylElement& v) const {
  if (!(*gcm_ == *v.gcm_)) throw MixedGCMError("multiply across different GCMs");
  std::vector<int> w = word_;
  w.insert(w.end(), v.word_.begin(), v.word_.end());
  return from_word(gcm_, w);
}

WeylElement WeylElement::inverse() const {
  std::vector<int> w(word_.rbegin(), word_.rend());
  return from_word(gcm_, w);
}

WeightVector WeylElement::act(const WeightVector& lambda) const {
  WeightVector r = lambda;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
    int i = *it;
    Rat c = r.pairing(i);
    if (c != 0) r = r - WeightVector::simple_root(*gcm_, i) * c;
  }
  return r;
}

WeightVector WeylElement::dot_act(const WeightVector& lambda) const {
  WeightVector rho = WeightVector::rho(*gcm_);
  return act(lambda + rho) - rho;
}

std::vector<long> WeylElement::act_on_root(const std::vector<long>& coords) const {
  return apply_word_to_root(*gcm_, word_, coords);
}

bool WeylElement::descends_left(int i) const {
  if (i < 0 || i >= gcm_->size()) throw IndexOutOfRangeError("descent index");
  return root_sign(inverse_on_simple(*gcm_, word_, i)) < 0;
}

std::string WeylElement::str() const {
  if (word_.empty()) return "e";
  std::ostringstream os;
  for (size_t k = 0; k < word_.size(); ++k) os << (k ? "." : "") << "s" << word_[k];
  return os.str();
}

bool bruhat_leq(const WeylElement& u, const WeylElement& w) {
  if (!(*u.gcm() == *w.gcm())) throw MixedGCMError("bruhat_leq across different GCMs");
  // Recursion on l(w): for a left descent i of w,
  //   u <= w  iff  min(u, s_i u) <= s_i w.
  if (u.length() > w.length()) return false;
  if (u.is_identity()) return true;
  int i = w.word().front();
  std::vector<int> rest(w.word().begin() + 1, w.word().end());
  WeylElement w1 = WeylElement::from_word(w.gcm(), rest);
  if (u.descends_left(i)) {
    std::vector<int> su{i};
    su.insert(su.end(), u.word().begin(), u.word().end());
    return bruhat_leq(WeylElement::from_word(u.gcm(), su), w1);
  }
  return bruhat_leq(u, w1);
}

std::vector<WeylElement> enumerate_weyl(const GcmPtr& gcm, int max_length) {
  std::vector<WeylElement> out{WeylElement::identity(gcm)};
  std::set<std::vector<int>> seen{{}};
  size_t layer_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    size_t layer_end = out.size();
    for (size_t k = layer_begin; k < layer_end; ++k) {
      for (int i = 0; i < gcm->size(); ++i) {
        WeylElement next = WeylElement::simple(gcm, i).multiply(out[k]);
        if (next.length() != len) continue;
        if (seen.insert(next.word()).second) out.push_back(next);
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::string StratumLabel::str() const {
  const char* k = kind == Kind::Plain ? "X" : kind == Kind::Mirror ? "sX" : "cell";
  return std::string(k) + "[" + w.str() + "]";
}

namespace {

// Stratifies the Schubert cell X_y for the fixed index i.
std::vector<StratumLabel> stratify_cell(const WeylElement& y, int i) {
  WeylElement sy = WeylElement::simple(y.gcm(), i).multiply(y);
  if (sy.length() < y.length()) {
    // X_y = (X_y cap s_i X_y) sqcup s_i X_{s_i y}.
    return {{StratumLabel::Kind::Cell, y}, {StratumLabel::Kind::Mirror, sy}};
  }
  return {{StratumLabel::Kind::Plain, y}};
}

}  // namespace

std::set<int> StrataPoset::closure(int node_index) const { return closures_[node_index]; }

StrataPoset strata(const GcmPtr& gcm, int i, int max_dim) {
  if (max_dim < 0) throw BadParametersError("max_dim must be >= 0");
  if (i < 0 || i >= gcm->size()) throw IndexOutOfRangeError("strata index");
  StrataPoset poset;
  poset.i = i;

  std::vector<WeylElement> elements = enumerate_weyl(gcm, max_dim);
  std::map<StratumLabel, int> index;
  auto add_label = [&](const StratumLabel& lab) {
    if (!index.count(lab)) {
      index.emplace(lab, static_cast<int>(poset.nodes.size()));
      poset.nodes.push_back(lab);
    }
  };
  for (const auto& w : elements) {
    WeylElement sw = WeylElement::simple(gcm, i).multiply(w);
    if (sw.length() < w.length()) {
      add_label({StratumLabel::Kind::Cell, w});
    } else {
      add_label({StratumLabel::Kind::Plain, w});
      add_label({StratumLabel::Kind::Mirror, w});
    }
  }

  auto swap_label = [&](const StratumLabel& lab) {
    StratumLabel out = lab;
    if (lab.kind == StratumLabel::Kind::Plain) out.kind = StratumLabel::Kind::Mirror;
    else if (lab.kind == StratumLabel::Kind::Mirror) out.kind = StratumLabel::Kind::Plain;
    return out;
  };

  // Closure of the plain stratum X_w: stratify every X_y with y <= w.
  auto closure_plain = [&](const WeylElement& w) {
    std::set<StratumLabel> cl;
    for (const auto& y : elements) {
      if (y.length() > w.length() || !bruhat_leq(y, w)) continue;
      for (const auto& lab : stratify_cell(y, i)) cl.insert(lab);
    }
    return cl;
  };

  std::vector<std::set<StratumLabel>> closures(poset.nodes.size());
  for (size_t k = 0; k < poset.nodes.size(); ++k) {
    const StratumLabel& lab = poset.nodes[k];
    std::set<StratumLabel> cl;
    switch (lab.kind) {
      case StratumLabel::Kind::Plain:
        cl = closure_plain(lab.w);
        break;
      case StratumLabel::Kind::Mirror: {
        for (const auto& x : closure_plain(lab.w)) cl.insert(swap_label(x));
        break;
      }
      case StratumLabel::Kind::Cell: {
        // Dense in X_w and in s_i X_w, so the closure is the union of both
        // closures.
        for (const auto& x : closure_plain(lab.w)) {
          cl.insert(x);
          cl.insert(swap_label(x));
        }
        break;
      }
    }
    closures[k] = std::move(cl);
  }

  poset.closures_.assign(poset.nodes.size(), {});
  for (size_t k = 0; k < poset.nodes.size(); ++k) {
    for (const auto& lab : closures[k]) {
      auto it = index.find(lab);
      if (it != index.end()) poset.closures_[k].insert(it->second);
    }
  }
  for (size_t a = 0; a < poset.nodes.size(); ++a) {
    for (int b : poset.closures_[a]) {
      if (b == static_cast<int>(a)) continue;
      if (poset.nodes[b].dimension() == poset.nodes[a].dimension() - 1)
        poset.arrows.emplace_back(static_cast<int>(a), b);
    }
  }
  std::sort(poset.arrows.begin(), poset.arrows.end());
  return poset;
}

std::string StrataPoset::to_dot() const {
  std::ostringstream os;
  os << "digraph strata {\n  rankdir=RL;\n";
  for (size_t k = 0; k < nodes.size(); ++k) {
    os << "  n" << k << " [label=\"" << nodes[k].str() << "\\ndim "
       << nodes[k].dimension() << "\"];\n";
  }
  for (const auto& [a, b] : arrows) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string StrataPoset::to_json() const {
  std::ostringstream os;
  os << "{\"i\":" << i << ",\"nodes\":[";
  for (size_t k = 0; k < nodes.size(); ++k) {
    const char* kind = nodes[k].kind == StratumLabel::Kind::Plain    ? "plain"
                       : nodes[k].kind == StratumLabel::Kind::Mirror ? "mirror"
                                                                     : "cell";
    os << (k ? "," : "") << "{\"kind\":\"" << kind << "\",\"word\":[";
    const auto& w = nodes[k].w.word();
    for (size_t t = 0; t < w.size(); ++t) os << (t ? "," : "") << w[t];
    os << "],\"dim\":" << nodes[k].dimension() << "}";
  }
  os << "],\"arrows\":[";
  for (size_t k = 0; k < arrows.size(); ++k)
    os << (k ? "," : "") << "[" << arrows[k].first << "," << arrows[k].second << "]";
  os << "]}";
  return os.str();
}

}  // namespace kmr

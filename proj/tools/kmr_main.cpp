// Command-line front end: exact affine Kac-Moody root combinatorics, relaxed
// Verma modules and their characters, and cohomology tables on the
// projective line. Exit codes: 0 success, 1 verification failure, 2 bad
// usage or configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "kmr/characters.hpp"
#include "kmr/errors.hpp"
#include "kmr/induced.hpp"
#include "kmr/loop_algebra.hpp"
#include "kmr/p1.hpp"
#include "kmr/verify.hpp"
#include "kmr/weyl.hpp"

namespace {

using json = nlohmann::json;
using namespace kmr;

struct TypeSpec {
  bool affine = false;
  int n = 2;  // A_{n-1}^(1) has GCM size n; finite A_n has size n
};

// Accepts "A1^1", "A2^1", ... and finite "A2" (which is rejected later as
// not affine, with exit code 2).
TypeSpec parse_type(const std::string& s) {
  TypeSpec t;
  if (s.size() < 2 || (s[0] != 'A' && s[0] != 'a'))
    throw BadParametersError("unsupported type label: " + s);
  size_t caret = s.find('^');
  std::string num = s.substr(1, caret == std::string::npos ? std::string::npos
                                                           : caret - 1);
  int idx = std::stoi(num);
  if (caret != std::string::npos) {
    if (s.substr(caret + 1) != "1")
      throw BadParametersError("only untwisted A-type labels are supported");
    t.affine = true;
    t.n = idx + 1;
  } else {
    t.affine = false;
    t.n = idx;
  }
  return t;
}

GcmPtr gcm_from_spec(const TypeSpec& t) {
  if (t.affine) return affine_type_a_gcm(t.n);
  // finite A_n: tridiagonal; validate_affine rejects it with NotAffine.
  std::vector<std::vector<long>> m(t.n, std::vector<long>(t.n, 0));
  for (int i = 0; i < t.n; ++i) {
    m[i][i] = 2;
    if (i + 1 < t.n) {
      m[i][i + 1] = -1;
      m[i + 1][i] = -1;
    }
  }
  return GeneralizedCartanMatrix::validate_affine(m, "A" + std::to_string(t.n));
}

GcmPtr load_gcm(const std::string& type_label, const std::string& gcm_path) {
  if (!gcm_path.empty()) {
    std::ifstream in(gcm_path);
    if (!in) throw BadParametersError("cannot open " + gcm_path);
    json j;
    in >> j;
    std::vector<std::vector<long>> m = j.at("matrix").get<std::vector<std::vector<long>>>();
    return GeneralizedCartanMatrix::validate_affine(m);
  }
  return gcm_from_spec(parse_type(type_label));
}

WeightVector weight_from_args(const GcmPtr& gcm, const std::vector<std::string>& coords,
                              const std::string& rho_multiple) {
  if (!coords.empty()) {
    if (static_cast<int>(coords.size()) != gcm->size() &&
        static_cast<int>(coords.size()) != gcm->size() + 1)
      throw BadParametersError("lambda needs one coordinate per node (+ optional delta)");
    std::vector<Rat> fund;
    for (int i = 0; i < gcm->size(); ++i) fund.push_back(rat_parse(coords[i]));
    Rat d = static_cast<int>(coords.size()) == gcm->size() + 1
                ? rat_parse(coords.back())
                : Rat(0);
    return WeightVector(std::move(fund), d);
  }
  return WeightVector::rho(*gcm) * rat_parse(rho_multiple);
}

int default_depth() {
  if (const char* env = std::getenv("KMR_DEPTH")) return std::atoi(env);
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine Kac-Moody relaxed Verma toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string type_label = "A1^1";
  std::string gcm_path;
  std::string format = "text";
  app.add_option("--type", type_label, "Cartan type label, e.g. A1^1")->capture_default_str();
  app.add_option("--gcm", gcm_path, "JSON file {\"matrix\": [[...]]}");
  app.add_option("--format", format, "text|json|tsv|dot")->capture_default_str();

  // roots
  auto* roots_cmd = app.add_subcommand("roots", "positive roots up to a height");
  long height = 3;
  roots_cmd->add_option("--height", height, "height bound")->capture_default_str();

  // weyl
  auto* weyl_cmd = app.add_subcommand("weyl", "Weyl group element queries");
  std::vector<int> word_u, word_w;
  weyl_cmd->add_option("--word", word_u, "word in simple indices");
  weyl_cmd->add_option("--other", word_w, "second word (for bruhat/multiply)");
  std::string weyl_op = "canonical";
  weyl_cmd->add_option("--op", weyl_op, "canonical|multiply|bruhat|length")
      ->capture_default_str();

  // strata
  auto* strata_cmd = app.add_subcommand("strata", "refined orbit stratification poset");
  int strata_i = 1, max_dim = 4;
  strata_cmd->add_option("--index", strata_i, "simple index i")->capture_default_str();
  strata_cmd->add_option("--max-dim", max_dim, "dimension bound")->capture_default_str();

  // module
  auto* module_cmd = app.add_subcommand("module", "induced module characters");
  std::vector<std::string> lambda_coords;
  std::string rho_mult = "-2";
  std::string alpha_str = "1/2";
  std::string family_str;
  int mod_i = 1;
  int depth = default_depth();
  int window = 6;
  bool verify_loop_relations = false;
  int probe_gprime = 0;
  bool as_verma = false;
  module_cmd->add_option("--lambda", lambda_coords, "lambda(h_i) coordinates (+ delta)");
  module_cmd->add_option("--rho-multiple", rho_mult, "lambda as multiple of rho")
      ->capture_default_str();
  module_cmd->add_option("--alpha", alpha_str, "monodromy parameter")->capture_default_str();
  module_cmd->add_option("--family", family_str, "generic|eq|lt|gt (integral classes)");
  module_cmd->add_option("--index", mod_i, "simple index i")->capture_default_str();
  module_cmd->add_option("--depth", depth, "delta depth")->capture_default_str();
  module_cmd->add_option("--window", window, "alpha_i window half-width")
      ->capture_default_str();
  module_cmd->add_flag("--verify-loop-relations", verify_loop_relations,
                       "check the loop generator relations on the generator");
  module_cmd->add_option("--probe-gprime", probe_gprime,
                         "report dim span{v, e_i v, ..., e_i^K v}");
  module_cmd->add_flag("--verma", as_verma, "build the Verma module instead");

  // p1
  auto* p1_cmd = app.add_subcommand("p1", "cohomology tables on the projective line");
  int nt_lo = -2, nt_hi = 4;
  std::string p1_alpha = "0";
  p1_cmd->add_option("--twist-lo", nt_lo, "lowest n_twist")->capture_default_str();
  p1_cmd->add_option("--twist-hi", nt_hi, "highest n_twist")->capture_default_str();
  p1_cmd->add_option("--alpha", p1_alpha, "monodromy parameter")->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  std::string suite = "all";
  int max_length = 6;
  int vdepth = 12;
  verify_cmd->add_option("--suite", suite,
                         "cartan|weyl|algebra|sl2|induced|characters|p1|all")
      ->capture_default_str();
  verify_cmd->add_option("--max-length", max_length, "Weyl enumeration bound")
      ->capture_default_str();
  verify_cmd->add_option("--depth", vdepth, "algebra depth")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (roots_cmd->parsed()) {
      GcmPtr gcm = load_gcm(type_label, gcm_path);
      ImaginaryMultiplicityFn mult_fn;
      // Imaginary multiplicities come from the concrete loop realization.
      std::string label = gcm->type_label();
      std::shared_ptr<LoopAlgebra> alg;
      if (*gcm == *affine_type_a_gcm(gcm->size()))
        alg = std::make_shared<LoopAlgebra>(gcm->size());
      if (alg) mult_fn = alg->imaginary_mult_fn();
      std::vector<RootDatum> roots;
      try {
        roots = positive_roots_up_to_height(*gcm, height, mult_fn);
      } catch (const MultiplicityUnavailableError& e) {
        std::cerr << e.what() << "\n";
        return 1;
      }
      if (format == "json") {
        json arr = json::array();
        for (const auto& r : roots) {
          json jr;
          jr["coords"] = r.simple_coords;
          jr["height"] = r.height;
          jr["mult"] = r.multiplicity;
          jr["real"] = r.is_real;
          arr.push_back(jr);
        }
        std::cout << arr.dump(2) << "\n";
      } else {
        for (const auto& r : roots) {
          std::cout << "ht " << r.height << "  coords (";
          for (size_t t = 0; t < r.simple_coords.size(); ++t)
            std::cout << (t ? "," : "") << r.simple_coords[t];
          std::cout << ")  mult " << r.multiplicity << (r.is_real ? "  real" : "  imaginary")
                    << "\n";
        }
      }
      return 0;
    }

    if (weyl_cmd->parsed()) {
      GcmPtr gcm = load_gcm(type_label, gcm_path);
      WeylElement u = WeylElement::from_word(gcm, word_u);
      if (weyl_op == "canonical") {
        std::cout << u.str() << "  length " << u.length() << "\n";
      } else if (weyl_op == "length") {
        std::cout << u.length() << "\n";
      } else if (weyl_op == "multiply") {
        WeylElement w = WeylElement::from_word(gcm, word_w);
        std::cout << u.multiply(w).str() << "\n";
      } else if (weyl_op == "bruhat") {
        WeylElement w = WeylElement::from_word(gcm, word_w);
        std::cout << (bruhat_leq(u, w) ? "true" : "false") << "\n";
      } else {
        throw BadParametersError("unknown weyl op: " + weyl_op);
      }
      return 0;
    }

    if (strata_cmd->parsed()) {
      GcmPtr gcm = load_gcm(type_label, gcm_path);
      StrataPoset sp = strata(gcm, strata_i, max_dim);
      if (format == "dot")
        std::cout << sp.to_dot();
      else if (format == "json")
        std::cout << sp.to_json() << "\n";
      else {
        std::map<int, int> by_dim;
        for (const auto& nnode : sp.nodes) by_dim[nnode.dimension()] += 1;
        std::cout << "nodes by dimension:";
        for (const auto& [d, c] : by_dim) std::cout << " " << c;
        std::cout << "\narrows: " << sp.arrows.size() << "\n";
        for (const auto& [a, b] : sp.arrows)
          std::cout << "  " << sp.nodes[a].str() << " -> " << sp.nodes[b].str() << "\n";
      }
      return 0;
    }

    if (module_cmd->parsed()) {
      GcmPtr gcm = load_gcm(type_label, gcm_path);
      if (!(*gcm == *affine_type_a_gcm(gcm->size())))
        throw BadParametersError("modules need the concrete type A realization");
      auto alg = std::make_shared<LoopAlgebra>(gcm->size());
      WeightVector lambda = weight_from_args(gcm, lambda_coords, rho_mult);
      int i = mod_i;

      InducedTruncation tr;
      tr.delta_depth = depth;
      tr.x_lo = -window;
      tr.x_hi = window;
      tr.residual_bound = gcm->size() > 2 ? 2 * depth : 0;
      int reach = window + depth + static_cast<int>(tr.residual_bound) + 2;
      tr.top_lo = -reach;
      tr.top_hi = reach;

      std::shared_ptr<InducedModule> mod;
      Rat alpha = 0;
      if (as_verma) {
        mod = InducedModule::verma(alg, lambda, tr);
      } else {
        Sl2Family family = Sl2Family::Generic;
        if (!family_str.empty()) {
          auto f = sl2_family_from_name(family_str);
          if (!f) throw BadParametersError("unknown family: " + family_str);
          family = *f;
          if (family != Sl2Family::Generic && module_cmd->count("--alpha") > 0)
            throw BadParametersError("--alpha and --family are mutually exclusive");
        }
        if (family == Sl2Family::Generic) alpha = rat_parse(alpha_str);
        DenseSl2Module top = DenseSl2Module::construct(
            lambda.pairing(i), family, alpha, tr.top_lo - 1, tr.top_hi + 1);
        mod = InducedModule::relaxed(alg, i, lambda, top, tr);
      }

      CharRegion region;
      region.base = mod->generator_weight();
      region.i = as_verma ? 1 : i;
      region.x_min = -window;
      region.x_max = window;
      region.delta_min = -depth;
      region.residual_bound = tr.residual_bound;
      FormalCharacter chr = mod->character(region);
      if (format == "json") {
        std::cout << "{\"lambda\":\"" << lambda.str() << "\",\"kind\":\""
                  << (as_verma ? "verma" : "relaxed") << "\"";
        if (!as_verma)
          std::cout << ",\"family\":\""
                    << (family_str.empty() ? "generic" : family_str)
                    << "\",\"alpha\":\"" << rat_str(alpha) << "\"";
        std::cout << ",\"depth\":" << depth << ",\"character\":" << chr.to_json()
                  << "}\n";
      } else {
        std::cout << chr.to_tsv();
      }

      int exit_code = 0;
      if (verify_loop_relations && !as_verma) {
        ModuleVector v = mod->top_vector(0);
        bool ok = true;
        // (g tensor t C[t]) v = 0 within the window
        for (int k = 1; k <= depth; ++k) {
          for (const auto& g : {LoopBasisElement::E(1, 2, k), LoopBasisElement::H(1, k),
                                LoopBasisElement::E(2, 1, k)}) {
            if (!mod->act(AlgebraElement(g, 1, depth + 1), v).is_zero()) ok = false;
          }
        }
        AlgebraElement e1 = alg->e(i, depth + 1), f1 = alg->f(i, depth + 1);
        ModuleVector fe = mod->act(f1, mod->act(e1, v));
        Rat mu = mod->top().a_at(0) * mod->top().b_at(1);
        if (!(fe - v * mu).is_zero()) ok = false;
        Rat j = lambda.pairing(i) + 2 * alpha;
        Rat kk = lambda.pairing_central(*gcm);
        Rat dd = lambda.delta_coord();
        std::cout << (ok ? "PASS" : "FAIL")
                  << ": (sl2 (x) tC[t])v=0, (f e)v = mu v with mu=" << rat_str(mu)
                  << ", j=" << rat_str(j) << ", k=" << rat_str(kk)
                  << ", delta=" << rat_str(dd) << "\n";
        if (!ok) exit_code = 1;
      }
      if (probe_gprime > 0 && !as_verma) {
        long dim = mod->gprime_finiteness_probe(mod->top_vector(0), probe_gprime);
        std::cout << "gprime probe: dim span{v, ..., e_i^" << probe_gprime
                  << " v} = " << dim << "\n";
      }
      return exit_code;
    }

    if (p1_cmd->parsed()) {
      Rat alpha = rat_parse(p1_alpha);
      bool ok = true;
      if (format != "json") std::cout << "n_twist\tfamily\tdimH1\tH1==0\n";
      for (int nt = nt_lo; nt <= nt_hi; ++nt) {
        auto [lo, hi] = default_p1_window(nt);
        auto star = cohomology(
            TwistedP1Module::c_times(nt, alpha, TwistedP1Module::Extension::Star), lo,
            hi);
        auto mfam = cohomology(
            TwistedP1Module::a1_cell(nt, TwistedP1Module::Extension::Shriek), lo, hi);
        auto bang = cohomology(
            TwistedP1Module::c_times(nt, alpha, TwistedP1Module::Extension::Shriek),
            lo, hi);
        if (format == "json") {
          std::cout << "{\"family\":\"R*\",\"table\":" << star.to_json() << "}\n";
          std::cout << "{\"family\":\"M\",\"table\":" << mfam.to_json() << "}\n";
          std::cout << "{\"family\":\"R!\",\"table\":" << bang.to_json() << "}\n";
        } else {
          std::cout << nt << "\tR*\t" << star.h1_total() << "\t"
                    << (star.h1_total() == 0 ? "yes" : "NO") << "\n";
          std::cout << nt << "\tM\t" << mfam.h1_total() << "\t"
                    << (mfam.h1_total() == 0 ? "yes" : "no") << "\n";
          std::cout << nt << "\tR!\t" << bang.h1_total() << "\t"
                    << (bang.h1_total() == 0 ? "yes" : "no") << "\n";
        }
        if (star.h1_total() != 0) ok = false;
        if ((mfam.h1_total() != 0) != (nt <= 0)) ok = false;
        if (nt >= 2 && bang.h1_total() != 0) ok = false;
        if (nt >= 2) {
          // char(R_!) = char(R_*) on the window
          for (int s = lo; s <= hi; ++s) {
            auto get = [&](const std::map<int, int>& mm) {
              auto it = mm.find(s);
              return it == mm.end() ? 0 : it->second;
            };
            if (get(bang.h0_dims) != get(star.h0_dims)) ok = false;
          }
        }
      }
      return ok ? 0 : 1;
    }

    if (verify_cmd->parsed()) {
      VerifyParams vp;
      vp.max_length = max_length;
      vp.depth = vdepth;
      auto results = run_suite(suite, vp);
      bool ok = true;
      for (const auto& r : results) {
        std::cout << (r.ok ? "PASS " : "FAIL ") << r.suite;
        if (!r.ok) std::cout << ": " << r.detail;
        std::cout << "\n";
        ok = ok && r.ok;
      }
      return ok ? 0 : 1;
    }
  } catch (const NotAffineError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const NotGCMError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const BadParametersError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const IndexOutOfRangeError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}

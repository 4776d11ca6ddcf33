// qsets: command-line front end.
//
// Exit codes: 0 success, 1 mathematical failure (a law or precondition was
// violated), 2 malformed input or usage.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>

#include "qsets/coloring.hpp"
#include "qsets/error.hpp"
#include "qsets/json_io.hpp"
#include "qsets/laws.hpp"
#include "qsets/opalg.hpp"
#include "qsets/pred.hpp"
#include "qsets/qfun.hpp"

using namespace qsets;

namespace {

constexpr int kMathFailure = 1;
constexpr int kInputError = 2;

struct Options {
  std::string config;
  std::string out;
  double rank_cut = 0.0;  // 0 keeps the configured value
  double eq_tol = 0.0;
};

// Defaults, then the config file, then flags.
struct Settings {
  Tolerance tol;
  LawConfig laws;
};

Settings load_settings(const Options& opt) {
  Settings s;
  std::string path = opt.config;
  if (path.empty()) {
    if (const char* env = std::getenv("QSETS_CONFIG")) path = env;
  }
  if (!path.empty()) {
    const Json j = read_json_file(path);
    if (!j.is_object()) throw SchemaError(path, "config must be an object");
    for (const auto& [key, v] : j.items()) {
      static const std::set<std::string> known{"rank_cut", "eq_tol",    "seed",
                                               "trials",   "max_atoms", "max_dim"};
      if (!known.count(key)) throw SchemaError(path + ":$." + key, "unknown config key");
    }
    auto num = [&](const char* key, auto& dst) {
      if (!j.contains(key)) return;
      if (!j[key].is_number()) throw SchemaError(path + ":$." + key, "expected a number");
      dst = j[key].get<std::decay_t<decltype(dst)>>();
    };
    num("rank_cut", s.tol.rank_cut);
    num("eq_tol", s.tol.eq_tol);
    num("seed", s.laws.seed);
    num("trials", s.laws.trials);
    num("max_atoms", s.laws.max_atoms);
    num("max_dim", s.laws.max_dim);
  }
  if (opt.rank_cut != 0.0) s.tol.rank_cut = opt.rank_cut;
  if (opt.eq_tol != 0.0) s.tol.eq_tol = opt.eq_tol;
  try {
    s.tol.validate();
  } catch (const PreconditionError& e) {
    throw CLI::ValidationError(e.what());
  }
  s.laws.tol = s.tol;
  return s;
}

void emit(const Json& j, const Options& opt) {
  const std::string text = j.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw SchemaError(opt.out, "cannot write output file");
  f << text;
}

// Decodes a file with paths reported as "file:$.field".
template <class Decode>
auto read_as(const std::string& file, Decode decode) {
  return decode(read_json_file(file), file + ":$");
}

Relation read_relation(const std::string& file) { return read_as(file, relation_from_json); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum sets: relations, functions, predicates and colorings"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config, "JSON config file (default: $QSETS_CONFIG)");
  app.add_option("--out", opt.out, "Write JSON here instead of stdout");
  app.add_option("--rank-cut", opt.rank_cut, "Relative singular value cutoff")
      ->check(CLI::PositiveNumber);
  app.add_option("--eq-tol", opt.eq_tol, "Equality tolerance")->check(CLI::PositiveNumber);

  // laws
  auto* laws = app.add_subcommand("laws", "Run the law suites on random instances");
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, max_atoms, max_dim;
  std::string fault;
  std::vector<std::string> groups;
  laws->add_option("--seed", seed, "Master seed");
  laws->add_option("--trials", trials, "Instances per law")->check(CLI::PositiveNumber);
  laws->add_option("--max-atoms", max_atoms, "Atoms per random set")->check(CLI::PositiveNumber);
  laws->add_option("--max-dim", max_dim, "Dimension per random atom")->check(CLI::PositiveNumber);
  laws->add_option("--inject-fault", fault, "Negative control")->check(CLI::IsMember({"dagger"}));
  laws->add_option("--group", groups, "Restrict to groups")
      ->check(CLI::IsMember({"qrel", "qfun", "opalg", "pred"}));

  // check
  auto* check = app.add_subcommand("check", "Test the function axioms of a relation");
  std::string rel_file;
  check->add_option("relation", rel_file, "Relation JSON")->required()->check(CLI::ExistingFile);

  // compose
  auto* comp = app.add_subcommand("compose", "S o R for R then S");
  std::string first_file, second_file;
  comp->add_option("first", first_file, "R : X -> Y")->required()->check(CLI::ExistingFile);
  comp->add_option("second", second_file, "S : Y -> Z")->required()->check(CLI::ExistingFile);

  // star
  auto* star = app.add_subcommand("star", "F* on an operator, or its generator table");
  std::string fun_file, op_file;
  star->add_option("function", fun_file, "Partial function JSON")->required()->check(CLI::ExistingFile);
  star->add_option("operator", op_file, "BlockOperator JSON on the target")->check(CLI::ExistingFile);

  // fission
  auto* fis = app.add_subcommand("fission", "Function to fission, or back with --reverse");
  std::string fis_file;
  bool reverse = false;
  fis->add_option("input", fis_file, "Function or fission JSON")->required()->check(CLI::ExistingFile);
  fis->add_flag("--reverse", reverse, "Read a fission and emit its function");

  // pred-image
  auto* img = app.add_subcommand("pred-image", "Direct or inverse image of a predicate");
  std::string pred_file;
  bool inverse = false;
  img->add_option("relation", rel_file, "Relation JSON")->required()->check(CLI::ExistingFile);
  img->add_option("predicate", pred_file, "Predicate JSON")->required()->check(CLI::ExistingFile);
  img->add_flag("--inverse", inverse, "Pull back along the relation");

  // corange
  auto* cor = app.add_subcommand("corange", "Where a partial function is defined");
  bool factor = false;
  cor->add_option("function", fun_file, "Partial function JSON")->required()->check(CLI::ExistingFile);
  cor->add_flag("--factor", factor, "Also emit the factorization through the corange");

  // spectral
  auto* spec = app.add_subcommand("spectral", "Spectral function of a self-adjoint element");
  spec->add_option("operator", op_file, "BlockOperator JSON")->required()->check(CLI::ExistingFile);

  // coloring
  auto* col = app.add_subcommand("coloring", "Quantum graph colorings");
  col->require_subcommand(1);
  auto* cver = col->add_subcommand("verify", "Verify a projection family");
  std::string graph_file, fam_file;
  cver->add_option("graph", graph_file, "Graph JSON")->required()->check(CLI::ExistingFile);
  cver->add_option("family", fam_file, "Family JSON")->required()->check(CLI::ExistingFile);
  auto* csea = col->add_subcommand("search", "Search for a projection family");
  int colors = 0;
  Index dim = 1;
  std::uint64_t search_seed = 0;
  SearchBudget budget;
  csea->add_option("graph", graph_file, "Graph JSON")->required()->check(CLI::ExistingFile);
  csea->add_option("--colors", colors, "Number of colors")->required()->check(CLI::PositiveNumber);
  csea->add_option("--dim", dim, "Index atom dimension")->check(CLI::PositiveNumber);
  csea->add_option("--seed", search_seed, "Seed");
  csea->add_option("--restarts", budget.restarts, "Random restarts")->check(CLI::PositiveNumber);
  csea->add_option("--sweeps", budget.sweeps, "Sweeps per restart")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    const Settings s = load_settings(opt);
    const Tolerance& tol = s.tol;

    if (*laws) {
      LawConfig cfg = s.laws;
      if (seed) cfg.seed = *seed;
      if (trials) cfg.trials = *trials;
      if (max_atoms) cfg.max_atoms = *max_atoms;
      if (max_dim) cfg.max_dim = *max_dim;
      cfg.inject_fault = fault;
      cfg.groups.insert(groups.begin(), groups.end());
      try {
        cfg.validate();
      } catch (const PreconditionError& e) {
        throw CLI::ValidationError(e.what());
      }
      const LawReport rep = run_laws(cfg);
      emit(to_json(rep, cfg), opt);
      return rep.pass() ? 0 : kMathFailure;
    }
    if (*check) {
      emit(to_json(check_axioms(read_relation(rel_file), tol)), opt);
      return 0;
    }
    if (*comp) {
      emit(to_json(compose(read_relation(second_file), read_relation(first_file), tol)), opt);
      return 0;
    }
    if (*star) {
      const Relation f = read_relation(fun_file);
      if (op_file.empty()) {
        emit(to_json(homomorphism_of(f, tol)), opt);
      } else {
        emit(to_json(star_map(f, read_as(op_file, block_operator_from_json), tol)), opt);
      }
      return 0;
    }
    if (*fis) {
      if (reverse) {
        emit(to_json(function_from_fission(read_as(fis_file, fission_from_json), tol)), opt);
      } else {
        emit(to_json(fission_from_function(read_relation(fis_file), tol)), opt);
      }
      return 0;
    }
    if (*img) {
      const Relation r = read_relation(rel_file);
      const Predicate p = read_as(pred_file, predicate_from_json);
      emit(to_json(inverse ? inverse_image(r, p, tol) : direct_image(r, p, tol)), opt);
      return 0;
    }
    if (*cor) {
      const Relation g = read_relation(fun_file);
      if (!factor) {
        emit(to_json(corange(g, tol)), opt);
        return 0;
      }
      const CorangeFactorization cf = corange_factor(g, tol);
      emit({{"corange", to_json(cf.corange)},
            {"restricted", to_json(cf.restricted)},
            {"k", to_json(cf.k)},
            {"factor", to_json(cf.factor)}},
           opt);
      return 0;
    }
    if (*spec) {
      emit(to_json(spectral_function(read_as(op_file, block_operator_from_json), tol)), opt);
      return 0;
    }
    if (*cver) {
      const Graph g = read_as(graph_file, graph_from_json);
      const ColoringFamily fam = read_as(fam_file, family_from_json);
      const ColoringReport rep = verify(g, fam, tol);
      emit(to_json(rep), opt);
      return rep.pass && rep.predicate_pass ? 0 : kMathFailure;
    }
    if (*csea) {
      const Graph g = read_as(graph_file, graph_from_json);
      const SearchResult res = search(g, colors, dim, search_seed, budget, tol);
      Json out{{"found", res.family.has_value()},
               {"restarts_used", res.restarts_used},
               {"best_violation", res.best_violation}};
      if (res.family) {
        out["family"] = to_json(*res.family);
      } else {
        out["note"] = "no certificate within budget; this does not show that none exists";
      }
      emit(out, opt);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kInputError;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return 0;
}

#include "qsets/laws.hpp"

#include <algorithm>
#include <limits>

#include "qsets/error.hpp"
#include "qsets/opalg.hpp"
#include "qsets/pred.hpp"
#include "qsets/qfun.hpp"

namespace qsets {

namespace {

// Blocks transposed but not conjugated: the negative control.
Relation transpose_only(const Relation& r) {
  Relation out(r.target(), r.source());
  for (const auto& [key, space] : r.blocks()) {
    out.set_block(key.second, key.first, subspace_transpose_dual(space));
  }
  return out;
}

double rel_leq_residual(const Relation& r, const Relation& s) {
  double worst = 0.0;
  for (const auto& [key, space] : r.blocks()) {
    worst = std::max(worst, leq_residual(space, s.block(key.first, key.second)));
  }
  return worst;
}

QuantumSet rand_set(Rng& rng, const LawConfig& c, const char* prefix) {
  return random_qset(rng, c.max_atoms, c.max_dim, prefix);
}

Relation rand_function(Rng& rng, const LawConfig& c, const QuantumSet& y) {
  return random_function_into(rng, y, c.max_atoms, c.max_dim);
}

std::function<Json()> relations(std::vector<std::pair<std::string, Relation>> rs) {
  return [rs = std::move(rs)] {
    Json j = Json::object();
    for (const auto& [name, r] : rs) j[name] = to_json(r);
    return j;
  };
}

LawOutcome associativity(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto x = rand_set(rng, c, "x"), y = rand_set(rng, c, "y");
  const auto z = rand_set(rng, c, "z"), w = rand_set(rng, c, "w");
  const auto r = random_relation(rng, x, y), s = random_relation(rng, y, z),
             t = random_relation(rng, z, w);
  const double res = rel_distance(compose(compose(t, s, c.tol), r, c.tol),
                                  compose(t, compose(s, r, c.tol), c.tol));
  return {res, relations({{"R", r}, {"S", s}, {"T", t}})};
}

LawOutcome identity_law(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto x = rand_set(rng, c, "x"), y = rand_set(rng, c, "y");
  const auto r = random_relation(rng, x, y);
  const double res = std::max(rel_distance(compose(identity(y), r, c.tol), r),
                              rel_distance(compose(r, identity(x), c.tol), r));
  return {res, relations({{"R", r}})};
}

LawOutcome dagger_contravariant(Rng& rng, const LawConfig& c, const LawOps& ops) {
  const auto x = rand_set(rng, c, "x"), y = rand_set(rng, c, "y"), z = rand_set(rng, c, "z");
  const auto r = random_relation(rng, x, y), s = random_relation(rng, y, z);
  const double res =
      rel_distance(ops.dagger(compose(s, r, c.tol)), compose(ops.dagger(r), ops.dagger(s), c.tol));
  return {res, relations({{"R", r}, {"S", s}})};
}

LawOutcome dagger_involutive(Rng& rng, const LawConfig& c, const LawOps& ops) {
  const auto x = rand_set(rng, c, "x"), y = rand_set(rng, c, "y");
  const auto r = random_relation(rng, x, y);
  return {rel_distance(ops.dagger(ops.dagger(r)), r), relations({{"R", r}})};
}

LawOutcome interchange(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto x1 = rand_set(rng, c, "a"), y1 = rand_set(rng, c, "b"), z1 = rand_set(rng, c, "c");
  const auto x2 = rand_set(rng, c, "d"), y2 = rand_set(rng, c, "e"), z2 = rand_set(rng, c, "f");
  const auto r1 = random_relation(rng, x1, y1), s1 = random_relation(rng, y1, z1);
  const auto r2 = random_relation(rng, x2, y2), s2 = random_relation(rng, y2, z2);
  const double res = rel_distance(times(compose(s1, r1, c.tol), compose(s2, r2, c.tol)),
                                  compose(times(s1, s2), times(r1, r2), c.tol));
  return {res, relations({{"R1", r1}, {"S1", s1}, {"R2", r2}, {"S2", s2}})};
}

LawOutcome snake(Rng& rng, const LawConfig& c, const LawOps& ops) {
  const auto x = rand_set(rng, c, "x");
  const auto xd = dual_set(x);
  const auto& dg = ops.dagger;
  // X ~ 1 x X -> (X x X*) x X -> X x (X* x X) -> X x 1 ~ X
  const Relation first = compose(
      right_unitor(x),
      compose(times(identity(x), counit(x)),
              compose(associator(x, xd, x),
                      compose(times(unit(x), identity(x)), dg(left_unitor(x)), c.tol), c.tol),
              c.tol),
      c.tol);
  // X* ~ X* x 1 -> X* x (X x X*) -> (X* x X) x X* -> 1 x X* ~ X*
  const Relation second = compose(
      left_unitor(xd),
      compose(times(counit(x), identity(xd)),
              compose(dg(associator(xd, x, xd)),
                      compose(times(identity(xd), unit(x)), dg(right_unitor(xd)), c.tol), c.tol),
              c.tol),
      c.tol);
  const double res = std::max(rel_distance(first, identity(x)), rel_distance(second, identity(xd)));
  return {res, [x] { return Json{{"X", to_json(x)}}; }};
}

LawOutcome symmetry(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto x = rand_set(rng, c, "x"), y = rand_set(rng, c, "y");
  const double res = rel_distance(compose(braiding(y, x), braiding(x, y), c.tol),
                                  identity(cartesian_product(x, y)));
  return {res, [x, y] { return Json{{"X", to_json(x)}, {"Y", to_json(y)}}; }};
}

LawOutcome function_axioms(Rng& rng, const LawConfig& c, const LawOps& ops) {
  const auto y = rand_set(rng, c, "y");
  const auto f = rand_function(rng, c, y);
  const auto fd = ops.dagger(f);
  const double res = std::max(rel_leq_residual(compose(f, fd, c.tol), identity(y)),
                              rel_leq_residual(identity(f.source()), compose(fd, f, c.tol)));
  return {res, relations({{"F", f}})};
}

LawOutcome function_composition(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto z = rand_set(rng, c, "z");
  const auto g = rand_function(rng, c, z);
  const auto f = rand_function(rng, c, g.source());
  const auto w = check_axioms(compose(g, f, c.tol), c.tol);
  return {std::max(w.coinjective_residual, w.cosurjective_residual),
          relations({{"F", f}, {"G", g}})};
}

LawOutcome fission_roundtrip(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto y = rand_set(rng, c, "y");
  const auto f = random_function_into(rng, y, c.max_atoms, c.max_dim,
                                      {std::uniform_int_distribution<int>(0, 1)(rng) == 1});
  const double res = rel_distance(function_from_fission(fission_from_function(f, c.tol), c.tol), f);
  return {res, relations({{"F", f}})};
}

LawOutcome star_functoriality(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto z = rand_set(rng, c, "z");
  const auto g = rand_function(rng, c, z);
  const auto f = rand_function(rng, c, g.source());
  const auto gf = compose(g, f, c.tol);
  double res = 0.0;
  for (const auto& gen : generators(z)) {
    const auto b = BlockOperator::matrix_unit(z, gen.label, gen.i, gen.j);
    res = std::max(res, distance(star_map(gf, b, c.tol), star_map(f, star_map(g, b, c.tol), c.tol)));
  }
  return {res, relations({{"F", f}, {"G", g}})};
}

LawOutcome star_homomorphism(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto y = rand_set(rng, c, "y");
  const auto f = random_function_into(rng, y, c.max_atoms, c.max_dim,
                                      {std::uniform_int_distribution<int>(0, 1)(rng) == 1});
  return {star_is_homomorphism(f).max(), relations({{"F", f}})};
}

LawOutcome cyclic_identity(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto y = rand_set(rng, c, "y");
  const auto f = random_function_into(rng, y, c.max_atoms, c.max_dim,
                                      {std::uniform_int_distribution<int>(0, 1)(rng) == 1});
  const auto back =
      function_from_homomorphism(homomorphism_of(fission_from_function(f, c.tol)), c.tol);
  return {rel_distance(back, f), relations({{"F", f}})};
}

LawOutcome inverse_image_ortholattice(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto y = rand_set(rng, c, "y");
  const auto f = rand_function(rng, c, y);
  const auto a = random_predicate(rng, y), b = random_predicate(rng, y);
  auto pull = [&](const Predicate& p) { return inverse_image(f, p, c.tol); };
  const double res = std::max(
      {pred_distance(pull(p_meet(a, b, c.tol)), p_meet(pull(a), pull(b), c.tol)),
       pred_distance(pull(p_join(a, b, c.tol)), p_join(pull(a), pull(b), c.tol)),
       pred_distance(pull(p_neg(a, c.tol)), p_neg(pull(a), c.tol))});
  return {res, [f, a, b] {
            return Json{{"F", to_json(f)}, {"P", to_json(a)}, {"Q", to_json(b)}};
          }};
}

LawOutcome converter_roundtrip(Rng& rng, const LawConfig& c, const LawOps&) {
  const auto x = rand_set(rng, c, "x");
  const auto p = random_predicate(rng, x);
  const double res = std::max({pred_distance(rel1_to_pred(pred_to_rel1(p, c.tol), c.tol), p),
                               pred_distance(proj_to_pred(pred_to_proj(p), c.tol), p),
                               pred_distance(funB_to_pred(pred_to_funB(p, c.tol), c.tol), p)});
  return {res, [p] { return Json{{"P", to_json(p)}}; }};
}

}  // namespace

void LawConfig::validate() const {
  if (trials < 1) throw PreconditionError("laws: trials must be at least 1");
  if (max_atoms < 1 || max_dim < 1) {
    throw PreconditionError("laws: max-atoms and max-dim must be at least 1");
  }
  tol.validate();
  law_ops(inject_fault);
  for (const auto& g : groups) {
    if (g != "qrel" && g != "qfun" && g != "opalg" && g != "pred") {
      throw PreconditionError("laws: unknown group " + g);
    }
  }
}

LawOps law_ops(const std::string& fault) {
  if (fault.empty()) return {[](const Relation& r) { return dagger(r); }};
  if (fault == "dagger") return {transpose_only};
  throw PreconditionError("laws: unknown fault " + fault);
}

const std::vector<Law>& law_suite() {
  static const std::vector<Law> suite{
      {"qrel", "associativity", associativity},
      {"qrel", "identity", identity_law},
      {"qrel", "dagger_contravariant", dagger_contravariant},
      {"qrel", "dagger_involutive", dagger_involutive},
      {"qrel", "interchange", interchange},
      {"qrel", "snake", snake},
      {"qrel", "symmetry", symmetry},
      {"qfun", "function_axioms", function_axioms},
      {"qfun", "function_composition", function_composition},
      {"qfun", "fission_roundtrip", fission_roundtrip},
      {"opalg", "star_functoriality", star_functoriality},
      {"opalg", "star_homomorphism", star_homomorphism},
      {"opalg", "cyclic_identity", cyclic_identity},
      {"pred", "inverse_image_ortholattice", inverse_image_ortholattice},
      {"pred", "converter_roundtrip", converter_roundtrip},
  };
  return suite;
}

bool LawReport::pass() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& r) { return r.pass; });
}

LawReport run_laws(const LawConfig& cfg) {
  cfg.validate();
  const LawOps ops = law_ops(cfg.inject_fault);
  const auto& suite = law_suite();
  LawReport report;
  for (std::size_t li = 0; li < suite.size(); ++li) {
    const Law& law = suite[li];
    if (!cfg.groups.empty() && !cfg.groups.count(law.group)) continue;
    LawResult res{law.group, law.name};
    for (int k = 0; k < cfg.trials; ++k) {
      const std::uint64_t stream = std::uint64_t(k) * suite.size() + li;
      Rng rng = trial_rng(cfg.seed, stream);
      LawOutcome out;
      try {
        out = law.run(rng, cfg, ops);
      } catch (const PreconditionError& e) {
        // A law whose own construction fails counts as a violation.
        out.residual = std::numeric_limits<double>::infinity();
        const std::string msg = e.what();
        out.inputs = [msg] { return Json{{"error", msg}}; };
      }
      ++res.instances;
      res.max_residual = std::max(res.max_residual, out.residual);
      if (!(out.residual < cfg.tol.eq_tol)) {
        if (res.pass && !report.counterexample) {
          report.counterexample = Json{{"law", law.name},
                                       {"group", law.group},
                                       {"trial", k},
                                       {"stream", stream},
                                       {"residual", out.residual},
                                       {"inputs", out.inputs()}};
        }
        res.pass = false;
      }
    }
    report.laws.push_back(res);
  }
  return report;
}

Json to_json(const LawReport& r, const LawConfig& cfg) {
  Json laws = Json::array();
  for (const auto& l : r.laws) {
    laws.push_back({{"group", l.group},
                    {"name", l.name},
                    {"instances", l.instances},
                    {"max_residual", l.max_residual},
                    {"pass", l.pass}});
  }
  Json out{{"pass", r.pass()},
           {"seed", cfg.seed},
           {"trials", cfg.trials},
           {"max_atoms", cfg.max_atoms},
           {"max_dim", cfg.max_dim},
           {"laws", laws}};
  if (!cfg.inject_fault.empty()) out["inject_fault"] = cfg.inject_fault;
  if (r.counterexample) out["counterexample"] = *r.counterexample;
  return out;
}

}  // namespace qsets

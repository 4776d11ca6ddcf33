// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "qsets/coloring.hpp"
#include "qsets/error.hpp"
#include "qsets/laws.hpp"
#include "qsets/opalg.hpp"
#include "qsets/pred.hpp"
#include "qsets/qfun.hpp"
#include "qsets/random.hpp"

using namespace qsets;

namespace {

constexpr double kTol = 1e-8;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---- 1. dagger-compact laws ------------------------------------------------

Outcome laws_criterion() {
  LawConfig cfg;
  cfg.seed = 1;
  cfg.trials = 200;
  cfg.max_atoms = 3;
  cfg.max_dim = 3;
  cfg.groups = {"qrel"};
  const LawReport rep = run_laws(cfg);
  double worst = 0.0;
  std::string names;
  for (const auto& l : rep.laws) {
    worst = std::max(worst, l.max_residual);
    names += (names.empty() ? "" : ",") + l.name;
  }
  return {rep.pass() && worst < kTol,
          std::to_string(cfg.trials) + " trials of " + names + "; max residual " +
              fmt("%.2e", worst)};
}

// ---- 2. classical embedding --------------------------------------------------

QuantumSet small_classical(Rng& rng, const char* prefix) {
  const int n = std::uniform_int_distribution<int>(1, 4)(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return classical_embed(labels);
}

Outcome classical_criterion() {
  Rng rng(2);
  double worst = 0.0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const auto x = small_classical(rng, "x"), y = small_classical(rng, "y");
    const auto z = small_classical(rng, "z"), w = small_classical(rng, "w");
    const auto r = random_pairs(rng, x, y), s = random_pairs(rng, y, z);
    const auto q = random_pairs(rng, z, w);
    const auto rr = classical_relation(x, y, r), ss = classical_relation(y, z, s);
    const auto qq = classical_relation(z, w, q);

    std::set<BlockKey> comp, swapped, prod;
    for (const auto& [a, b] : r) {
      swapped.insert({b, a});
      for (const auto& [b2, c] : s) {
        if (b == b2) comp.insert({a, c});
      }
      for (const auto& [c, d] : q) prod.insert({pair_label(a, c), pair_label(b, d)});
    }
    worst = std::max(worst, rel_distance(compose(ss, rr), classical_relation(x, z, comp)));
    worst = std::max(worst, rel_distance(dagger(rr), classical_relation(y, x, swapped)));
    worst = std::max(worst, rel_distance(times(rr, qq),
                                         classical_relation(cartesian_product(x, z),
                                                            cartesian_product(y, w), prod)));
  }
  return {worst < 1e-10, std::to_string(trials) + " trials of compose, dagger and product; max residual " +
                             fmt("%.2e", worst)};
}

// ---- 3. cyclic identity and unitality --------------------------------------

Outcome cyclic_criterion() {
  Rng rng(3);
  double worst = 0.0;
  int disagreements = 0, unital = 0, non_unital = 0;
  const int total = 100, deliberately = 30;
  for (int t = 0; t < total; ++t) {
    const bool nu = t >= total - deliberately;
    const auto y = random_qset(rng, 3, 3, "y");
    const auto f = random_function_into(rng, y, 3, 3, {nu});
    const Fission fis = fission_from_function(f);
    const Relation back = function_from_homomorphism(homomorphism_of(fis));
    worst = std::max(worst, rel_distance(back, f));

    const bool sum_one = fis.unitality_residual() < kTol;
    const bool star_one =
        distance(star_map(f, BlockOperator::identity(f.target())),
                 BlockOperator::identity(f.source())) < kTol;
    const bool covers = check_axioms(f).is_cosurjective;
    if (sum_one != star_one || star_one != covers || sum_one == nu) ++disagreements;
    (sum_one ? unital : non_unital) += 1;
  }
  return {worst < kTol && disagreements == 0,
          std::to_string(total) + " partial functions (" + std::to_string(unital) +
              " unital, " + std::to_string(non_unital) +
              " non-unital); roundtrip residual " + fmt("%.2e", worst) +
              "; tri-equivalence disagreements " + std::to_string(disagreements)};
}

// ---- 4. functoriality and monoidality ---------------------------------------

Outcome functor_criterion() {
  Rng rng(4);
  double worst_f = 0.0, worst_m = 0.0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto z = random_qset(rng, 3, 3, "z");
    const auto g = random_function_into(rng, z, 3, 3);
    const auto f = random_function_into(rng, g.source(), 3, 3);
    const auto gf = compose(g, f);
    for (const auto& gen : generators(z)) {
      const auto b = BlockOperator::matrix_unit(z, gen.label, gen.i, gen.j);
      worst_f = std::max(worst_f, distance(star_map(gf, b), star_map(f, star_map(g, b))));
    }
  }
  for (int t = 0; t < trials; ++t) {
    const auto y1 = random_qset(rng, 2, 2, "a"), y2 = random_qset(rng, 2, 2, "b");
    const auto f1 = random_function_into(rng, y1, 2, 3);
    const auto f2 = random_function_into(rng, y2, 2, 3);
    const auto f12 = times(f1, f2);
    for (const auto& g1 : generators(y1)) {
      const auto a = star_map(f1, BlockOperator::matrix_unit(y1, g1.label, g1.i, g1.j));
      for (const auto& g2 : generators(y2)) {
        const auto c = star_map(f2, BlockOperator::matrix_unit(y2, g2.label, g2.i, g2.j));
        const Index d2 = y2.at(g2.label).dim;
        const auto e = BlockOperator::matrix_unit(f12.target(), pair_label(g1.label, g2.label),
                                                  g1.i * d2 + g2.i, g1.j * d2 + g2.j);
        const auto lhs = star_map(f12, e);
        for (const auto& xa : f1.source().atoms()) {
          for (const auto& xc : f2.source().atoms()) {
            worst_m = std::max(worst_m, (lhs.block(pair_label(xa.label, xc.label)) -
                                         kron(a.block(xa.label), c.block(xc.label)))
                                            .norm());
          }
        }
      }
    }
  }
  return {worst_f < kTol && worst_m < kTol,
          std::to_string(trials) + " + " + std::to_string(trials) +
              " instances; functoriality residual " + fmt("%.2e", worst_f) +
              ", monoidality residual " + fmt("%.2e", worst_m)};
}

// ---- 5. basis independence --------------------------------------------------

Outcome basis_criterion() {
  Rng rng(5);
  double worst = 0.0;
  const int trials = 100, rebases = 10;
  for (int t = 0; t < trials; ++t) {
    const auto y = random_qset(rng, 3, 3, "y");
    const auto f = random_function_into(rng, y, 3, 3, {t % 4 == 3});
    const auto gens = generators(y);
    std::vector<BlockOperator> ref;
    for (const auto& g : gens) ref.push_back(star_map(f, BlockOperator::matrix_unit(y, g.label, g.i, g.j)));
    for (int k = 0; k < rebases; ++k) {
      const auto f2 = rerandomize_bases(rng, f);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        worst = std::max(worst, distance(star_map(f2, BlockOperator::matrix_unit(y, g.label, g.i, g.j)),
                                         ref[i]));
      }
    }
  }
  return {worst < kTol, std::to_string(trials) + " instances x " + std::to_string(rebases) +
                            " re-orthonormalizations; max residual " + fmt("%.2e", worst)};
}

// ---- 6. epi/mono dualities ----------------------------------------------------

Outcome duality_criterion() {
  Rng rng(6);
  int total = 0, bad = 0;
  int surj[2] = {0, 0}, inj[2] = {0, 0};
  auto record = [&](const Relation& f) {
    const auto w = check_axioms(f);
    if (!w.is_function()) {
      ++bad;
      return;
    }
    ++total;
    if (star_injective(f) != w.is_surjective) ++bad;
    if (star_surjective(f) != w.is_injective) ++bad;
    ++surj[w.is_surjective];
    ++inj[w.is_injective];
  };
  for (int t = 0; t < 40; ++t) {
    record(random_function_into(rng, random_qset(rng, 3, 3, "y"), 3, 3));
  }
  // Injective, and surjective only when no atoms are added.
  for (int t = 0; t < 40; ++t) {
    record(random_injective_function(rng, random_qset(rng, 3, 3, "x"), t % 3));
  }
  // Collapsing maps: surjective but not injective.
  for (int t = 0; t < 20; ++t) {
    QuantumSet x = random_qset(rng, 3, 3, "x");
    while (x.size() == 1 && x.atoms()[0].dim == 1) x = random_qset(rng, 3, 3, "x");
    record(t % 2 ? terminal(x) : canonical_surjection(x));
  }
  const bool mixed = surj[0] > 0 && surj[1] > 0 && inj[0] > 0 && inj[1] > 0;
  return {bad == 0 && mixed,
          std::to_string(total) + " functions (" + std::to_string(surj[0]) + " non-surjective, " +
              std::to_string(inj[0]) + " non-injective); disagreements " + std::to_string(bad)};
}

// ---- 7. four-functor roundtrips ----------------------------------------------

Outcome predicate_criterion() {
  Rng rng(7);
  double worst = 0.0, lattice = 0.0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const auto x = random_qset(rng, 3, 3, "x");
    const auto p = random_predicate(rng, x);
    const auto r = pred_to_rel1(p);
    const auto q = pred_to_proj(p);
    const auto f = pred_to_funB(p);
    const double residuals[] = {
        pred_distance(rel1_to_pred(pred_to_rel1(p)), p),
        pred_distance(proj_to_pred(pred_to_proj(p)), p),
        pred_distance(funB_to_pred(pred_to_funB(p)), p),
        rel_distance(pred_to_rel1(rel1_to_pred(r)), r),
        rel_distance(proj_to_rel1(rel1_to_proj(r)), r),
        rel_distance(funB_to_rel1(rel1_to_funB(r)), r),
        distance(pred_to_proj(proj_to_pred(q)), q),
        distance(rel1_to_proj(proj_to_rel1(q)), q),
        distance(funB_to_proj(proj_to_funB(q)), q),
        rel_distance(pred_to_funB(funB_to_pred(f)), f),
        rel_distance(rel1_to_funB(funB_to_rel1(f)), f),
        rel_distance(proj_to_funB(funB_to_proj(f)), f),
    };
    worst = std::max(worst, *std::max_element(std::begin(residuals), std::end(residuals)));

    const auto fn = random_function_into(rng, x, 3, 3);
    const auto b = random_predicate(rng, x);
    auto pull = [&](const Predicate& a) { return inverse_image(fn, a); };
    lattice = std::max({lattice, pred_distance(pull(p_meet(p, b)), p_meet(pull(p), pull(b))),
                        pred_distance(pull(p_join(p, b)), p_join(pull(p), pull(b))),
                        pred_distance(pull(p_neg(p)), p_neg(pull(p))),
                        pred_distance(pull(Predicate::top(x)), Predicate::top(fn.source())),
                        pred_distance(pull(Predicate(x)), Predicate(fn.source()))});
  }
  return {worst < kTol && lattice < kTol,
          std::to_string(trials) + " predicates; 12 roundtrips max residual " + fmt("%.2e", worst) +
              ", ortholattice residual " + fmt("%.2e", lattice)};
}

// ---- 8. corange ------------------------------------------------------------

Outcome corange_criterion() {
  Rng rng(8);
  double inv = 0.0, fac = 0.0;
  int proper = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const auto y = random_qset(rng, 3, 3, "y");
    const auto g = random_function_into(rng, y, 3, 3, {t % 2 == 0});
    auto atoms = random_qset(rng, 2, 3, "z").atoms();
    atoms.push_back({"e", 1, false});
    const auto h = random_function_from(rng, y, QuantumSet(atoms));
    const auto c = corange(g);
    inv = std::max(inv, pred_distance(corange(compose(h, g)), c));
    if (!p_eq(c, Predicate::top(g.source()))) ++proper;
    const auto cf = corange_factor(g);
    fac = std::max(fac, rel_distance(compose(cf.factor, cf.k), g));
  }
  return {inv < kTol && fac < kTol && proper > 0,
          std::to_string(trials) + " partial functions (" + std::to_string(proper) +
              " with proper corange); invariance residual " + fmt("%.2e", inv) +
              ", factorization residual " + fmt("%.2e", fac)};
}

// ---- 9. colorings ------------------------------------------------------------

bool classically_proper(const Graph& g, const std::vector<int>& f) {
  for (const auto& [a, b] : g.edges) {
    if (f[std::stoi(a)] == f[std::stoi(b)]) return false;
  }
  return true;
}

ColoringFamily scalar_family(const Graph& g, int colors, const std::vector<int>& f) {
  ColoringFamily fam;
  for (int t = 0; t < colors; ++t) fam.colors.push_back(std::to_string(t));
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    for (int t = 0; t < colors; ++t) {
      fam.projections[{g.vertices[v], fam.colors[t]}] =
          CMatrix::Constant(1, 1, f[v] == t ? 1.0 : 0.0);
    }
  }
  return fam;
}

// One representative per isomorphism class of graphs on n vertices.
std::vector<Graph> graphs_up_to_iso(int n) {
  const auto kn = Graph::complete(n);
  const int m = int(kn.edges.size());
  std::vector<std::vector<int>> edge_id(n, std::vector<int>(n, 0));
  for (int e = 0; e < m; ++e) {
    const int a = std::stoi(kn.edges[e].first), b = std::stoi(kn.edges[e].second);
    edge_id[a][b] = edge_id[b][a] = e;
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::set<unsigned> seen;
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    unsigned canon = mask;
    for (const auto& p : perms) {
      unsigned img = 0;
      for (int e = 0; e < m; ++e) {
        if (mask >> e & 1) {
          const int a = std::stoi(kn.edges[e].first), b = std::stoi(kn.edges[e].second);
          img |= 1u << edge_id[p[a]][p[b]];
        }
      }
      canon = std::min(canon, img);
    }
    if (!seen.insert(canon).second) continue;
    Graph g;
    g.vertices = kn.vertices;
    for (int e = 0; e < m; ++e) {
      if (mask >> e & 1) g.edges.push_back(kn.edges[e]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

CMatrix small_rotation(Rng& rng, Index d, double eps) {
  const CMatrix h = random_matrix(rng, d, d);
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  CMatrix phases = CMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) phases(k, k) = std::exp(Complex(0, eps * es.eigenvalues()(k)));
  return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

Outcome coloring_criterion(double& search_seconds) {
  std::string detail;
  bool pass = true;

  // (a) Latin squares.
  bool latin = true;
  for (int d = 2; d <= 4; ++d) {
    const auto rep = verify(Graph::complete(d), latin_square_family(d));
    latin = latin && rep.pass && rep.predicate_pass;
  }
  pass = pass && latin;
  detail += std::string("(a) latin K2..K4 ") + (latin ? "ok" : "FAILED");

  // (b) dim-1 verify against the classical predicate.
  int graphs = 0, checks = 0, mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : graphs_up_to_iso(n)) {
      ++graphs;
      for (int colors = 2; colors <= 3; ++colors) {
        int total = 1;
        for (int i = 0; i < n; ++i) total *= colors;
        std::vector<int> f(n);
        for (int code = 0; code < total; ++code) {
          for (int i = 0, c = code; i < n; ++i, c /= colors) f[i] = c % colors;
          const auto rep = verify(g, scalar_family(g, colors, f));
          const bool want = classically_proper(g, f);
          ++checks;
          if (rep.pass != want || rep.predicate_pass != want) ++mismatches;
        }
      }
    }
  }
  pass = pass && mismatches == 0;
  detail += "; (b) " + std::to_string(graphs) + " graphs up to iso, " + std::to_string(checks) +
            " colorings, mismatches " + std::to_string(mismatches);

  // (c) the two verifier routes agree.
  Rng rng(9);
  int agree = 0, passing = 0;
  double gap = 0.0;
  const int families = 100;
  for (int t = 0; t < families; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    Graph g;
    for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::uniform_int_distribution<int>(0, 1)(rng)) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
      }
    }
    if (g.edges.empty()) g.edges.emplace_back("0", "1");
    int colors = std::uniform_int_distribution<int>(2, 4)(rng);
    // A 1x1 projection cannot be rotated, so perturbed families get d >= 2.
    const bool perturb = t % 2 == 1;
    const Index d = std::uniform_int_distribution<int>(perturb ? 2 : 1, 3)(rng);
    // A proper ordinary coloring per basis vector, rotated by one unitary.
    std::vector<std::vector<int>> per_index;
    for (Index k = 0; k < d; ++k) {
      std::vector<int> f(n);
      bool found = false;
      for (int tries = 0; tries < 500 && !found; ++tries) {
        for (auto& c : f) c = std::uniform_int_distribution<int>(0, colors - 1)(rng);
        found = classically_proper(g, f);
      }
      if (!found) {
        colors = std::max(colors, n);
        std::iota(f.begin(), f.end(), 0);
      }
      per_index.push_back(f);
    }
    const CMatrix w = random_unitary(rng, d);
    ColoringFamily fam;
    fam.dim = d;
    for (int c = 0; c < colors; ++c) fam.colors.push_back(std::to_string(c));
    for (int v = 0; v < n; ++v) {
      for (int c = 0; c < colors; ++c) {
        CMatrix diag = CMatrix::Zero(d, d);
        for (Index k = 0; k < d; ++k) diag(k, k) = per_index[k][v] == c ? 1.0 : 0.0;
        fam.projections[{g.vertices[v], fam.colors[c]}] = w * diag * w.adjoint();
      }
    }
    if (perturb) {
      const CMatrix u = small_rotation(rng, d, 1e-3);
      for (const auto& c : fam.colors) {
        auto& p = fam.projections[{g.edges[0].first, c}];
        p = u * p * u.adjoint();
      }
    }
    const auto rep = verify(g, fam);
    agree += rep.pass == rep.predicate_pass;
    passing += rep.pass;
    gap = std::max(gap, std::abs(rep.violation - rep.predicate_violation));
  }
  pass = pass && agree == families && passing > 0 && passing < families;
  detail += "; (c) " + std::to_string(agree) + "/" + std::to_string(families) + " agree (" +
            std::to_string(passing) + " valid), max gap " + fmt("%.1e", gap);

  // (d) search.
  const auto start = std::chrono::steady_clock::now();
  const auto k4 = Graph::complete(4);
  const SearchResult res = search(k4, 4, 4, 2024, SearchBudget{200, 500});
  search_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool found = res.family.has_value();
  if (found) {
    const auto rep = verify(k4, *res.family);
    found = rep.pass && rep.predicate_pass;
  }
  pass = pass && found && search_seconds < 120.0;
  detail += "; (d) K4/4 colors/dim 4 " + std::string(found ? "certificate after " : "none in ") +
            std::to_string(res.restarts_used) + " restarts, " + fmt("%.2f s", search_seconds);
  return {pass, detail};
}

// ---- 10. no right inverse for the measurement --------------------------------

Outcome section_criterion() {
  const QuantumSet h2({{"q", 2, false}});
  const QuantumSet bits = classical_embed({"0", "1"});
  const double s = 1.0 / std::sqrt(2.0);
  auto row = [](Complex a, Complex b) {
    CMatrix r(1, 2);
    r << a, b;
    return r;
  };
  auto col = [](Complex a, Complex b) {
    CMatrix c(2, 1);
    c << a, b;
    return c;
  };
  Relation m(h2, bits);
  m.set_block("q", "0", span(2, 1, std::vector<CMatrix>{row(1, 0)}));
  m.set_block("q", "1", span(2, 1, std::vector<CMatrix>{row(0, 1)}));
  const auto mw = check_axioms(m);

  // Candidate blocks G(i, q) <= L(C, C^2): zero, a line, or everything.
  std::vector<OperatorSubspace> options{OperatorSubspace(1, 2)};
  for (const auto& v : {col(1, 0), col(0, 1), col(s, s), col(s, -s), col(s, Complex(0, s))}) {
    options.push_back(span(1, 2, std::vector<CMatrix>{v}));
  }
  options.push_back(OperatorSubspace::full(1, 2));

  int candidates = 0, sections = 0, violations = 0;
  double weakest = std::numeric_limits<double>::infinity();
  for (const auto& a : options) {
    for (const auto& b : options) {
      Relation g(bits, h2);
      g.set_block("0", "q", a);
      g.set_block("1", "q", b);
      ++candidates;
      if (!rel_eq(compose(m, g), identity(bits))) continue;
      ++sections;
      const double r = check_axioms(g).coinjective_residual;
      weakest = std::min(weakest, r);
      if (r < 0.5) ++violations;
    }
  }
  return {mw.is_function() && mw.is_surjective && sections > 0 && violations == 0,
          std::string("measurement surjective ") + (mw.is_surjective ? "yes" : "no") + "; " +
              std::to_string(sections) + " of " + std::to_string(candidates) +
              " candidates satisfy M o G = I, smallest coinjectivity residual " +
              fmt("%.4f", weakest)};
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit;  // seconds, 0 for none
  };
  double search_seconds = 0.0;
  const std::vector<Row> rows{
      {1, "dagger-compact law suite", laws_criterion, 60.0},
      {2, "classical embedding", classical_criterion, 10.0},
      {3, "cyclic identity and unitality", cyclic_criterion, 0.0},
      {4, "functoriality and monoidality", functor_criterion, 0.0},
      {5, "basis independence", basis_criterion, 0.0},
      {6, "epi/mono dualities", duality_criterion, 0.0},
      {7, "predicate converters", predicate_criterion, 0.0},
      {8, "corange", corange_criterion, 0.0},
      {9, "coloring characterization", [&] { return coloring_criterion(search_seconds); }, 0.0},
      {10, "no right inverse", section_criterion, 0.0},
  };
  int failed = 0;
  for (const auto& row : rows) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = row.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (row.limit > 0.0 && secs >= row.limit) {
      out.pass = false;
      out.detail += "; over the time limit";
    }
    failed += !out.pass;
    std::printf("%s criterion %2d %s: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", row.id,
                row.name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(rows.size()) - failed, rows.size());
  return failed == 0 ? 0 : 1;
}

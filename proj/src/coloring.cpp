#include "qsets/coloring.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qsets/error.hpp"
#include "qsets/opalg.hpp"
#include "qsets/pred.hpp"
#include "qsets/qfun.hpp"
#include "qsets/random.hpp"

namespace qsets {

namespace {

QuantumSet index_set(Index dim) { return QuantumSet({{kIndexAtom, dim, false}}); }

// "(a|b)" -> {a, b}, splitting at the top-level bar.
std::optional<std::pair<std::string, std::string>> split_pair(const std::string& s) {
  if (s.size() < 3 || s.front() != '(' || s.back() != ')') return std::nullopt;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '|' && depth == 0) {
      return std::make_pair(s.substr(1, i - 1), s.substr(i + 1, s.size() - i - 2));
    }
  }
  return std::nullopt;
}

CMatrix point_projector(Index dim, Index k) {
  CMatrix p = CMatrix::Zero(dim, dim);
  p(k, k) = 1.0;
  return p;
}

}  // namespace

void Graph::validate() const {
  std::set<std::string> seen;
  for (const auto& v : vertices) {
    if (!seen.insert(v).second) throw PreconditionError("graph: duplicate vertex " + v);
  }
  for (const auto& [a, b] : edges) {
    if (!seen.count(a) || !seen.count(b)) {
      throw PreconditionError("graph: edge references unknown vertex");
    }
    if (a == b) throw PreconditionError("graph: loop at " + a);
  }
}

Graph Graph::complete(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
  }
  return g;
}

Graph Graph::cycle(int n) {
  Graph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) g.edges.emplace_back(g.vertices[i], g.vertices[(i + 1) % n]);
  return g;
}

const CMatrix& ColoringFamily::at(const std::string& vertex,
                                  const std::string& color) const {
  auto it = projections.find({vertex, color});
  if (it == projections.end()) {
    throw PreconditionError("coloring: missing projection for " + vertex + "|" + color);
  }
  return it->second;
}

void ColoringFamily::validate(const Graph& g, const Tolerance& tol) const {
  if (dim < 1) throw PreconditionError("coloring: dim must be positive");
  if (colors.empty()) throw PreconditionError("coloring: no colors");
  const std::set<std::string> cs(colors.begin(), colors.end());
  if (cs.size() != colors.size()) throw PreconditionError("coloring: duplicate color");
  const std::set<std::string> vs(g.vertices.begin(), g.vertices.end());
  for (const auto& [key, p] : projections) {
    if (!vs.count(key.first) || !cs.count(key.second)) {
      throw PreconditionError("coloring: projection " + key.first + "|" + key.second +
                              " is not indexed by the graph and colors");
    }
  }
  const CMatrix one = CMatrix::Identity(dim, dim);
  for (const auto& v : g.vertices) {
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& t : colors) {
      const CMatrix& p = at(v, t);
      const std::string where = v + "|" + t;
      if (p.rows() != dim || p.cols() != dim) {
        throw PreconditionError("coloring: " + where + " has the wrong shape");
      }
      if ((p * p - p).norm() >= tol.eq_tol) {
        throw PreconditionError("coloring: " + where + " is not idempotent");
      }
      if ((p - p.adjoint()).norm() >= tol.eq_tol) {
        throw PreconditionError("coloring: " + where + " is not self-adjoint");
      }
      sum += p;
    }
    if ((sum - one).norm() >= tol.eq_tol) {
      throw PreconditionError("coloring: projections at " + v +
                              " do not sum to the identity");
    }
  }
}

Relation to_function(const Graph& g, const ColoringFamily& fam, const Tolerance& tol) {
  const QuantumSet src = cartesian_product(classical_embed(g.vertices), index_set(fam.dim));
  Relation f(src, classical_embed(fam.colors));
  for (const auto& v : g.vertices) {
    const std::string atom = pair_label(v, kIndexAtom);
    for (const auto& t : fam.colors) {
      const CMatrix q = orthonormal_range(fam.at(v, t), tol);
      if (q.cols() == 0) continue;
      std::vector<CMatrix> rows;
      for (Index k = 0; k < q.cols(); ++k) rows.push_back(q.col(k).adjoint());
      f.set_block(atom, t, OperatorSubspace::from_orthonormal(fam.dim, 1, rows, tol));
    }
  }
  return f;
}

ColoringFamily from_function(const Relation& f, const Tolerance& tol) {
  require_function(f, tol, "from_function");
  ColoringFamily fam;
  std::optional<std::string> index_label;
  for (const auto& a : f.source().atoms()) {
    const auto parts = split_pair(a.label);
    if (!parts) throw PreconditionError("from_function: source atom " + a.label +
                                        " is not a product atom");
    if (!index_label) {
      index_label = parts->second;
      fam.dim = a.dim;
    }
    if (parts->second != *index_label || a.dim != fam.dim) {
      throw PreconditionError("from_function: source must have a single index atom");
    }
  }
  for (const auto& t : f.target().atoms()) {
    if (t.dim != 1) throw PreconditionError("from_function: target is not classical");
    fam.colors.push_back(t.label);
  }
  for (const auto& t : fam.colors) {
    const BlockOperator img =
        star_map(f, BlockOperator::matrix_unit(f.target(), t, 0, 0), tol);
    for (const auto& a : f.source().atoms()) {
      fam.projections[{split_pair(a.label)->first, t}] = img.block(a.label);
    }
  }
  return fam;
}

ColoringReport verify(const Graph& g, const ColoringFamily& fam, const Tolerance& tol) {
  g.validate();
  fam.validate(g, tol);
  ColoringReport rep;
  for (const auto& [a, b] : g.edges) {
    for (const auto& t : fam.colors) {
      rep.violation = std::max(rep.violation, (fam.at(a, t) * fam.at(b, t)).norm());
    }
  }
  rep.pass = rep.violation < tol.eq_tol;

  // Pull each color point back along F_g and compare the predicates.
  const QuantumSet gset = classical_embed(g.vertices);
  const QuantumSet hset = index_set(fam.dim);
  const QuantumSet tset = classical_embed(fam.colors);
  const Relation f = to_function(g, fam, tol);
  const LabelMap to_h{{pair_label("*", kIndexAtom), kIndexAtom}};
  const LabelMap same_t = [&] {
    LabelMap m;
    for (const auto& t : fam.colors) m[t] = t;
    return m;
  }();
  std::map<std::pair<std::string, std::string>, Predicate> pulled;
  for (const auto& v : g.vertices) {
    const Relation cst = classical_relation(unit_set(), gset, {{"*", v}});
    const Relation fv = relabel(compose(f, times(cst, identity(hset)), tol), hset, to_h,
                                tset, same_t);
    for (const auto& t : fam.colors) {
      Predicate point(tset);
      point.set_space(t, CMatrix::Identity(1, 1), tol);
      pulled.emplace(std::make_pair(v, t), inverse_image(fv, point, tol));
    }
  }
  for (const auto& [a, b] : g.edges) {
    for (const auto& t : fam.colors) {
      rep.predicate_violation =
          std::max(rep.predicate_violation, overlap(pulled.at({a, t}), pulled.at({b, t})));
    }
  }
  rep.predicate_pass = rep.predicate_violation < tol.eq_tol;
  return rep;
}

ColoringFamily latin_square_family(int d) {
  const Graph g = Graph::complete(d);
  ColoringFamily fam;
  fam.dim = d;
  for (int t = 0; t < d; ++t) fam.colors.push_back(std::to_string(t));
  for (int v = 0; v < d; ++v) {
    for (int t = 0; t < d; ++t) {
      fam.projections[{g.vertices[v], fam.colors[t]}] = point_projector(d, (v + t) % d);
    }
  }
  return fam;
}

namespace {

using Measurement = std::vector<CMatrix>;  // one projection per color

struct SeeSaw {
  const Graph& g;
  int colors;
  Index dim;
  std::vector<std::vector<int>> nbrs;
  std::vector<Measurement> p;

  SeeSaw(const Graph& graph, int c, Index d) : g(graph), colors(c), dim(d) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) idx[g.vertices[i]] = int(i);
    nbrs.resize(g.vertices.size());
    for (const auto& [a, b] : g.edges) {
      nbrs[idx[a]].push_back(idx[b]);
      nbrs[idx[b]].push_back(idx[a]);
    }
  }

  void randomize(Rng& rng) {
    std::uniform_int_distribution<int> pick(0, colors - 1);
    p.assign(g.vertices.size(), Measurement(colors, CMatrix::Zero(dim, dim)));
    for (auto& m : p) {
      const CMatrix u = random_unitary(rng, dim);
      for (Index k = 0; k < dim; ++k) {
        m[pick(rng)] += u.col(k) * u.col(k).adjoint();
      }
    }
  }

  CMatrix penalty(std::size_t v, int t) const {
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n : nbrs[v]) a += p[n][t];
    return a;
  }

  // Sum over edges and colors of ||p q||_F^2 = tr(p q).
  double objective() const {
    double s = 0.0;
    for (std::size_t v = 0; v < p.size(); ++v) {
      for (int n : nbrs[v]) {
        if (n < int(v)) continue;
        for (int t = 0; t < colors; ++t) s += (p[v][t] * p[n][t]).trace().real();
      }
    }
    return s;
  }

  double violation() const {
    double worst = 0.0;
    for (std::size_t v = 0; v < p.size(); ++v) {
      for (int n : nbrs[v]) {
        for (int t = 0; t < colors; ++t) worst = std::max(worst, (p[v][t] * p[n][t]).norm());
      }
    }
    return worst;
  }

  // Optimal split of range(p_s + p_t) between s and t, neighbors fixed.
  void resplit(std::size_t v, int s, int t) {
    const CMatrix both = p[v][s] + p[v][t];
    Eigen::SelfAdjointEigenSolver<CMatrix> es(both);
    std::vector<Index> keep;
    for (Index k = 0; k < dim; ++k) {
      if (es.eigenvalues()(k) > 0.5) keep.push_back(k);
    }
    if (keep.empty()) return;
    CMatrix basis(dim, Index(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) basis.col(Index(k)) = es.eigenvectors().col(keep[k]);
    const CMatrix diff = penalty(v, s) - penalty(v, t);
    const CMatrix m = basis.adjoint() * diff * basis;
    Eigen::SelfAdjointEigenSolver<CMatrix> split(0.5 * (m + m.adjoint()));
    const CMatrix vecs = basis * split.eigenvectors();
    CMatrix ps = CMatrix::Zero(dim, dim), pt = CMatrix::Zero(dim, dim);
    for (Index k = 0; k < vecs.cols(); ++k) {
      const CMatrix proj = vecs.col(k) * vecs.col(k).adjoint();
      if (split.eigenvalues()(k) < 0.0) {
        ps += proj;
      } else {
        pt += proj;
      }
    }
    p[v][s] = ps;
    p[v][t] = pt;
  }

  void sweep() {
    for (std::size_t v = 0; v < p.size(); ++v) {
      for (int s = 0; s < colors; ++s) {
        for (int t = s + 1; t < colors; ++t) resplit(v, s, t);
      }
    }
  }

  // Nearest exact measurement: eigendecompose sum_t t p_t and round.
  void polish() {
    for (auto& m : p) {
      CMatrix weighted = CMatrix::Zero(dim, dim);
      for (int t = 0; t < colors; ++t) weighted += double(t) * m[t];
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (weighted + weighted.adjoint()));
      for (auto& q : m) q.setZero();
      for (Index k = 0; k < dim; ++k) {
        const int t = std::clamp(int(std::lround(es.eigenvalues()(k))), 0, colors - 1);
        m[t] += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      }
    }
  }

  ColoringFamily family() const {
    ColoringFamily fam;
    fam.dim = dim;
    for (int t = 0; t < colors; ++t) fam.colors.push_back(std::to_string(t));
    for (std::size_t v = 0; v < p.size(); ++v) {
      for (int t = 0; t < colors; ++t) fam.projections[{g.vertices[v], fam.colors[t]}] = p[v][t];
    }
    return fam;
  }
};

}  // namespace

SearchResult search(const Graph& g, int colors, Index dim, std::uint64_t seed,
                    SearchBudget budget, const Tolerance& tol) {
  if (colors < 1 || dim < 1) throw PreconditionError("search: colors and dim must be positive");
  if (budget.restarts < 1 || budget.sweeps < 1) {
    throw PreconditionError("search: budget must be positive");
  }
  g.validate();
  SearchResult out;
  out.best_violation = std::numeric_limits<double>::infinity();
  SeeSaw state(g, colors, dim);
  for (int r = 0; r < budget.restarts; ++r) {
    out.restarts_used = r + 1;
    Rng rng = trial_rng(seed, std::uint64_t(r));
    state.randomize(rng);
    double last = state.objective();
    for (int s = 0; s < budget.sweeps; ++s) {
      state.sweep();
      const double now = state.objective();
      if (state.violation() < 1e-7) break;
      if (last - now < 1e-12 * std::max(1.0, last)) break;  // stuck
      last = now;
    }
    const double viol = state.violation();
    out.best_violation = std::min(out.best_violation, viol);
    if (viol >= 1e-7) continue;
    state.polish();
    ColoringFamily fam = state.family();
    const ColoringReport rep = verify(g, fam, tol);
    if (rep.pass && rep.predicate_pass) {
      out.family = std::move(fam);
      return out;
    }
  }
  return out;
}

}  // namespace qsets

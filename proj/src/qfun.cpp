#include "qsets/qfun.hpp"

#include <algorithm>
#include <cmath>

#include "qsets/error.hpp"
#include "qsets/opalg.hpp"

namespace qsets {

namespace {

OperatorSubspace identity_line(Index d) {
  return span(d, d, std::vector<CMatrix>{CMatrix::Identity(d, d)});
}

// Coinjectivity defect of R, measured on raw products of block bases. For
// every source atom X and targets Y, Y' the products v v'^dag must vanish
// when Y != Y' and be multiples of 1 when Y = Y'. The sum of squared defects
// over basis pairs does not depend on the choice of orthonormal bases.
double coinjectivity_defect(const Relation& r) {
  std::map<std::string, std::vector<std::pair<std::string, const OperatorSubspace*>>>
      by_source;
  for (const auto& [key, space] : r.blocks()) {
    by_source[key.first].push_back({key.second, &space});
  }
  std::map<BlockKey, double> defect;  // keyed by (Y, Y')
  for (const auto& [x, row] : by_source) {
    for (const auto& [y1, v1] : row) {
      for (const auto& [y2, v2] : row) {
        double& acc = defect[{y1, y2}];
        for (const auto& a : v1->basis()) {
          for (const auto& b : v2->basis()) {
            CMatrix m = a * b.adjoint();
            if (y1 == y2) {
              m -= (m.trace() / static_cast<double>(m.rows())) *
                   CMatrix::Identity(m.rows(), m.cols());
            }
            acc += m.squaredNorm();
          }
        }
      }
    }
  }
  double worst = 0.0;
  for (const auto& [k, d] : defect) worst = std::max(worst, std::sqrt(d));
  return worst;
}

// Largest distance from 1_X to (R^dag o R)(X,X), over source atoms X.
double cosurjectivity_defect(const Relation& r, const Tolerance& tol) {
  if (r.source().empty()) return 0.0;
  const Relation rr = compose(dagger(r), r, tol);
  double worst = 0.0;
  for (const auto& a : r.source().atoms()) {
    worst = std::max(worst, membership_residual(CMatrix::Identity(a.dim, a.dim),
                                                rr.block(a.label, a.label)));
  }
  return worst;
}

}  // namespace

FunctionWitness check_axioms(const Relation& r, const Tolerance& tol) {
  FunctionWitness w;
  const Relation rd = dagger(r);
  w.coinjective_residual = coinjectivity_defect(r);
  w.injective_residual = coinjectivity_defect(rd);
  w.cosurjective_residual = cosurjectivity_defect(r, tol);
  w.surjective_residual = cosurjectivity_defect(rd, tol);
  w.is_coinjective = w.coinjective_residual < tol.eq_tol;
  w.is_injective = w.injective_residual < tol.eq_tol;
  w.is_cosurjective = w.cosurjective_residual < tol.eq_tol;
  w.is_surjective = w.surjective_residual < tol.eq_tol;
  return w;
}

void require_function(const Relation& f, const Tolerance& tol, const char* where) {
  const FunctionWitness w = check_axioms(f, tol);
  if (!w.is_coinjective) {
    throw PreconditionError(std::string(where) +
                            ": relation is not coinjective (F F^dag <= I fails)");
  }
  if (!w.is_cosurjective) {
    throw PreconditionError(std::string(where) +
                            ": relation is not cosurjective (F^dag F >= I fails)");
  }
}

void require_partial_function(const Relation& f, const Tolerance& tol,
                              const char* where) {
  if (coinjectivity_defect(f) >= tol.eq_tol) {
    throw PreconditionError(std::string(where) +
                            ": relation is not a partial function (F F^dag <= I fails)");
  }
}

std::optional<InvertibleDecomposition> invertible_decompose(const Relation& f,
                                                            const Tolerance& tol) {
  const FunctionWitness w = check_axioms(f, tol);
  if (!w.is_function()) {
    throw PreconditionError("invertible_decompose: relation is not a function");
  }
  if (!w.is_injective || !w.is_surjective) return std::nullopt;
  InvertibleDecomposition d;
  for (const auto& [key, space] : f.blocks()) {
    const Index dx = f.source().at(key.first).dim;
    if (space.dim() != 1 || f.target().at(key.second).dim != dx ||
        d.atom_bijection.count(key.first) != 0) {
      return std::nullopt;
    }
    const CMatrix u = space.basis()[0] * std::sqrt(static_cast<double>(dx));
    if ((u.adjoint() * u - CMatrix::Identity(dx, dx)).norm() >= tol.eq_tol) {
      return std::nullopt;
    }
    d.atom_bijection[key.first] = key.second;
    d.unitaries[key.first] = u;
  }
  if (d.atom_bijection.size() != f.source().size() ||
      f.source().size() != f.target().size()) {
    return std::nullopt;
  }
  return d;
}

Relation reconstruct(const InvertibleDecomposition& d, const QuantumSet& source,
                     const QuantumSet& target) {
  Relation r(source, target);
  for (const auto& [x, y] : d.atom_bijection) {
    const CMatrix& u = d.unitaries.at(x);
    r.set_block(x, y, span(u.cols(), u.rows(), std::vector<CMatrix>{u}));
  }
  return r;
}

Relation inclusion(const QuantumSet& sub, const QuantumSet& y) {
  if (!is_subset(sub, y)) {
    throw PreconditionError("inclusion: source is not a subset of the target");
  }
  Relation r(sub, y);
  for (const auto& a : sub.atoms()) r.set_block(a.label, a.label, identity_line(a.dim));
  return r;
}

Relation canonical_surjection(const QuantumSet& x) {
  std::vector<std::string> labels;
  for (const auto& a : x.atoms()) labels.push_back(a.label);
  Relation r(x, classical_embed(labels));
  for (const auto& a : x.atoms()) {
    r.set_block(a.label, a.label, OperatorSubspace::full(a.dim, 1));
  }
  return r;
}

Relation terminal(const QuantumSet& x) {
  Relation r(x, unit_set());
  for (const auto& a : x.atoms()) {
    r.set_block(a.label, "*", OperatorSubspace::full(a.dim, 1));
  }
  return r;
}

std::pair<Relation, Relation> projections(const QuantumSet& x,
                                          const QuantumSet& y) {
  Relation p1 = compose(right_unitor(x), times(identity(x), terminal(y)));
  Relation p2 = compose(left_unitor(y), times(terminal(x), identity(y)));
  return {std::move(p1), std::move(p2)};
}

double compatibility_residual(const Relation& f1, const Relation& f2,
                              const Tolerance& tol) {
  require_function(f1, tol, "compatible");
  require_function(f2, tol, "compatible");
  if (f1.source() != f2.source()) {
    throw PreconditionError("compatible: functions have different sources");
  }
  std::vector<BlockOperator> a, b;
  for (const auto& g : generators(f1.target())) {
    a.push_back(star_formula(
        f1, BlockOperator::matrix_unit(f1.target(), g.label, g.i, g.j)));
  }
  for (const auto& g : generators(f2.target())) {
    b.push_back(star_formula(
        f2, BlockOperator::matrix_unit(f2.target(), g.label, g.i, g.j)));
  }
  double worst = 0.0;
  for (const auto& atom : f1.source().atoms()) {
    for (const auto& p : a) {
      const CMatrix& pa = p.block(atom.label);
      for (const auto& q : b) {
        const CMatrix& qb = q.block(atom.label);
        worst = std::max(worst, (pa * qb - qb * pa).norm());
      }
    }
  }
  return worst;
}

bool compatible(const Relation& f1, const Relation& f2, const Tolerance& tol) {
  return compatibility_residual(f1, f2, tol) < tol.eq_tol;
}

bool is_classical(const Relation& f, const Tolerance& tol) {
  require_function(f, tol, "is_classical");
  for (const auto& g : generators(f.target())) {
    const BlockOperator img = star_formula(
        f, BlockOperator::matrix_unit(f.target(), g.label, g.i, g.j));
    for (const auto& [label, m] : img.blocks()) {
      const CMatrix off = m - (m.trace() / static_cast<double>(m.rows())) *
                                  CMatrix::Identity(m.rows(), m.cols());
      if (off.norm() >= tol.eq_tol) return false;
    }
  }
  return true;
}

std::optional<LabelMap> classify_classical(const Relation& f,
                                           const Tolerance& tol) {
  if (!is_classical(f, tol)) return std::nullopt;
  LabelMap out;
  for (const auto& y : f.target().atoms()) {
    BlockOperator e(f.target());
    e.set_block(y.label, CMatrix::Identity(y.dim, y.dim));
    const BlockOperator img = star_formula(f, e);
    for (const auto& x : f.source().atoms()) {
      const CMatrix& m = img.block(x.label);
      if ((m - CMatrix::Identity(x.dim, x.dim)).norm() < tol.eq_tol) {
        out[x.label] = y.label;
      }
    }
  }
  if (out.size() != f.source().size()) {
    throw PreconditionError("classify_classical: function has no point image");
  }
  return out;
}

Relation classify_subobject(const Relation& j, const Tolerance& tol) {
  const FunctionWitness w = check_axioms(j, tol);
  if (!w.is_function() || !w.is_injective) {
    throw PreconditionError("classify_subobject: relation is not an injective "
                            "function");
  }
  const QuantumSet omega = disjoint_union(unit_set(), unit_set());
  Relation f(j.target(), omega);
  for (const auto& x : j.target().atoms()) {
    BlockOperator e(j.target());
    e.set_block(x.label, CMatrix::Identity(x.dim, x.dim));
    const bool hit = star_formula(j, e).norm() > tol.eq_tol;
    f.set_block(x.label, pair_label("*", hit ? "1" : "0"),
                OperatorSubspace::full(x.dim, 1));
  }
  return f;
}

}  // namespace qsets

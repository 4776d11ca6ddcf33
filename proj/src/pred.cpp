#include "qsets/pred.hpp"

#include <algorithm>

#include "qsets/error.hpp"
#include "qsets/qfun.hpp"

namespace qsets {

Predicate::Predicate(QuantumSet carrier) : carrier_(std::move(carrier)) {
  for (const auto& a : carrier_.atoms()) spaces_[a.label] = CMatrix(a.dim, 0);
}

Predicate Predicate::top(const QuantumSet& carrier) {
  Predicate p(carrier);
  for (const auto& a : carrier.atoms()) {
    p.spaces_[a.label] = CMatrix::Identity(a.dim, a.dim);
  }
  return p;
}

const CMatrix& Predicate::space(const std::string& label) const {
  auto it = spaces_.find(label);
  if (it == spaces_.end()) {
    throw PreconditionError("predicate has no atom '" + label + "'");
  }
  return it->second;
}

void Predicate::set_space(const std::string& label, const CMatrix& gens,
                          const Tolerance& tol) {
  const Atom& a = carrier_.at(label);
  if (gens.rows() != a.dim) {
    throw PreconditionError("predicate space for '" + label + "' has wrong height");
  }
  spaces_[label] = orthonormal_range(gens, tol);
}

CMatrix Predicate::projector(const std::string& label) const {
  const CMatrix& q = space(label);
  return q * q.adjoint();
}

namespace {

void require_carrier(const Predicate& a, const Predicate& b, const char* where) {
  if (a.carrier() != b.carrier()) {
    throw PreconditionError(std::string(where) + ": predicates on different sets");
  }
}

CMatrix complement_columns(const CMatrix& q, const Tolerance& tol) {
  if (q.cols() == 0) return CMatrix::Identity(q.rows(), q.rows());
  return null_space(q.adjoint(), tol);
}

CMatrix hcat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

// Row vectors in L(X, C) are held as an OperatorSubspace with cod = 1; the
// basis element v is a 1 x d matrix.
CMatrix rows_of(const OperatorSubspace& k) {
  CMatrix out(k.dim(), k.domain_dim());
  for (Index i = 0; i < k.dim(); ++i) out.row(i) = k.basis()[static_cast<std::size_t>(i)];
  return out;
}

OperatorSubspace row_space(Index d, const CMatrix& rows, const Tolerance& tol) {
  std::vector<CMatrix> ops;
  for (Index i = 0; i < rows.rows(); ++i) ops.push_back(rows.row(i));
  return span(d, 1, ops, tol);
}

// H^0 = { v in X* : v x = 0 for all x in H }.
OperatorSubspace polar_of_vectors(const CMatrix& h, const Tolerance& tol) {
  const Index d = h.rows();
  if (h.cols() == 0) return OperatorSubspace::full(d, 1);
  const CMatrix n = null_space(h.transpose(), tol);
  return row_space(d, n.transpose(), tol);
}

// K^0 = { x in X : v x = 0 for all v in K }.
CMatrix polar_of_rows(const OperatorSubspace& k, const Tolerance& tol) {
  if (k.is_zero()) return CMatrix::Identity(k.domain_dim(), k.domain_dim());
  return null_space(rows_of(k), tol);
}

// H^perp inside X.
CMatrix perp_of_vectors(const CMatrix& h, const Tolerance& tol) {
  return complement_columns(h, tol);
}

// K^perp = { v in X* : v v'^dag = 0 for all v' in K }.
OperatorSubspace perp_of_rows(const OperatorSubspace& k, const Tolerance& tol) {
  if (k.is_zero()) return OperatorSubspace::full(k.domain_dim(), 1);
  const CMatrix n = null_space(rows_of(k).conjugate(), tol);
  return row_space(k.domain_dim(), n.transpose(), tol);
}

void require_rel1(const Relation& r, const char* where) {
  if (r.target() != unit_set()) {
    throw PreconditionError(std::string(where) + ": relation must target 1");
  }
}

void require_funB(const Relation& f, const Tolerance& tol, const char* where) {
  if (f.target() != boolean_set()) {
    throw PreconditionError(std::string(where) + ": function must target `B");
  }
  require_function(f, tol, where);
}

void require_projection(const BlockOperator& p, const Tolerance& tol,
                        const char* where) {
  for (const auto& [label, m] : p.blocks()) {
    if ((m * m - m).norm() >= tol.eq_tol || (m - m.adjoint()).norm() >= tol.eq_tol) {
      throw PreconditionError(std::string(where) + ": block '" + label +
                              "' is not a projection");
    }
  }
}

}  // namespace

Predicate p_neg(const Predicate& a, const Tolerance& tol) {
  Predicate out(a.carrier());
  for (const auto& at : a.carrier().atoms()) {
    out.set_space(at.label, complement_columns(a.space(at.label), tol), tol);
  }
  return out;
}

Predicate p_join(const Predicate& a, const Predicate& b, const Tolerance& tol) {
  require_carrier(a, b, "p_join");
  Predicate out(a.carrier());
  for (const auto& at : a.carrier().atoms()) {
    out.set_space(at.label, hcat(a.space(at.label), b.space(at.label)), tol);
  }
  return out;
}

Predicate p_meet(const Predicate& a, const Predicate& b, const Tolerance& tol) {
  require_carrier(a, b, "p_meet");
  return p_neg(p_join(p_neg(a, tol), p_neg(b, tol), tol), tol);
}

double pred_distance(const Predicate& a, const Predicate& b) {
  require_carrier(a, b, "pred_distance");
  double worst = 0.0;
  for (const auto& at : a.carrier().atoms()) {
    worst = std::max(worst, (a.projector(at.label) - b.projector(at.label)).norm());
  }
  return worst;
}

bool p_eq(const Predicate& a, const Predicate& b, const Tolerance& tol) {
  return pred_distance(a, b) < tol.eq_tol;
}

bool p_leq(const Predicate& a, const Predicate& b, const Tolerance& tol) {
  require_carrier(a, b, "p_leq");
  for (const auto& at : a.carrier().atoms()) {
    const CMatrix& qa = a.space(at.label);
    const CMatrix& qb = b.space(at.label);
    if ((qa - qb * (qb.adjoint() * qa)).norm() >= tol.eq_tol) return false;
  }
  return true;
}

double overlap(const Predicate& a, const Predicate& b) {
  require_carrier(a, b, "disjoint");
  double worst = 0.0;
  for (const auto& at : a.carrier().atoms()) {
    worst = std::max(worst, (a.space(at.label).adjoint() * b.space(at.label)).norm());
  }
  return worst;
}

bool disjoint(const Predicate& a, const Predicate& b, const Tolerance& tol) {
  return overlap(a, b) < tol.eq_tol;
}

Predicate direct_image(const Relation& r, const Predicate& p, const Tolerance& tol) {
  if (r.source() != p.carrier()) {
    throw PreconditionError("direct_image: predicate is not on the source set");
  }
  std::map<std::string, std::vector<CMatrix>> parts;
  for (const auto& [key, space] : r.blocks()) {
    const CMatrix& q = p.space(key.first);
    if (q.cols() == 0) continue;
    for (const auto& m : space.basis()) parts[key.second].push_back(m * q);
  }
  Predicate out(r.target());
  for (const auto& [label, list] : parts) {
    Index cols = 0;
    for (const auto& m : list) cols += m.cols();
    CMatrix all(r.target().at(label).dim, cols);
    Index c = 0;
    for (const auto& m : list) {
      all.middleCols(c, m.cols()) = m;
      c += m.cols();
    }
    out.set_space(label, all, tol);
  }
  return out;
}

Predicate inverse_image(const Relation& r, const Predicate& p, const Tolerance& tol) {
  return direct_image(dagger(r), p, tol);
}

Predicate corange(const Relation& g, const Tolerance& tol) {
  require_partial_function(g, tol, "corange");
  return inverse_image(g, Predicate::top(g.target()), tol);
}

CorangeFactorization corange_factor(const Relation& g, const Tolerance& tol) {
  CorangeFactorization out;
  out.corange = corange(g, tol);
  std::vector<Atom> atoms;
  for (const auto& a : g.source().atoms()) {
    const Index k = out.corange.space(a.label).cols();
    if (k > 0) atoms.push_back({a.label, k, false});
  }
  out.restricted = QuantumSet(atoms);
  out.k = Relation(g.source(), out.restricted);
  for (const auto& a : out.restricted.atoms()) {
    const CMatrix ud = out.corange.space(a.label).adjoint();
    out.k.set_block(a.label, a.label,
                    span(ud.cols(), ud.rows(), std::vector<CMatrix>{ud}, tol));
  }
  out.factor = compose(g, dagger(out.k), tol);
  if (!check_axioms(out.factor, tol).is_function()) {
    throw PreconditionError("corange_factor: factor is not a function");
  }
  if (!rel_eq(compose(out.factor, out.k, tol), g, tol)) {
    throw PreconditionError("corange_factor: F o K_P does not recompose to G");
  }
  return out;
}

QuantumSet boolean_set() { return classical_embed({"0", "1"}); }

Relation pred_to_rel1(const Predicate& p, const Tolerance& tol) {
  Relation r(p.carrier(), unit_set());
  for (const auto& a : p.carrier().atoms()) {
    const CMatrix& q = p.space(a.label);
    // P(X)^{0 perp} is the span of the bras <x| for x in P(X).
    const OperatorSubspace k = perp_of_rows(polar_of_vectors(q, tol), tol);
    r.set_block(a.label, "*", k);
  }
  return r;
}

BlockOperator pred_to_proj(const Predicate& p) {
  BlockOperator out(p.carrier());
  for (const auto& a : p.carrier().atoms()) out.set_block(a.label, p.projector(a.label));
  return out;
}

Relation pred_to_funB(const Predicate& p, const Tolerance& tol) {
  Relation f(p.carrier(), boolean_set());
  for (const auto& a : p.carrier().atoms()) {
    const OperatorSubspace zero = polar_of_vectors(p.space(a.label), tol);
    f.set_block(a.label, "0", zero);
    f.set_block(a.label, "1", perp_of_rows(zero, tol));
  }
  return f;
}

Predicate rel1_to_pred(const Relation& r, const Tolerance& tol) {
  require_rel1(r, "rel1_to_pred");
  Predicate p(r.source());
  for (const auto& a : r.source().atoms()) {
    p.set_space(a.label, perp_of_vectors(polar_of_rows(r.block(a.label, "*"), tol), tol),
                tol);
  }
  return p;
}

BlockOperator rel1_to_proj(const Relation& r, const Tolerance& tol) {
  require_rel1(r, "rel1_to_proj");
  // Every relation into 1 is a partial function.
  return star_map(r, BlockOperator::identity(unit_set()), tol);
}

Relation rel1_to_funB(const Relation& r, const Tolerance& tol) {
  require_rel1(r, "rel1_to_funB");
  const Relation rd = dagger(r);
  const Relation f = dagger(copair(rd, rel_neg(rd, tol)));
  LabelMap src, tgt{{pair_label("*", "0"), "1"}, {pair_label("*", "1"), "0"}};
  for (const auto& a : r.source().atoms()) src[a.label] = a.label;
  return relabel(f, r.source(), src, boolean_set(), tgt);
}

Predicate proj_to_pred(const BlockOperator& p, const Tolerance& tol) {
  require_projection(p, tol, "proj_to_pred");
  Predicate out(p.carrier());
  for (const auto& [label, m] : p.blocks()) out.set_space(label, m, tol);
  return out;
}

Relation proj_to_rel1(const BlockOperator& p, const Tolerance& tol) {
  require_projection(p, tol, "proj_to_rel1");
  Relation r(p.carrier(), unit_set());
  for (const auto& [label, m] : p.blocks()) {
    // v p = v  <=>  (p - 1)^T v^T = 0.
    const CMatrix id = CMatrix::Identity(m.rows(), m.cols());
    const CMatrix n = null_space((m - id).transpose(), tol);
    r.set_block(label, "*", row_space(m.rows(), n.transpose(), tol));
  }
  return r;
}

Relation proj_to_funB(const BlockOperator& p, const Tolerance& tol) {
  require_projection(p, tol, "proj_to_funB");
  Relation f(p.carrier(), boolean_set());
  for (const auto& [label, m] : p.blocks()) {
    const CMatrix n = null_space(m.transpose(), tol);  // v p = 0
    const OperatorSubspace zero = row_space(m.rows(), n.transpose(), tol);
    f.set_block(label, "0", zero);
    f.set_block(label, "1", perp_of_rows(zero, tol));
  }
  return f;
}

Predicate funB_to_pred(const Relation& f, const Tolerance& tol) {
  require_funB(f, tol, "funB_to_pred");
  Predicate p(f.source());
  for (const auto& a : f.source().atoms()) {
    p.set_space(a.label, polar_of_rows(f.block(a.label, "0"), tol), tol);
  }
  return p;
}

Relation funB_to_rel1(const Relation& f, const Tolerance& tol) {
  require_funB(f, tol, "funB_to_rel1");
  const QuantumSet one = classical_embed({"1"});
  const Relation r = compose(dagger(inclusion(one, boolean_set())), f, tol);
  LabelMap src;
  for (const auto& a : f.source().atoms()) src[a.label] = a.label;
  return relabel(r, f.source(), src, unit_set(), {{"1", "*"}});
}

BlockOperator funB_to_proj(const Relation& f, const Tolerance& tol) {
  require_funB(f, tol, "funB_to_proj");
  BlockOperator t(boolean_set());
  t.set_block("0", CMatrix::Zero(1, 1));
  t.set_block("1", CMatrix::Identity(1, 1));
  return star_map(f, t, tol);
}

Predicate random_predicate(Rng& rng, const QuantumSet& x) {
  Predicate p(x);
  for (const auto& a : x.atoms()) {
    std::uniform_int_distribution<Index> k(0, a.dim);
    p.set_space(a.label, random_matrix(rng, a.dim, k(rng)));
  }
  return p;
}

}  // namespace qsets

#ifndef QSETS_PRED_HPP
#define QSETS_PRED_HPP

#include <map>
#include <string>

#include "qsets/opalg.hpp"
#include "qsets/qrel.hpp"
#include "qsets/random.hpp"

namespace qsets {

/// A subspace P(X) <= X for every atom, stored as orthonormal columns.
class Predicate {
 public:
  Predicate() = default;
  /// The bottom predicate.
  explicit Predicate(QuantumSet carrier);
  static Predicate top(const QuantumSet& carrier);

  const QuantumSet& carrier() const noexcept { return carrier_; }
  /// dim(X) x k matrix with orthonormal columns, k possibly 0.
  const CMatrix& space(const std::string& label) const;
  /// Sets P(X) to the column span of `gens`.
  void set_space(const std::string& label, const CMatrix& gens,
                 const Tolerance& tol = {});
  CMatrix projector(const std::string& label) const;

 private:
  QuantumSet carrier_;
  std::map<std::string, CMatrix> spaces_;
};

Predicate p_meet(const Predicate& a, const Predicate& b, const Tolerance& tol = {});
Predicate p_join(const Predicate& a, const Predicate& b, const Tolerance& tol = {});
Predicate p_neg(const Predicate& a, const Tolerance& tol = {});
bool p_leq(const Predicate& a, const Predicate& b, const Tolerance& tol = {});
bool p_eq(const Predicate& a, const Predicate& b, const Tolerance& tol = {});
/// Largest Frobenius distance between the projectors of a and b.
double pred_distance(const Predicate& a, const Predicate& b);
/// a <= not b.
bool disjoint(const Predicate& a, const Predicate& b, const Tolerance& tol = {});
/// Largest ||Q_a^dag Q_b|| over atoms; zero exactly when disjoint.
double overlap(const Predicate& a, const Predicate& b);

/// R_*(P)(Y) = span{ r x : r in R(X,Y), x in P(X) }.
Predicate direct_image(const Relation& r, const Predicate& p,
                       const Tolerance& tol = {});
/// R^*(P) = (R^dag)_*(P).
Predicate inverse_image(const Relation& r, const Predicate& p,
                        const Tolerance& tol = {});

/// G^*(top): where the partial function G is defined.
Predicate corange(const Relation& g, const Tolerance& tol = {});

struct CorangeFactorization {
  Predicate corange;
  QuantumSet restricted;  // one atom per nonzero corange space, same label
  Relation k;             // K_P : X -> restricted, blocks C * u_X^dag
  Relation factor;        // the function F with F o K_P = G
};
/// Throws if the recomposition F o K_P = G or the function check fails.
CorangeFactorization corange_factor(const Relation& g, const Tolerance& tol = {});

/// `B = `{0, 1}.
QuantumSet boolean_set();

// The twelve isomorphisms between predicates, relations to 1, projections in
// l(X) and functions to `B. Projection-side inputs must be projections and
// function-side inputs must be functions into `B; violations throw.
Relation pred_to_rel1(const Predicate& p, const Tolerance& tol = {});
BlockOperator pred_to_proj(const Predicate& p);
Relation pred_to_funB(const Predicate& p, const Tolerance& tol = {});
Predicate rel1_to_pred(const Relation& r, const Tolerance& tol = {});
BlockOperator rel1_to_proj(const Relation& r, const Tolerance& tol = {});
Relation rel1_to_funB(const Relation& r, const Tolerance& tol = {});
Predicate proj_to_pred(const BlockOperator& p, const Tolerance& tol = {});
Relation proj_to_rel1(const BlockOperator& p, const Tolerance& tol = {});
Relation proj_to_funB(const BlockOperator& p, const Tolerance& tol = {});
Predicate funB_to_pred(const Relation& f, const Tolerance& tol = {});
Relation funB_to_rel1(const Relation& f, const Tolerance& tol = {});
BlockOperator funB_to_proj(const Relation& f, const Tolerance& tol = {});

/// Each atom gets a random subspace of random dimension 0..dim.
Predicate random_predicate(Rng& rng, const QuantumSet& x);

}  // namespace qsets

#endif  // QSETS_PRED_HPP

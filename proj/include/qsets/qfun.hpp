#ifndef QSETS_QFUN_HPP
#define QSETS_QFUN_HPP

#include <optional>

#include "qsets/qrel.hpp"

namespace qsets {

/// Result of testing the four axioms. Each residual is zero exactly when the
/// axiom holds; a flag is set when its residual is below eq_tol.
///
/// coinjective: F o F^dag <= I, i.e. products v v'^dag of block elements vanish
///   across distinct targets and are scalar on a common target.
/// cosurjective: F^dag o F >= I, i.e. 1_X lies in (F^dag F)(X,X).
/// injective / surjective: the same two conditions with F and F^dag swapped.
struct FunctionWitness {
  bool is_coinjective = false;
  bool is_cosurjective = false;
  bool is_injective = false;
  bool is_surjective = false;
  double coinjective_residual = 0.0;
  double cosurjective_residual = 0.0;
  double injective_residual = 0.0;
  double surjective_residual = 0.0;

  bool is_function() const noexcept { return is_coinjective && is_cosurjective; }
  bool is_partial_function() const noexcept { return is_coinjective; }
};

FunctionWitness check_axioms(const Relation& r, const Tolerance& tol = {});

/// Throws PreconditionError naming the failed axiom.
void require_function(const Relation& f, const Tolerance& tol, const char* where);
void require_partial_function(const Relation& f, const Tolerance& tol,
                              const char* where);

struct InvertibleDecomposition {
  LabelMap atom_bijection;
  std::map<std::string, CMatrix> unitaries;  // keyed by source label
};

/// The bijection of atoms and the unitaries u_X with F(X, f(X)) = C u_X, when
/// F is injective and surjective. Throws if F is not a function.
std::optional<InvertibleDecomposition> invertible_decompose(
    const Relation& f, const Tolerance& tol = {});
/// Rebuilds the relation from a decomposition.
Relation reconstruct(const InvertibleDecomposition& d, const QuantumSet& source,
                     const QuantumSet& target);

/// J : X_sub -> Y with diagonal blocks C*1.
Relation inclusion(const QuantumSet& sub, const QuantumSet& y);
/// Q : X -> `At(X), contracting every atom to a point with block L(X, C).
Relation canonical_surjection(const QuantumSet& x);

/// The unique function X -> 1; its block at (X, *) is all of L(X, C).
Relation terminal(const QuantumSet& x);
/// P1 = U o (I x !) and P2 = U' o (! x I).
std::pair<Relation, Relation> projections(const QuantumSet& x,
                                          const QuantumSet& y);

/// F1 and F2 commute: every F1*(b1)(X) commutes with every F2*(b2)(X) on
/// matrix-unit generators.
bool compatible(const Relation& f1, const Relation& f2, const Tolerance& tol = {});
/// Largest commutator norm found by `compatible`.
double compatibility_residual(const Relation& f1, const Relation& f2,
                              const Tolerance& tol = {});

bool is_classical(const Relation& f, const Tolerance& tol = {});
/// For a classical function, the ordinary map of atoms it factors through.
std::optional<LabelMap> classify_classical(const Relation& f,
                                           const Tolerance& tol = {});

/// The classical function X -> 1 + 1 sending the image atoms of the
/// injective function J : Z -> X to "(*|1)" and the rest to "(*|0)".
Relation classify_subobject(const Relation& j, const Tolerance& tol = {});

}  // namespace qsets

#endif  // QSETS_QFUN_HPP

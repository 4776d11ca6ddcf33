#ifndef QSETS_QREL_HPP
#define QSETS_QREL_HPP

#include <map>
#include <set>
#include <string>
#include <utility>

#include "qsets/linalg.hpp"
#include "qsets/qset.hpp"

namespace qsets {

using BlockKey = std::pair<std::string, std::string>;

/// A binary relation between quantum sets: one operator subspace
/// R(X,Y) <= L(X,Y) per pair of atoms. Zero blocks are not stored.
class Relation {
 public:
  Relation() = default;
  Relation(QuantumSet source, QuantumSet target);

  const QuantumSet& source() const noexcept { return source_; }
  const QuantumSet& target() const noexcept { return target_; }
  const std::map<BlockKey, OperatorSubspace>& blocks() const noexcept {
    return blocks_;
  }

  /// The block at (from, to); the zero subspace when absent.
  OperatorSubspace block(const std::string& from, const std::string& to) const;
  /// Replaces a block. Throws on unknown labels or a shape mismatch.
  void set_block(const std::string& from, const std::string& to,
                 OperatorSubspace space);

 private:
  QuantumSet source_;
  QuantumSet target_;
  std::map<BlockKey, OperatorSubspace> blocks_;
};

/// S o R for R : X -> Y and S : Y -> Z.
Relation compose(const Relation& s, const Relation& r, const Tolerance& tol = {});
Relation identity(const QuantumSet& x);
Relation dagger(const Relation& r);
/// R* : Y* -> X*, blocks transposed.
Relation dual(const Relation& r);
Relation times(const Relation& r1, const Relation& r2);

Relation rel_join(const Relation& r, const Relation& s, const Tolerance& tol = {});
Relation rel_meet(const Relation& r, const Relation& s, const Tolerance& tol = {});
Relation rel_neg(const Relation& r, const Tolerance& tol = {});
bool rel_leq(const Relation& r, const Relation& s, const Tolerance& tol = {});
bool rel_perp(const Relation& r, const Relation& s, const Tolerance& tol = {});
/// The top relation: every block is all of L(X,Y).
Relation rel_top(const QuantumSet& x, const QuantumSet& y);

/// Largest projector distance over all blocks. Throws if the endpoints differ.
double rel_distance(const Relation& r, const Relation& s);
bool rel_eq(const Relation& r, const Relation& s, const Tolerance& tol = {});

/// Monoidal structure. Each is a relabelling relation with blocks C*1, except
/// the braiding whose blocks are spanned by the tensor-factor swap.
Relation unit(const QuantumSet& x);    // 1 -> X x X*
Relation counit(const QuantumSet& x);  // X* x X -> 1
Relation braiding(const QuantumSet& x, const QuantumSet& y);  // X x Y -> Y x X
Relation associator(const QuantumSet& x, const QuantumSet& y,
                    const QuantumSet& z);  // (X x Y) x Z -> X x (Y x Z)
Relation left_unitor(const QuantumSet& x);   // 1 x X -> X
Relation right_unitor(const QuantumSet& x);  // X x 1 -> X

/// Permutation matrix e_i (x) e_j -> e_j (x) e_i on C^m (x) C^n.
CMatrix swap_matrix(Index m, Index n);

Relation inj_left(const QuantumSet& x, const QuantumSet& y);   // X -> X + Y
Relation inj_right(const QuantumSet& x, const QuantumSet& y);  // Y -> X + Y
/// [R, S] : X + Y -> Z.
Relation copair(const Relation& r, const Relation& s);

/// Moves every block to renamed atoms. The maps must be total on the old
/// labels and the new sets must carry matching dims.
Relation relabel(const Relation& r, const QuantumSet& new_source,
                 const LabelMap& source_map, const QuantumSet& new_target,
                 const LabelMap& target_map);

/// The relation of ordinary pairs: block C*1 (1-dim) at every listed pair.
Relation classical_relation(const QuantumSet& s, const QuantumSet& t,
                            const std::set<BlockKey>& pairs);

}  // namespace qsets

#endif  // QSETS_QREL_HPP

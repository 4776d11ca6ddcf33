#ifndef QSETS_RANDOM_HPP
#define QSETS_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string>

#include "qsets/linalg.hpp"
#include "qsets/qrel.hpp"
#include "qsets/qset.hpp"

namespace qsets {

using Rng = std::mt19937_64;

/// Independent stream for trial `index` of a run seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

CMatrix random_matrix(Rng& rng, Index rows, Index cols);
/// Haar-distributed unitary via QR of a Gaussian matrix.
CMatrix random_unitary(Rng& rng, Index n);
/// Span of k Gaussian cod x dom matrices (dim min(k, dom*cod) almost surely).
OperatorSubspace random_subspace(Rng& rng, Index dom, Index cod, Index k);

/// 1..max_atoms atoms of dim 1..max_dim, labelled prefix0, prefix1, ...
QuantumSet random_qset(Rng& rng, int max_atoms, int max_dim,
                       const std::string& prefix);

/// Each block present with probability `density`, of dim 1..max_block_dim.
Relation random_relation(Rng& rng, const QuantumSet& x, const QuantumSet& y,
                         double density = 0.5, Index max_block_dim = 2);

/// Ordinary relation between classical sets, each pair with probability 1/2.
std::set<BlockKey> random_pairs(Rng& rng, const QuantumSet& s,
                                const QuantumSet& t);

struct FunctionShape {
  /// When true, every source atom loses at least one dimension, so the
  /// result is a partial function that is not a function.
  bool non_unital = false;
};

/// A random (partial) function out of `x`. The target is `y`, which must
/// contain a 1-dimensional atom so every source dimension can be covered.
Relation random_function_from(Rng& rng, const QuantumSet& x, const QuantumSet& y,
                              FunctionShape shape = {});
/// A random (partial) function into `y`; the source is built to fit.
Relation random_function_into(Rng& rng, const QuantumSet& y, int max_atoms,
                              int max_dim, FunctionShape shape = {});
/// An injective function: a random bijection of atoms with random unitaries,
/// followed by the inclusion into a target with `extra` additional atoms.
Relation random_injective_function(Rng& rng, const QuantumSet& x, int extra);

/// Re-chooses every block basis by a random unitary mixing; the subspaces
/// themselves are unchanged.
Relation rerandomize_bases(Rng& rng, const Relation& r);

}  // namespace qsets

#endif  // QSETS_RANDOM_HPP

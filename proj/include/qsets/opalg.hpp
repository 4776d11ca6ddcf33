#ifndef QSETS_OPALG_HPP
#define QSETS_OPALG_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qsets/qrel.hpp"

namespace qsets {

/// An element of l(X): one square matrix per atom.
class BlockOperator {
 public:
  BlockOperator() = default;
  /// The zero element.
  explicit BlockOperator(QuantumSet carrier);

  static BlockOperator identity(const QuantumSet& carrier);
  /// The matrix unit e_ij placed in atom `label`, zero elsewhere.
  static BlockOperator matrix_unit(const QuantumSet& carrier,
                                   const std::string& label, Index i, Index j);

  const QuantumSet& carrier() const noexcept { return carrier_; }
  const std::map<std::string, CMatrix>& blocks() const noexcept { return blocks_; }
  const CMatrix& block(const std::string& label) const;
  void set_block(const std::string& label, CMatrix m);

  BlockOperator operator*(const BlockOperator& o) const;
  BlockOperator operator+(const BlockOperator& o) const;
  BlockOperator operator*(Complex c) const;
  BlockOperator adjoint() const;
  /// Largest Frobenius norm over blocks.
  double norm() const;

 private:
  QuantumSet carrier_;
  std::map<std::string, CMatrix> blocks_;
};

double distance(const BlockOperator& a, const BlockOperator& b);

struct Generator {
  std::string label;
  Index i = 0;
  Index j = 0;
};
/// All matrix units of l(X), atom by atom, row-major within each atom.
std::vector<Generator> generators(const QuantumSet& x);

/// F*(b)(X) = sum_Y sum_w dim(Y) w^dag b(Y) w over HS-orthonormal bases of
/// F(X,Y). Requires F coinjective.
BlockOperator star_map(const Relation& f, const BlockOperator& b,
                       const Tolerance& tol = {});
/// The same formula with no precondition check.
BlockOperator star_formula(const Relation& f, const BlockOperator& b);

struct HomomorphismReport {
  double multiplicativity = 0.0;
  double linearity = 0.0;
  double adjoint = 0.0;
  double max() const;
};
/// Evaluates the star formula on all pairs of generators. No axiom check, so
/// a relation that is not a partial function shows up as a large residual.
HomomorphismReport star_is_homomorphism(const Relation& f);

struct FissionEntry {
  Index h = 0;
  CMatrix map;  // (dim Y * h) x dim X, row index y*h + i
};

/// Coisometries f_X^Y : X -> Y (x) C^h, one per pair of atoms with h > 0.
struct Fission {
  QuantumSet source;
  QuantumSet target;
  std::map<BlockKey, FissionEntry> entries;

  /// Largest of ||f f^dag - 1|| and ||f_1 f_2^dag|| over distinct targets.
  double invariant_residual() const;
  /// ||sum_Y f^dag f - 1|| maximized over source atoms.
  double unitality_residual() const;
};

Fission fission_from_function(const Relation& f, const Tolerance& tol = {});
Relation function_from_fission(const Fission& f, const Tolerance& tol = {});
/// phi(b)(X) = sum_Y f^dag (b(Y) (x) 1_h) f.
BlockOperator fission_apply(const Fission& f, const BlockOperator& b);
Fission fission_compose(const Fission& g, const Fission& f);
Fission fission_tensor(const Fission& f1, const Fission& f2);
Fission identity_fission(const QuantumSet& x);

/// A *-homomorphism l(Y) -> l(X) given by the images of the matrix units.
struct Homomorphism {
  QuantumSet domain;    // Y
  QuantumSet codomain;  // X
  std::map<std::tuple<std::string, Index, Index>, BlockOperator> images;

  BlockOperator apply(const BlockOperator& b) const;
  /// Residual of multiplicativity and adjoint preservation on generators.
  double homomorphism_residual() const;
};

Homomorphism homomorphism_of(const Relation& f, const Tolerance& tol = {});
Homomorphism homomorphism_of(const Fission& f);
/// F(X,Y) = { v : b(Y) v = v phi(b)(X) for all b }. Throws if phi is not a
/// *-homomorphism within eq_tol.
Relation function_from_homomorphism(const Homomorphism& phi,
                                    const Tolerance& tol = {});

bool is_unital(const Relation& f, const Tolerance& tol = {});
/// F* is injective: no target atom's unit is sent to zero.
bool star_injective(const Relation& f, const Tolerance& tol = {});
/// F* is surjective: images of generators span all of l(X).
bool star_surjective(const Relation& f, const Tolerance& tol = {});

struct SpectralResult {
  std::vector<double> values;       // ascending cluster means
  std::vector<std::string> labels;  // one per value
  Relation function;                // X -> `labels
};
/// Decomposes a self-adjoint element into a function to a classical set of
/// eigenvalues; eigenvalues closer than eq_tol share a cluster.
SpectralResult spectral_function(const BlockOperator& a, const Tolerance& tol = {});
/// r(C_alpha) = alpha on the classical set of eigenvalue labels.
BlockOperator spectral_values(const SpectralResult& s);

}  // namespace qsets

#endif  // QSETS_OPALG_HPP

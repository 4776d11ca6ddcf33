#ifndef QSETS_LINALG_HPP
#define QSETS_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsets {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every subspace computation.
///
/// `rank_cut` is relative: a singular value survives when it exceeds
/// `rank_cut * sigma_max`. `zero_floor` is the absolute cutoff below which a
/// stack of matrices is considered to vanish. `eq_tol` bounds Frobenius
/// distances between projectors and residuals of operator identities.
struct Tolerance {
  double rank_cut = 1e-10;
  double eq_tol = 1e-8;
  double zero_floor = 1e-12;

  /// Throws PreconditionError unless 0 < rank_cut < 1 and 0 < eq_tol < 1.
  void validate() const;
};

/// A subspace of L(C^dom, C^cod), held as a Hilbert-Schmidt orthonormal
/// basis of cod x dom matrices. The zero subspace keeps its shape.
///
/// Bases are not canonical; compare subspaces with `eq`, never by basis.
class OperatorSubspace {
 public:
  OperatorSubspace() = default;
  /// The zero subspace of L(C^dom, C^cod).
  OperatorSubspace(Index dom, Index cod);

  /// Wraps an already HS-orthonormal basis. Throws if shapes disagree or the
  /// Gram matrix is off the identity by more than `tol.eq_tol`.
  static OperatorSubspace from_orthonormal(Index dom, Index cod,
                                           std::vector<CMatrix> basis,
                                           const Tolerance& tol = {});
  /// All of L(C^dom, C^cod), spanned by matrix units.
  static OperatorSubspace full(Index dom, Index cod);

  Index domain_dim() const noexcept { return dom_; }
  Index codomain_dim() const noexcept { return cod_; }
  Index dim() const noexcept { return static_cast<Index>(basis_.size()); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<CMatrix>& basis() const noexcept { return basis_; }

  /// Basis vectorized column-major: a (dom*cod) x dim() matrix with
  /// orthonormal columns.
  CMatrix basis_columns() const;
  /// Orthogonal projector onto the subspace inside the (dom*cod)-dim HS space.
  CMatrix projector() const;

 private:
  Index dom_ = 1;
  Index cod_ = 1;
  std::vector<CMatrix> basis_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector vectorize(const CMatrix& m);
CMatrix unvectorize(const CVector& v, Index rows, Index cols);

/// Orthonormal basis (as columns) of the column space of `a`.
CMatrix orthonormal_range(const CMatrix& a, const Tolerance& tol = {});
/// Orthonormal basis (as columns) of the null space of `a`.
CMatrix null_space(const CMatrix& a, const Tolerance& tol = {});

/// HS-orthonormal basis of the linear span of `mats`. All matrices must share
/// one shape and the list must be nonempty; pass a zero matrix to request the
/// zero subspace of a given shape.
OperatorSubspace span(std::span<const CMatrix> mats, const Tolerance& tol = {});
/// Same as above, with the shape given explicitly so `mats` may be empty.
OperatorSubspace span(Index dom, Index cod, std::span<const CMatrix> mats,
                      const Tolerance& tol = {});

/// W . V = span{ w v }. Requires V.codomain_dim() == W.domain_dim().
OperatorSubspace subspace_product(const OperatorSubspace& w,
                                  const OperatorSubspace& v,
                                  const Tolerance& tol = {});
OperatorSubspace subspace_dagger(const OperatorSubspace& v);
/// Banach adjoint under the self-dual convention: plain transpose.
OperatorSubspace subspace_transpose_dual(const OperatorSubspace& v);
/// span{ v (x) w }; Kronecker products of HS-orthonormal bases stay
/// orthonormal.
OperatorSubspace subspace_tensor(const OperatorSubspace& v,
                                 const OperatorSubspace& w);

OperatorSubspace complement(const OperatorSubspace& v,
                            const Tolerance& tol = {});
OperatorSubspace join(const OperatorSubspace& v, const OperatorSubspace& w,
                      const Tolerance& tol = {});
OperatorSubspace meet(const OperatorSubspace& v, const OperatorSubspace& w,
                      const Tolerance& tol = {});
bool leq(const OperatorSubspace& v, const OperatorSubspace& w,
         const Tolerance& tol = {});
bool eq(const OperatorSubspace& v, const OperatorSubspace& w,
        const Tolerance& tol = {});
/// True when every element of v is HS-orthogonal to every element of w.
bool orthogonal(const OperatorSubspace& v, const OperatorSubspace& w,
                const Tolerance& tol = {});

/// Frobenius distance between the orthogonal projectors of v and w.
double projector_distance(const OperatorSubspace& v,
                          const OperatorSubspace& w);
/// Largest distance from a basis vector of v to the subspace w.
double leq_residual(const OperatorSubspace& v, const OperatorSubspace& w);
/// Distance from the normalized matrix m to the subspace v.
double membership_residual(const CMatrix& m, const OperatorSubspace& v);

}  // namespace qsets

#endif  // QSETS_LINALG_HPP

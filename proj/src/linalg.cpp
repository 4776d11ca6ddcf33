#include "qsets/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsets/error.hpp"

namespace qsets {

namespace {

void require_shape(const CMatrix& m, Index rows, Index cols,
                   const char* where) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << where << ": expected " << rows << "x" << cols << " matrix, got "
       << m.rows() << "x" << m.cols();
    throw PreconditionError(os.str());
  }
}

void require_finite(const CMatrix& m, const char* where) {
  if (!m.allFinite()) {
    throw PreconditionError(std::string(where) + ": non-finite entry");
  }
}

// Number of singular values that survive the relative and absolute cuts.
Index surviving_rank(const Eigen::VectorXd& sigma, const Tolerance& tol) {
  if (sigma.size() == 0) return 0;
  const double cut = std::max(tol.rank_cut * sigma(0), tol.zero_floor);
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

// Incrementally accumulates vectorized matrices and keeps a compressed
// U * Sigma factor, so the final singular values equal those of the full
// stack up to already-discarded directions.
class SpanAccumulator {
 public:
  SpanAccumulator(Index n, const Tolerance& tol) : n_(n), tol_(tol) {
    factor_.resize(n_, 0);
  }

  void add(const CVector& v) {
    if (saturated_) return;
    pending_.push_back(v);
    if (factor_.cols() + static_cast<Index>(pending_.size()) >= 2 * n_ + 8) {
      compress();
    }
  }

  bool saturated() const noexcept { return saturated_; }

  CMatrix finish() {
    compress();
    return orthonormal_;
  }

 private:
  void compress() {
    if (pending_.empty() && orthonormal_.cols() == factor_.cols() &&
        compressed_once_) {
      return;
    }
    CMatrix stack(n_, factor_.cols() + static_cast<Index>(pending_.size()));
    stack.leftCols(factor_.cols()) = factor_;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      stack.col(factor_.cols() + static_cast<Index>(i)) = pending_[i];
    }
    pending_.clear();
    compressed_once_ = true;
    if (stack.cols() == 0) {
      orthonormal_.resize(n_, 0);
      return;
    }
    Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeThinU);
    const Index r = surviving_rank(svd.singularValues(), tol_);
    orthonormal_ = svd.matrixU().leftCols(r);
    factor_ = orthonormal_ * svd.singularValues().head(r).asDiagonal();
    if (r == n_) saturated_ = true;
  }

  Index n_;
  Tolerance tol_;
  CMatrix factor_;
  CMatrix orthonormal_;
  std::vector<CVector> pending_;
  bool saturated_ = false;
  bool compressed_once_ = false;
};

OperatorSubspace from_columns(Index dom, Index cod, const CMatrix& cols) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(cols.cols()));
  for (Index j = 0; j < cols.cols(); ++j) {
    basis.push_back(unvectorize(cols.col(j), cod, dom));
  }
  // Columns come from an SVD or QR and are orthonormal by construction.
  return OperatorSubspace::from_orthonormal(dom, cod, std::move(basis),
                                            Tolerance{1e-10, 1e-6, 1e-12});
}

void require_same_shape(const OperatorSubspace& v, const OperatorSubspace& w,
                        const char* where) {
  if (v.domain_dim() != w.domain_dim() ||
      v.codomain_dim() != w.codomain_dim()) {
    std::ostringstream os;
    os << where << ": subspaces of L(" << v.domain_dim() << ","
       << v.codomain_dim() << ") and L(" << w.domain_dim() << ","
       << w.codomain_dim() << ")";
    throw PreconditionError(os.str());
  }
}

}  // namespace

void Tolerance::validate() const {
  if (!(rank_cut > 0.0 && rank_cut < 1.0)) {
    throw PreconditionError("tolerance: rank_cut must lie in (0,1)");
  }
  if (!(eq_tol > 0.0 && eq_tol < 1.0)) {
    throw PreconditionError("tolerance: eq_tol must lie in (0,1)");
  }
  if (!(zero_floor >= 0.0)) {
    throw PreconditionError("tolerance: zero_floor must be nonnegative");
  }
}

OperatorSubspace::OperatorSubspace(Index dom, Index cod) : dom_(dom), cod_(cod) {
  if (dom < 1 || cod < 1) {
    throw PreconditionError("operator subspace: dimensions must be >= 1");
  }
}

OperatorSubspace OperatorSubspace::from_orthonormal(Index dom, Index cod,
                                                    std::vector<CMatrix> basis,
                                                    const Tolerance& tol) {
  OperatorSubspace s(dom, cod);
  if (static_cast<Index>(basis.size()) > dom * cod) {
    throw PreconditionError("operator subspace: basis longer than dom*cod");
  }
  for (const auto& b : basis) {
    require_shape(b, cod, dom, "operator subspace");
    require_finite(b, "operator subspace");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Complex g = (basis[i].adjoint() * basis[j]).trace();
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(g - target) >= tol.eq_tol) {
        throw PreconditionError("operator subspace: basis is not HS-orthonormal");
      }
    }
  }
  s.basis_ = std::move(basis);
  return s;
}

OperatorSubspace OperatorSubspace::full(Index dom, Index cod) {
  std::vector<CMatrix> basis;
  for (Index j = 0; j < dom; ++j) {
    for (Index i = 0; i < cod; ++i) {
      CMatrix e = CMatrix::Zero(cod, dom);
      e(i, j) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  return from_orthonormal(dom, cod, std::move(basis));
}

CMatrix OperatorSubspace::basis_columns() const {
  CMatrix q(dom_ * cod_, dim());
  for (Index j = 0; j < dim(); ++j) {
    q.col(j) = vectorize(basis_[static_cast<std::size_t>(j)]);
  }
  return q;
}

CMatrix OperatorSubspace::projector() const {
  const CMatrix q = basis_columns();
  return q * q.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector vectorize(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvectorize(const CVector& v, Index rows, Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix orthonormal_range(const CMatrix& a, const Tolerance& tol) {
  if (a.cols() == 0 || a.rows() == 0) return CMatrix(a.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const Index r = surviving_rank(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

CMatrix null_space(const CMatrix& a, const Tolerance& tol) {
  const Index n = a.cols();
  if (a.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const Index r = surviving_rank(svd.singularValues(), tol);
  return svd.matrixV().rightCols(n - r);
}

OperatorSubspace span(std::span<const CMatrix> mats, const Tolerance& tol) {
  if (mats.empty()) {
    throw PreconditionError(
        "span: empty input; pass a zero matrix to fix the shape");
  }
  return span(mats.front().cols(), mats.front().rows(), mats, tol);
}

OperatorSubspace span(Index dom, Index cod, std::span<const CMatrix> mats,
                      const Tolerance& tol) {
  SpanAccumulator acc(dom * cod, tol);
  for (const auto& m : mats) {
    require_shape(m, cod, dom, "span");
    require_finite(m, "span");
    acc.add(vectorize(m));
  }
  return from_columns(dom, cod, acc.finish());
}

OperatorSubspace subspace_product(const OperatorSubspace& w,
                                  const OperatorSubspace& v,
                                  const Tolerance& tol) {
  if (v.codomain_dim() != w.domain_dim()) {
    std::ostringstream os;
    os << "subspace_product: inner dimensions " << v.codomain_dim() << " and "
       << w.domain_dim() << " differ";
    throw PreconditionError(os.str());
  }
  const Index dom = v.domain_dim();
  const Index cod = w.codomain_dim();
  SpanAccumulator acc(dom * cod, tol);
  for (const auto& wb : w.basis()) {
    for (const auto& vb : v.basis()) {
      acc.add(vectorize(wb * vb));
      if (acc.saturated()) break;
    }
    if (acc.saturated()) break;
  }
  return from_columns(dom, cod, acc.finish());
}

OperatorSubspace subspace_dagger(const OperatorSubspace& v) {
  std::vector<CMatrix> basis;
  for (const auto& b : v.basis()) basis.push_back(b.adjoint());
  return OperatorSubspace::from_orthonormal(v.codomain_dim(), v.domain_dim(),
                                            std::move(basis));
}

OperatorSubspace subspace_transpose_dual(const OperatorSubspace& v) {
  std::vector<CMatrix> basis;
  for (const auto& b : v.basis()) basis.push_back(b.transpose());
  return OperatorSubspace::from_orthonormal(v.codomain_dim(), v.domain_dim(),
                                            std::move(basis));
}

OperatorSubspace subspace_tensor(const OperatorSubspace& v,
                                 const OperatorSubspace& w) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(v.dim() * w.dim()));
  for (const auto& a : v.basis()) {
    for (const auto& b : w.basis()) basis.push_back(kron(a, b));
  }
  return OperatorSubspace::from_orthonormal(v.domain_dim() * w.domain_dim(),
                                            v.codomain_dim() * w.codomain_dim(),
                                            std::move(basis));
}

OperatorSubspace complement(const OperatorSubspace& v, const Tolerance&) {
  const Index n = v.domain_dim() * v.codomain_dim();
  if (v.is_zero()) return OperatorSubspace::full(v.domain_dim(), v.codomain_dim());
  if (v.dim() == n) return OperatorSubspace(v.domain_dim(), v.codomain_dim());
  Eigen::HouseholderQR<CMatrix> qr(v.basis_columns());
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  return from_columns(v.domain_dim(), v.codomain_dim(), q.rightCols(n - v.dim()));
}

OperatorSubspace join(const OperatorSubspace& v, const OperatorSubspace& w,
                      const Tolerance& tol) {
  require_same_shape(v, w, "join");
  std::vector<CMatrix> all = v.basis();
  all.insert(all.end(), w.basis().begin(), w.basis().end());
  return span(v.domain_dim(), v.codomain_dim(), all, tol);
}

OperatorSubspace meet(const OperatorSubspace& v, const OperatorSubspace& w,
                      const Tolerance& tol) {
  require_same_shape(v, w, "meet");
  return complement(join(complement(v, tol), complement(w, tol), tol), tol);
}

double leq_residual(const OperatorSubspace& v, const OperatorSubspace& w) {
  require_same_shape(v, w, "leq");
  const CMatrix qw = w.basis_columns();
  double worst = 0.0;
  for (const auto& b : v.basis()) {
    const CVector x = vectorize(b);
    const CVector r = x - qw * (qw.adjoint() * x);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double membership_residual(const CMatrix& m, const OperatorSubspace& v) {
  require_shape(m, v.codomain_dim(), v.domain_dim(), "membership");
  const double nrm = m.norm();
  if (nrm == 0.0) return 0.0;
  const CVector x = vectorize(m) / nrm;
  const CMatrix q = v.basis_columns();
  return (x - q * (q.adjoint() * x)).norm();
}

bool leq(const OperatorSubspace& v, const OperatorSubspace& w,
         const Tolerance& tol) {
  return leq_residual(v, w) < tol.eq_tol;
}

double projector_distance(const OperatorSubspace& v,
                          const OperatorSubspace& w) {
  require_same_shape(v, w, "eq");
  return (v.projector() - w.projector()).norm();
}

bool eq(const OperatorSubspace& v, const OperatorSubspace& w,
        const Tolerance& tol) {
  if (v.dim() != w.dim()) {
    require_same_shape(v, w, "eq");
    return false;
  }
  return projector_distance(v, w) < tol.eq_tol;
}

bool orthogonal(const OperatorSubspace& v, const OperatorSubspace& w,
                const Tolerance& tol) {
  require_same_shape(v, w, "orthogonal");
  if (v.is_zero() || w.is_zero()) return true;
  return (v.basis_columns().adjoint() * w.basis_columns()).norm() < tol.eq_tol;
}

}  // namespace qsets

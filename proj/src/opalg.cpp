#include "qsets/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "qsets/error.hpp"
#include "qsets/qfun.hpp"

namespace qsets {

BlockOperator::BlockOperator(QuantumSet carrier) : carrier_(std::move(carrier)) {
  for (const auto& a : carrier_.atoms()) {
    blocks_[a.label] = CMatrix::Zero(a.dim, a.dim);
  }
}

BlockOperator BlockOperator::identity(const QuantumSet& carrier) {
  BlockOperator b(carrier);
  for (auto& [label, m] : b.blocks_) m.setIdentity();
  return b;
}

BlockOperator BlockOperator::matrix_unit(const QuantumSet& carrier,
                                         const std::string& label, Index i,
                                         Index j) {
  BlockOperator b(carrier);
  CMatrix& m = b.blocks_.at(carrier.at(label).label);
  if (i < 0 || j < 0 || i >= m.rows() || j >= m.cols()) {
    throw PreconditionError("matrix_unit: index out of range");
  }
  m(i, j) = 1.0;
  return b;
}

const CMatrix& BlockOperator::block(const std::string& label) const {
  auto it = blocks_.find(label);
  if (it == blocks_.end()) {
    throw PreconditionError("block operator has no atom '" + label + "'");
  }
  return it->second;
}

void BlockOperator::set_block(const std::string& label, CMatrix m) {
  const Atom& a = carrier_.at(label);
  if (m.rows() != a.dim || m.cols() != a.dim) {
    throw PreconditionError("block '" + label + "' has wrong shape");
  }
  blocks_[label] = std::move(m);
}

namespace {

void require_same_carrier(const BlockOperator& a, const BlockOperator& b) {
  if (a.carrier() != b.carrier()) {
    throw PreconditionError("block operators live on different quantum sets");
  }
}

}  // namespace

BlockOperator BlockOperator::operator*(const BlockOperator& o) const {
  require_same_carrier(*this, o);
  BlockOperator out(carrier_);
  for (auto& [label, m] : out.blocks_) m = blocks_.at(label) * o.blocks_.at(label);
  return out;
}

BlockOperator BlockOperator::operator+(const BlockOperator& o) const {
  require_same_carrier(*this, o);
  BlockOperator out(carrier_);
  for (auto& [label, m] : out.blocks_) m = blocks_.at(label) + o.blocks_.at(label);
  return out;
}

BlockOperator BlockOperator::operator*(Complex c) const {
  BlockOperator out = *this;
  for (auto& [label, m] : out.blocks_) m *= c;
  return out;
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator out = *this;
  for (auto& [label, m] : out.blocks_) m.adjointInPlace();
  return out;
}

double BlockOperator::norm() const {
  double worst = 0.0;
  for (const auto& [label, m] : blocks_) worst = std::max(worst, m.norm());
  return worst;
}

double distance(const BlockOperator& a, const BlockOperator& b) {
  return (a + b * Complex(-1.0, 0.0)).norm();
}

std::vector<Generator> generators(const QuantumSet& x) {
  std::vector<Generator> out;
  for (const auto& a : x.atoms()) {
    for (Index i = 0; i < a.dim; ++i) {
      for (Index j = 0; j < a.dim; ++j) out.push_back({a.label, i, j});
    }
  }
  return out;
}

BlockOperator star_formula(const Relation& f, const BlockOperator& b) {
  if (b.carrier() != f.target()) {
    throw PreconditionError("star_map: operator is not on the target set");
  }
  BlockOperator out(f.source());
  std::map<std::string, CMatrix> acc;
  for (const auto& a : f.source().atoms()) {
    acc[a.label] = CMatrix::Zero(a.dim, a.dim);
  }
  for (const auto& [key, space] : f.blocks()) {
    const CMatrix& by = b.block(key.second);
    const double dy = static_cast<double>(by.rows());
    for (const auto& w : space.basis()) acc[key.first] += dy * w.adjoint() * by * w;
  }
  for (auto& [label, m] : acc) out.set_block(label, std::move(m));
  return out;
}

BlockOperator star_map(const Relation& f, const BlockOperator& b,
                       const Tolerance& tol) {
  require_partial_function(f, tol, "star_map");
  return star_formula(f, b);
}

double HomomorphismReport::max() const {
  return std::max({multiplicativity, linearity, adjoint});
}

HomomorphismReport star_is_homomorphism(const Relation& f) {
  HomomorphismReport rep;
  const auto gens = generators(f.target());
  std::vector<BlockOperator> units, images;
  for (const auto& g : gens) {
    units.push_back(BlockOperator::matrix_unit(f.target(), g.label, g.i, g.j));
    images.push_back(star_formula(f, units.back()));
  }
  const Complex c(0.6, -0.8);
  for (std::size_t p = 0; p < gens.size(); ++p) {
    rep.adjoint = std::max(
        rep.adjoint,
        distance(star_formula(f, units[p].adjoint()), images[p].adjoint()));
    for (std::size_t q = 0; q < gens.size(); ++q) {
      rep.multiplicativity =
          std::max(rep.multiplicativity, distance(star_formula(f, units[p] * units[q]),
                                                  images[p] * images[q]));
      rep.linearity = std::max(
          rep.linearity, distance(star_formula(f, units[p] + units[q] * c),
                                  images[p] + images[q] * c));
    }
  }
  return rep;
}

double Fission::invariant_residual() const {
  double worst = 0.0;
  for (const auto& [key, e] : entries) {
    const Index n = e.map.rows();
    worst = std::max(worst, (e.map * e.map.adjoint() - CMatrix::Identity(n, n)).norm());
    for (const auto& [key2, e2] : entries) {
      if (key2.first == key.first && key2.second != key.second) {
        worst = std::max(worst, (e.map * e2.map.adjoint()).norm());
      }
    }
  }
  return worst;
}

double Fission::unitality_residual() const {
  double worst = 0.0;
  for (const auto& x : source.atoms()) {
    CMatrix sum = CMatrix::Zero(x.dim, x.dim);
    for (const auto& [key, e] : entries) {
      if (key.first == x.label) sum += e.map.adjoint() * e.map;
    }
    worst = std::max(worst, (sum - CMatrix::Identity(x.dim, x.dim)).norm());
  }
  return worst;
}

Fission fission_from_function(const Relation& f, const Tolerance& tol) {
  require_partial_function(f, tol, "fission_from_function");
  Fission out{f.source(), f.target(), {}};
  for (const auto& [key, space] : f.blocks()) {
    const Index dx = f.source().at(key.first).dim;
    const Index dy = f.target().at(key.second).dim;
    const Index h = space.dim();
    CMatrix m(dy * h, dx);
    const double s = std::sqrt(static_cast<double>(dy));
    for (Index i = 0; i < h; ++i) {
      const CMatrix& w = space.basis()[static_cast<std::size_t>(i)];
      for (Index y = 0; y < dy; ++y) m.row(y * h + i) = s * w.row(y);
    }
    out.entries[key] = {h, std::move(m)};
  }
  return out;
}

Relation function_from_fission(const Fission& f, const Tolerance& tol) {
  if (f.invariant_residual() >= tol.eq_tol) {
    throw PreconditionError("function_from_fission: maps are not orthogonal "
                            "coisometries");
  }
  Relation r(f.source, f.target);
  for (const auto& [key, e] : f.entries) {
    const Index dx = f.source.at(key.first).dim;
    const Index dy = f.target.at(key.second).dim;
    std::vector<CMatrix> ops;
    for (Index i = 0; i < e.h; ++i) {
      CMatrix v(dy, dx);
      for (Index y = 0; y < dy; ++y) v.row(y) = e.map.row(y * e.h + i);
      ops.push_back(std::move(v));
    }
    r.set_block(key.first, key.second, span(dx, dy, ops, tol));
  }
  return r;
}

BlockOperator fission_apply(const Fission& f, const BlockOperator& b) {
  if (b.carrier() != f.target) {
    throw PreconditionError("fission_apply: operator is not on the target set");
  }
  BlockOperator out(f.source);
  std::map<std::string, CMatrix> acc;
  for (const auto& a : f.source.atoms()) acc[a.label] = CMatrix::Zero(a.dim, a.dim);
  for (const auto& [key, e] : f.entries) {
    const CMatrix lifted = kron(b.block(key.second), CMatrix::Identity(e.h, e.h));
    acc[key.first] += e.map.adjoint() * lifted * e.map;
  }
  for (auto& [label, m] : acc) out.set_block(label, std::move(m));
  return out;
}

Fission identity_fission(const QuantumSet& x) {
  Fission out{x, x, {}};
  for (const auto& a : x.atoms()) {
    out.entries[{a.label, a.label}] = {1, CMatrix::Identity(a.dim, a.dim)};
  }
  return out;
}

Fission fission_compose(const Fission& g, const Fission& f) {
  if (f.target != g.source) {
    throw PreconditionError("fission_compose: middle quantum sets differ");
  }
  std::map<std::string, std::vector<std::pair<std::string, const FissionEntry*>>>
      from_middle;
  for (const auto& [key, e] : g.entries) {
    from_middle[key.first].push_back({key.second, &e});
  }
  // Collect, per (X, Z), the summands indexed by the middle atom Y in label
  // order; this fixes the layout of the direct sum of coefficient spaces.
  std::map<BlockKey, std::vector<std::pair<const FissionEntry*, const FissionEntry*>>>
      terms;
  for (const auto& [key, fe] : f.entries) {
    auto it = from_middle.find(key.second);
    if (it == from_middle.end()) continue;
    for (const auto& [z, ge] : it->second) terms[{key.first, z}].push_back({ge, &fe});
  }
  Fission out{f.source, g.target, {}};
  for (const auto& [key, list] : terms) {
    const Index dx = f.source.at(key.first).dim;
    const Index dz = g.target.at(key.second).dim;
    Index total = 0;
    for (const auto& [ge, fe] : list) total += ge->h * fe->h;
    CMatrix m = CMatrix::Zero(dz * total, dx);
    Index offset = 0;
    for (const auto& [ge, fe] : list) {
      const Index kh = ge->h * fe->h;
      const CMatrix part = kron(ge->map, CMatrix::Identity(fe->h, fe->h)) * fe->map;
      for (Index z = 0; z < dz; ++z) {
        m.middleRows(z * total + offset, kh) = part.middleRows(z * kh, kh);
      }
      offset += kh;
    }
    out.entries[key] = {total, std::move(m)};
  }
  return out;
}

Fission fission_tensor(const Fission& f1, const Fission& f2) {
  Fission out{cartesian_product(f1.source, f2.source),
              cartesian_product(f1.target, f2.target),
              {}};
  for (const auto& [k1, e1] : f1.entries) {
    const Index d1 = f1.target.at(k1.second).dim;
    for (const auto& [k2, e2] : f2.entries) {
      const Index d2 = f2.target.at(k2.second).dim;
      const CMatrix prod = kron(e1.map, e2.map);
      const Index h = e1.h * e2.h;
      CMatrix m(prod.rows(), prod.cols());
      // Row (y1 h1 + i1)(d2 h2) + y2 h2 + i2 moves to (y1 d2 + y2) h + i1 h2 + i2.
      for (Index y1 = 0; y1 < d1; ++y1)
        for (Index i1 = 0; i1 < e1.h; ++i1)
          for (Index y2 = 0; y2 < d2; ++y2)
            for (Index i2 = 0; i2 < e2.h; ++i2) {
              const Index from = (y1 * e1.h + i1) * (d2 * e2.h) + y2 * e2.h + i2;
              const Index to = (y1 * d2 + y2) * h + i1 * e2.h + i2;
              m.row(to) = prod.row(from);
            }
      out.entries[{pair_label(k1.first, k2.first), pair_label(k1.second, k2.second)}] =
          {h, std::move(m)};
    }
  }
  return out;
}

BlockOperator Homomorphism::apply(const BlockOperator& b) const {
  if (b.carrier() != domain) {
    throw PreconditionError("homomorphism: operator is not on the domain set");
  }
  BlockOperator out(codomain);
  for (const auto& [label, m] : b.blocks()) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        if (m(i, j) != Complex(0.0, 0.0)) {
          out = out + images.at({label, i, j}) * m(i, j);
        }
      }
    }
  }
  return out;
}

double Homomorphism::homomorphism_residual() const {
  double worst = 0.0;
  const auto gens = generators(domain);
  for (const auto& p : gens) {
    const BlockOperator& ip = images.at({p.label, p.i, p.j});
    worst = std::max(worst, distance(images.at({p.label, p.j, p.i}), ip.adjoint()));
    for (const auto& q : gens) {
      const BlockOperator& iq = images.at({q.label, q.i, q.j});
      const BlockOperator prod = ip * iq;
      if (p.label == q.label && p.j == q.i) {
        worst = std::max(worst, distance(prod, images.at({p.label, p.i, q.j})));
      } else {
        worst = std::max(worst, prod.norm());
      }
    }
  }
  return worst;
}

Homomorphism homomorphism_of(const Relation& f, const Tolerance& tol) {
  require_partial_function(f, tol, "homomorphism_of");
  Homomorphism phi{f.target(), f.source(), {}};
  for (const auto& g : generators(f.target())) {
    phi.images[{g.label, g.i, g.j}] = star_formula(
        f, BlockOperator::matrix_unit(f.target(), g.label, g.i, g.j));
  }
  return phi;
}

Homomorphism homomorphism_of(const Fission& f) {
  Homomorphism phi{f.target, f.source, {}};
  for (const auto& g : generators(f.target)) {
    phi.images[{g.label, g.i, g.j}] =
        fission_apply(f, BlockOperator::matrix_unit(f.target, g.label, g.i, g.j));
  }
  return phi;
}

Relation function_from_homomorphism(const Homomorphism& phi, const Tolerance& tol) {
  if (phi.images.size() != generators(phi.domain).size()) {
    throw PreconditionError("homomorphism: image table is incomplete");
  }
  for (const auto& [key, img] : phi.images) {
    if (img.carrier() != phi.codomain) {
      throw PreconditionError("homomorphism: image on the wrong quantum set");
    }
  }
  const double res = phi.homomorphism_residual();
  if (!(res < tol.eq_tol)) {
    throw PreconditionError("homomorphism: not a *-homomorphism (residual " +
                            std::to_string(res) + ")");
  }
  const auto gens = generators(phi.domain);
  Relation r(phi.codomain, phi.domain);
  for (const auto& x : phi.codomain.atoms()) {
    for (const auto& y : phi.domain.atoms()) {
      // vec(b v - v phi(b)) = (1 (x) b - phi(b)^T (x) 1) vec(v), column-major.
      const Index n = x.dim * y.dim;
      CMatrix system(n * static_cast<Index>(gens.size()), n);
      Index row = 0;
      for (const auto& g : gens) {
        CMatrix by = CMatrix::Zero(y.dim, y.dim);
        if (g.label == y.label) by(g.i, g.j) = 1.0;
        const CMatrix& px = phi.images.at({g.label, g.i, g.j}).block(x.label);
        system.middleRows(row, n) = kron(CMatrix::Identity(x.dim, x.dim), by) -
                                    kron(px.transpose(), CMatrix::Identity(y.dim, y.dim));
        row += n;
      }
      const CMatrix ns = null_space(system, tol);
      std::vector<CMatrix> ops;
      for (Index k = 0; k < ns.cols(); ++k) {
        ops.push_back(unvectorize(ns.col(k), y.dim, x.dim));
      }
      r.set_block(x.label, y.label, span(x.dim, y.dim, ops, tol));
    }
  }
  return r;
}

bool is_unital(const Relation& f, const Tolerance& tol) {
  return distance(star_map(f, BlockOperator::identity(f.target()), tol),
                  BlockOperator::identity(f.source())) < tol.eq_tol;
}

bool star_injective(const Relation& f, const Tolerance& tol) {
  require_partial_function(f, tol, "star_injective");
  // The kernel of a *-homomorphism out of l(Y) is a sum of whole atoms.
  for (const auto& y : f.target().atoms()) {
    BlockOperator e(f.target());
    e.set_block(y.label, CMatrix::Identity(y.dim, y.dim));
    if (star_formula(f, e).norm() < tol.eq_tol) return false;
  }
  return true;
}

bool star_surjective(const Relation& f, const Tolerance& tol) {
  require_partial_function(f, tol, "star_surjective");
  const Index n = f.source().total_square_dim();
  if (n == 0) return true;
  const auto gens = generators(f.target());
  CMatrix stack(n, static_cast<Index>(gens.size()));
  Index col = 0;
  for (const auto& g : gens) {
    const BlockOperator img = star_formula(
        f, BlockOperator::matrix_unit(f.target(), g.label, g.i, g.j));
    Index row = 0;
    for (const auto& [label, m] : img.blocks()) {
      stack.col(col).segment(row, m.size()) = vectorize(m);
      row += m.size();
    }
    ++col;
  }
  return orthonormal_range(stack, tol).cols() == n;
}

namespace {

std::string value_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

SpectralResult spectral_function(const BlockOperator& a, const Tolerance& tol) {
  struct Eigen1 {
    double value;
    std::string atom;
    CVector vec;
  };
  std::vector<Eigen1> all;
  for (const auto& [label, m] : a.blocks()) {
    if ((m - m.adjoint()).norm() >= tol.eq_tol) {
      throw PreconditionError("spectral_function: block '" + label +
                              "' is not self-adjoint");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
    for (Index k = 0; k < m.rows(); ++k) {
      all.push_back({es.eigenvalues()(k), label, es.eigenvectors().col(k)});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Eigen1& p, const Eigen1& q) { return p.value < q.value; });
  // Single-linkage clustering: a gap wider than eq_tol starts a new cluster.
  std::vector<std::size_t> cluster(all.size());
  std::vector<double> sums;
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (k == 0 || all[k].value - all[k - 1].value > tol.eq_tol) {
      sums.push_back(0.0);
      counts.push_back(0);
    }
    cluster[k] = sums.size() - 1;
    sums.back() += all[k].value;
    ++counts.back();
  }
  SpectralResult out;
  std::set<std::string> seen;
  for (std::size_t c = 0; c < sums.size(); ++c) {
    const double v = sums[c] / static_cast<double>(counts[c]);
    std::string label = value_label(v);
    for (int k = 1; seen.count(label) != 0; ++k) label = value_label(v) + "~" + std::to_string(k);
    seen.insert(label);
    out.values.push_back(v);
    out.labels.push_back(label);
  }
  Relation f(a.carrier(), classical_embed(out.labels));
  std::map<BlockKey, std::vector<CMatrix>> rows;
  for (std::size_t k = 0; k < all.size(); ++k) {
    rows[{all[k].atom, out.labels[cluster[k]]}].push_back(all[k].vec.adjoint());
  }
  for (const auto& [key, ops] : rows) {
    f.set_block(key.first, key.second,
                span(a.carrier().at(key.first).dim, 1, ops, tol));
  }
  out.function = std::move(f);
  return out;
}

BlockOperator spectral_values(const SpectralResult& s) {
  BlockOperator r(s.function.target());
  for (std::size_t k = 0; k < s.labels.size(); ++k) {
    r.set_block(s.labels[k], CMatrix::Constant(1, 1, s.values[k]));
  }
  return r;
}

}  // namespace qsets

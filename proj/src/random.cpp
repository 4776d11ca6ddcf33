#include "qsets/random.hpp"

#include <algorithm>
#include <numeric>

#include "qsets/error.hpp"

namespace qsets {

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

CMatrix random_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> n;
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

CMatrix random_unitary(Rng& rng, Index n) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, n, n));
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

OperatorSubspace random_subspace(Rng& rng, Index dom, Index cod, Index k) {
  std::vector<CMatrix> gens;
  for (Index i = 0; i < k; ++i) gens.push_back(random_matrix(rng, cod, dom));
  return span(dom, cod, gens);
}

QuantumSet random_qset(Rng& rng, int max_atoms, int max_dim,
                       const std::string& prefix) {
  std::uniform_int_distribution<int> na(1, max_atoms), nd(1, max_dim);
  const int n = na(rng);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({prefix + std::to_string(i), nd(rng), false});
  }
  return QuantumSet(std::move(atoms));
}

Relation random_relation(Rng& rng, const QuantumSet& x, const QuantumSet& y,
                         double density, Index max_block_dim) {
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<Index> k(1, max_block_dim);
  Relation r(x, y);
  for (const auto& a : x.atoms()) {
    for (const auto& b : y.atoms()) {
      if (present(rng)) {
        r.set_block(a.label, b.label, random_subspace(rng, a.dim, b.dim, k(rng)));
      }
    }
  }
  return r;
}

std::set<BlockKey> random_pairs(Rng& rng, const QuantumSet& s,
                                const QuantumSet& t) {
  std::bernoulli_distribution coin(0.5);
  std::set<BlockKey> out;
  for (const auto& a : s.atoms()) {
    for (const auto& b : t.atoms()) {
      if (coin(rng)) out.insert({a.label, b.label});
    }
  }
  return out;
}

namespace {

// Splits the rows of a unitary on one source atom into coisometries, one per
// target with multiplicity h[Y] > 0, and records the spanned blocks. The row
// y*h + i of a coisometry is the (y, .) row of the i-th basis operator.
void emit_atom(Rng& rng, Relation& r, const Atom& x,
               const std::vector<std::pair<const Atom*, Index>>& split) {
  const CMatrix u = random_unitary(rng, x.dim);
  Index row = 0;
  for (const auto& [y, h] : split) {
    if (h == 0) continue;
    const CMatrix f = u.middleRows(row, y->dim * h);
    row += y->dim * h;
    std::vector<CMatrix> ops;
    for (Index i = 0; i < h; ++i) {
      CMatrix v(y->dim, x.dim);
      for (Index yy = 0; yy < y->dim; ++yy) v.row(yy) = f.row(yy * h + i);
      ops.push_back(v);
    }
    r.set_block(x.label, y->label, span(x.dim, y->dim, ops));
  }
}

}  // namespace

Relation random_function_from(Rng& rng, const QuantumSet& x, const QuantumSet& y,
                              FunctionShape shape) {
  const Atom* line = nullptr;
  for (const auto& b : y.atoms()) {
    if (b.dim == 1) line = &b;
  }
  if (line == nullptr && !x.empty() && !shape.non_unital) {
    throw PreconditionError("random_function_from: target needs a 1-dim atom");
  }
  Relation r(x, y);
  for (const auto& a : x.atoms()) {
    Index budget = a.dim;
    if (shape.non_unital) {
      std::uniform_int_distribution<Index> lose(1, a.dim);
      budget -= lose(rng);
    }
    std::map<const Atom*, Index> h;
    std::vector<const Atom*> order;
    for (const auto& b : y.atoms()) order.push_back(&b);
    std::shuffle(order.begin(), order.end(), rng);
    for (const Atom* b : order) {
      const Index cap = budget / b->dim;
      if (cap == 0) continue;
      std::uniform_int_distribution<Index> take(0, cap);
      const Index t = take(rng);
      h[b] += t;
      budget -= t * b->dim;
    }
    if (!shape.non_unital) h[line] += budget;
    std::vector<std::pair<const Atom*, Index>> split(h.begin(), h.end());
    std::shuffle(split.begin(), split.end(), rng);
    emit_atom(rng, r, a, split);
  }
  return r;
}

Relation random_function_into(Rng& rng, const QuantumSet& y, int max_atoms,
                              int max_dim, FunctionShape shape) {
  std::uniform_int_distribution<int> na(1, max_atoms);
  std::uniform_int_distribution<Index> hd(0, 2);
  const int n = y.empty() ? 0 : na(rng);
  std::vector<Atom> atoms;
  std::vector<std::vector<std::pair<const Atom*, Index>>> splits;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<const Atom*, Index>> split;
    Index dim = 0;
    for (const auto& b : y.atoms()) {
      const Index h = hd(rng);
      if (h > 0 && dim + h * b.dim <= max_dim) {
        split.push_back({&b, h});
        dim += h * b.dim;
      }
    }
    if (dim == 0 && !shape.non_unital) {
      // Every atom of a function must land somewhere; take the smallest target.
      const Atom* best = &y.atoms().front();
      for (const auto& b : y.atoms()) {
        if (b.dim < best->dim) best = &b;
      }
      split.push_back({best, 1});
      dim = best->dim;
    }
    if (shape.non_unital) {
      std::uniform_int_distribution<Index> lost(1, 2);
      dim += lost(rng);
    }
    atoms.push_back({"s" + std::to_string(i), dim, false});
    splits.push_back(std::move(split));
  }
  const QuantumSet x(atoms);
  Relation r(x, y);
  for (int i = 0; i < n; ++i) {
    // x.atoms() is sorted; look the atom up by label.
    emit_atom(rng, r, x.at(atoms[static_cast<std::size_t>(i)].label),
              splits[static_cast<std::size_t>(i)]);
  }
  return r;
}

Relation random_injective_function(Rng& rng, const QuantumSet& x, int extra) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < x.size() + static_cast<std::size_t>(extra); ++i) {
    names.push_back("t" + std::to_string(i));
  }
  std::shuffle(names.begin(), names.end(), rng);
  std::vector<Atom> atoms;
  std::uniform_int_distribution<Index> nd(1, 3);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const Index dim = i < x.size() ? x.atoms()[i].dim : nd(rng);
    atoms.push_back({names[i], dim, false});
  }
  Relation r(x, QuantumSet(atoms));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Atom& a = x.atoms()[i];
    r.set_block(a.label, names[i],
                span(a.dim, a.dim, std::vector<CMatrix>{random_unitary(rng, a.dim)}));
  }
  return r;
}

Relation rerandomize_bases(Rng& rng, const Relation& r) {
  Relation out(r.source(), r.target());
  for (const auto& [key, space] : r.blocks()) {
    const CMatrix u = random_unitary(rng, space.dim());
    std::vector<CMatrix> basis;
    for (Index i = 0; i < space.dim(); ++i) {
      CMatrix m = CMatrix::Zero(space.codomain_dim(), space.domain_dim());
      for (Index j = 0; j < space.dim(); ++j) {
        m += u(j, i) * space.basis()[static_cast<std::size_t>(j)];
      }
      basis.push_back(std::move(m));
    }
    out.set_block(key.first, key.second,
                  OperatorSubspace::from_orthonormal(space.domain_dim(),
                                                     space.codomain_dim(),
                                                     std::move(basis)));
  }
  return out;
}

}  // namespace qsets

#include "qsets/qrel.hpp"

#include <algorithm>

#include "qsets/error.hpp"

namespace qsets {

namespace {

OperatorSubspace line(const CMatrix& m) {
  return span(m.cols(), m.rows(), std::vector<CMatrix>{m});
}

OperatorSubspace identity_line(Index d) {
  return line(CMatrix::Identity(d, d));
}

void require_endpoints(const Relation& r, const Relation& s, const char* where) {
  if (r.source() != s.source() || r.target() != s.target()) {
    throw PreconditionError(std::string(where) +
                            ": relations have different source or target");
  }
}

template <typename Op>
Relation blockwise(const Relation& r, const Relation& s, Op op) {
  Relation out(r.source(), r.target());
  for (const auto& x : r.source().atoms()) {
    for (const auto& y : r.target().atoms()) {
      out.set_block(x.label, y.label,
                    op(r.block(x.label, y.label), s.block(x.label, y.label)));
    }
  }
  return out;
}

}  // namespace

Relation::Relation(QuantumSet source, QuantumSet target)
    : source_(std::move(source)), target_(std::move(target)) {}

OperatorSubspace Relation::block(const std::string& from,
                                 const std::string& to) const {
  auto it = blocks_.find({from, to});
  if (it != blocks_.end()) return it->second;
  return OperatorSubspace(source_.at(from).dim, target_.at(to).dim);
}

void Relation::set_block(const std::string& from, const std::string& to,
                         OperatorSubspace space) {
  const Atom& x = source_.at(from);
  const Atom& y = target_.at(to);
  if (space.domain_dim() != x.dim || space.codomain_dim() != y.dim) {
    throw PreconditionError("block (" + from + "," + to + ") has wrong shape");
  }
  if (space.is_zero()) {
    blocks_.erase({from, to});
  } else {
    blocks_[{from, to}] = std::move(space);
  }
}

Relation compose(const Relation& s, const Relation& r, const Tolerance& tol) {
  if (r.target() != s.source()) {
    throw PreconditionError("compose: target of the first relation differs "
                            "from the source of the second");
  }
  // Gather S's blocks per middle atom once, then sweep R's blocks.
  std::map<std::string, std::vector<std::pair<std::string, const OperatorSubspace*>>>
      outgoing;
  for (const auto& [key, space] : s.blocks()) {
    outgoing[key.first].push_back({key.second, &space});
  }
  std::map<BlockKey, std::vector<CMatrix>> products;
  for (const auto& [key, rv] : r.blocks()) {
    auto it = outgoing.find(key.second);
    if (it == outgoing.end()) continue;
    for (const auto& [z, sw] : it->second) {
      const OperatorSubspace p = subspace_product(*sw, rv, tol);
      auto& acc = products[{key.first, z}];
      acc.insert(acc.end(), p.basis().begin(), p.basis().end());
    }
  }
  Relation out(r.source(), s.target());
  for (auto& [key, mats] : products) {
    const Index dom = r.source().at(key.first).dim;
    const Index cod = s.target().at(key.second).dim;
    out.set_block(key.first, key.second, span(dom, cod, mats, tol));
  }
  return out;
}

Relation identity(const QuantumSet& x) {
  Relation out(x, x);
  for (const auto& a : x.atoms()) {
    out.set_block(a.label, a.label, identity_line(a.dim));
  }
  return out;
}

Relation dagger(const Relation& r) {
  Relation out(r.target(), r.source());
  for (const auto& [key, space] : r.blocks()) {
    out.set_block(key.second, key.first, subspace_dagger(space));
  }
  return out;
}

Relation dual(const Relation& r) {
  Relation out(dual_set(r.target()), dual_set(r.source()));
  for (const auto& [key, space] : r.blocks()) {
    out.set_block(key.second, key.first, subspace_transpose_dual(space));
  }
  return out;
}

Relation times(const Relation& r1, const Relation& r2) {
  Relation out(cartesian_product(r1.source(), r2.source()),
               cartesian_product(r1.target(), r2.target()));
  for (const auto& [k1, v1] : r1.blocks()) {
    for (const auto& [k2, v2] : r2.blocks()) {
      out.set_block(pair_label(k1.first, k2.first),
                    pair_label(k1.second, k2.second), subspace_tensor(v1, v2));
    }
  }
  return out;
}

Relation rel_join(const Relation& r, const Relation& s, const Tolerance& tol) {
  require_endpoints(r, s, "rel_join");
  return blockwise(r, s, [&](const auto& a, const auto& b) {
    return join(a, b, tol);
  });
}

Relation rel_meet(const Relation& r, const Relation& s, const Tolerance& tol) {
  require_endpoints(r, s, "rel_meet");
  return blockwise(r, s, [&](const auto& a, const auto& b) {
    return meet(a, b, tol);
  });
}

Relation rel_neg(const Relation& r, const Tolerance& tol) {
  return blockwise(r, r, [&](const auto& a, const auto&) {
    return complement(a, tol);
  });
}

bool rel_leq(const Relation& r, const Relation& s, const Tolerance& tol) {
  require_endpoints(r, s, "rel_leq");
  return std::all_of(r.blocks().begin(), r.blocks().end(), [&](const auto& kv) {
    return leq(kv.second, s.block(kv.first.first, kv.first.second), tol);
  });
}

bool rel_perp(const Relation& r, const Relation& s, const Tolerance& tol) {
  require_endpoints(r, s, "rel_perp");
  return std::all_of(r.blocks().begin(), r.blocks().end(), [&](const auto& kv) {
    return orthogonal(kv.second, s.block(kv.first.first, kv.first.second), tol);
  });
}

Relation rel_top(const QuantumSet& x, const QuantumSet& y) {
  Relation out(x, y);
  for (const auto& a : x.atoms()) {
    for (const auto& b : y.atoms()) {
      out.set_block(a.label, b.label, OperatorSubspace::full(a.dim, b.dim));
    }
  }
  return out;
}

double rel_distance(const Relation& r, const Relation& s) {
  require_endpoints(r, s, "rel_distance");
  double worst = 0.0;
  std::set<BlockKey> keys;
  for (const auto& kv : r.blocks()) keys.insert(kv.first);
  for (const auto& kv : s.blocks()) keys.insert(kv.first);
  for (const auto& k : keys) {
    worst = std::max(worst, projector_distance(r.block(k.first, k.second),
                                               s.block(k.first, k.second)));
  }
  return worst;
}

bool rel_eq(const Relation& r, const Relation& s, const Tolerance& tol) {
  return rel_distance(r, s) < tol.eq_tol;
}

CMatrix swap_matrix(Index m, Index n) {
  CMatrix p = CMatrix::Zero(m * n, m * n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) p(j * m + i, i * n + j) = 1.0;
  }
  return p;
}

Relation unit(const QuantumSet& x) {
  const QuantumSet target = cartesian_product(x, dual_set(x));
  Relation out(unit_set(), target);
  for (const auto& a : x.atoms()) {
    CMatrix eta = CMatrix::Zero(a.dim * a.dim, 1);
    for (Index i = 0; i < a.dim; ++i) eta(i * a.dim + i, 0) = 1.0;
    out.set_block("*", pair_label(a.label, a.label), line(eta));
  }
  return out;
}

Relation counit(const QuantumSet& x) {
  const QuantumSet source = cartesian_product(dual_set(x), x);
  Relation out(source, unit_set());
  for (const auto& a : x.atoms()) {
    CMatrix eps = CMatrix::Zero(1, a.dim * a.dim);
    for (Index i = 0; i < a.dim; ++i) eps(0, i * a.dim + i) = 1.0;
    out.set_block(pair_label(a.label, a.label), "*", line(eps));
  }
  return out;
}

Relation braiding(const QuantumSet& x, const QuantumSet& y) {
  Relation out(cartesian_product(x, y), cartesian_product(y, x));
  for (const auto& a : x.atoms()) {
    for (const auto& b : y.atoms()) {
      out.set_block(pair_label(a.label, b.label), pair_label(b.label, a.label),
                    line(swap_matrix(a.dim, b.dim)));
    }
  }
  return out;
}

Relation associator(const QuantumSet& x, const QuantumSet& y,
                    const QuantumSet& z) {
  Relation out(cartesian_product(cartesian_product(x, y), z),
               cartesian_product(x, cartesian_product(y, z)));
  for (const auto& a : x.atoms()) {
    for (const auto& b : y.atoms()) {
      for (const auto& c : z.atoms()) {
        out.set_block(pair_label(pair_label(a.label, b.label), c.label),
                      pair_label(a.label, pair_label(b.label, c.label)),
                      identity_line(a.dim * b.dim * c.dim));
      }
    }
  }
  return out;
}

Relation left_unitor(const QuantumSet& x) {
  Relation out(cartesian_product(unit_set(), x), x);
  for (const auto& a : x.atoms()) {
    out.set_block(pair_label("*", a.label), a.label, identity_line(a.dim));
  }
  return out;
}

Relation right_unitor(const QuantumSet& x) {
  Relation out(cartesian_product(x, unit_set()), x);
  for (const auto& a : x.atoms()) {
    out.set_block(pair_label(a.label, "*"), a.label, identity_line(a.dim));
  }
  return out;
}

Relation inj_left(const QuantumSet& x, const QuantumSet& y) {
  Relation out(x, disjoint_union(x, y));
  for (const auto& a : x.atoms()) {
    out.set_block(a.label, pair_label(a.label, "0"), identity_line(a.dim));
  }
  return out;
}

Relation inj_right(const QuantumSet& x, const QuantumSet& y) {
  Relation out(y, disjoint_union(x, y));
  for (const auto& b : y.atoms()) {
    out.set_block(b.label, pair_label(b.label, "1"), identity_line(b.dim));
  }
  return out;
}

Relation copair(const Relation& r, const Relation& s) {
  if (r.target() != s.target()) {
    throw PreconditionError("copair: relations have different targets");
  }
  Relation out(disjoint_union(r.source(), s.source()), r.target());
  for (const auto& [key, space] : r.blocks()) {
    out.set_block(pair_label(key.first, "0"), key.second, space);
  }
  for (const auto& [key, space] : s.blocks()) {
    out.set_block(pair_label(key.first, "1"), key.second, space);
  }
  return out;
}

Relation relabel(const Relation& r, const QuantumSet& new_source,
                 const LabelMap& source_map, const QuantumSet& new_target,
                 const LabelMap& target_map) {
  auto lookup = [](const LabelMap& m, const std::string& l) {
    auto it = m.find(l);
    if (it == m.end()) throw PreconditionError("relabel: no image for '" + l + "'");
    return it->second;
  };
  Relation out(new_source, new_target);
  for (const auto& [key, space] : r.blocks()) {
    out.set_block(lookup(source_map, key.first), lookup(target_map, key.second),
                  space);
  }
  return out;
}

Relation classical_relation(const QuantumSet& s, const QuantumSet& t,
                            const std::set<BlockKey>& pairs) {
  Relation out(s, t);
  for (const auto& [a, b] : pairs) {
    if (s.at(a).dim != 1 || t.at(b).dim != 1) {
      throw PreconditionError("classical_relation: atoms must be 1-dimensional");
    }
    out.set_block(a, b, identity_line(1));
  }
  return out;
}

}  // namespace qsets

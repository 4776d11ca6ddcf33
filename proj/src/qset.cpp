#include "qsets/qset.hpp"

#include <algorithm>

#include "qsets/error.hpp"

namespace qsets {

QuantumSet::QuantumSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.label < b.label; });
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].dim < 1) {
      throw PreconditionError("atom '" + atoms_[i].label + "' has dim < 1");
    }
    if (i > 0 && atoms_[i].label == atoms_[i - 1].label) {
      throw PreconditionError("duplicate atom label '" + atoms_[i].label + "'");
    }
  }
}

const Atom* QuantumSet::find(const std::string& label) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), label,
      [](const Atom& a, const std::string& l) { return a.label < l; });
  if (it == atoms_.end() || it->label != label) return nullptr;
  return &*it;
}

const Atom& QuantumSet::at(const std::string& label) const {
  const Atom* a = find(label);
  if (a == nullptr) throw PreconditionError("no atom labelled '" + label + "'");
  return *a;
}

Index QuantumSet::total_square_dim() const {
  Index n = 0;
  for (const auto& a : atoms_) n += a.dim * a.dim;
  return n;
}

std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + a + "|" + b + ")";
}

QuantumSet classical_embed(const std::vector<std::string>& labels) {
  std::vector<Atom> atoms;
  atoms.reserve(labels.size());
  for (const auto& l : labels) atoms.push_back({l, 1, false});
  return QuantumSet(std::move(atoms));
}

QuantumSet unit_set() { return QuantumSet({{"*", 1, false}}); }

QuantumSet cartesian_product(const QuantumSet& x, const QuantumSet& y) {
  std::vector<Atom> atoms;
  for (const auto& a : x.atoms()) {
    for (const auto& b : y.atoms()) {
      atoms.push_back({pair_label(a.label, b.label), a.dim * b.dim, false});
    }
  }
  return QuantumSet(std::move(atoms));
}

QuantumSet disjoint_union(const QuantumSet& x, const QuantumSet& y) {
  std::vector<Atom> atoms;
  for (const auto& a : x.atoms()) {
    atoms.push_back({pair_label(a.label, "0"), a.dim, a.dual});
  }
  for (const auto& b : y.atoms()) {
    atoms.push_back({pair_label(b.label, "1"), b.dim, b.dual});
  }
  return QuantumSet(std::move(atoms));
}

QuantumSet dual_set(const QuantumSet& x) {
  std::vector<Atom> atoms = x.atoms();
  for (auto& a : atoms) a.dual = !a.dual;
  return QuantumSet(std::move(atoms));
}

std::optional<LabelMap> isomorphic(const QuantumSet& x, const QuantumSet& y) {
  if (x.size() != y.size()) return std::nullopt;
  // Bucket by dimension; labels within a bucket pair up in sorted order.
  std::map<Index, std::vector<std::string>> pool;
  for (const auto& b : y.atoms()) pool[b.dim].push_back(b.label);
  std::map<Index, std::size_t> used;
  LabelMap out;
  for (const auto& a : x.atoms()) {
    auto it = pool.find(a.dim);
    if (it == pool.end() || used[a.dim] >= it->second.size()) return std::nullopt;
    out[a.label] = it->second[used[a.dim]++];
  }
  return out;
}

bool is_subset(const QuantumSet& sub, const QuantumSet& parent) {
  return std::all_of(sub.atoms().begin(), sub.atoms().end(), [&](const Atom& a) {
    const Atom* p = parent.find(a.label);
    return p != nullptr && *p == a;
  });
}

QuantumSet union_within(const QuantumSet& parent, const QuantumSet& a,
                        const QuantumSet& b) {
  if (!is_subset(a, parent) || !is_subset(b, parent)) {
    throw PreconditionError("union: operands must be subsets of the parent");
  }
  std::vector<Atom> atoms = a.atoms();
  for (const auto& at : b.atoms()) {
    if (!a.contains(at.label)) atoms.push_back(at);
  }
  return QuantumSet(std::move(atoms));
}

QuantumSet subset(const QuantumSet& parent,
                  const std::vector<std::string>& labels) {
  std::vector<Atom> atoms;
  for (const auto& l : labels) atoms.push_back(parent.at(l));
  return QuantumSet(std::move(atoms));
}

}  // namespace qsets

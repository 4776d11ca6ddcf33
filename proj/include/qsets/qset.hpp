#ifndef QSETS_QSET_HPP
#define QSETS_QSET_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsets/linalg.hpp"

namespace qsets {

struct Atom {
  std::string label;
  Index dim = 1;
  bool dual = false;

  bool operator==(const Atom&) const = default;
};

/// A finite quantum set. Atoms are kept sorted by label, so two sets with the
/// same atoms compare equal regardless of construction order.
class QuantumSet {
 public:
  QuantumSet() = default;
  /// Throws PreconditionError on duplicate labels or dim < 1.
  explicit QuantumSet(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }

  const Atom* find(const std::string& label) const;
  /// Throws PreconditionError if the label is absent.
  const Atom& at(const std::string& label) const;
  bool contains(const std::string& label) const { return find(label) != nullptr; }

  /// Sum of dim^2 over atoms: the dimension of l(X).
  Index total_square_dim() const;

  bool operator==(const QuantumSet&) const = default;

 private:
  std::vector<Atom> atoms_;
};

using LabelMap = std::map<std::string, std::string>;

std::string pair_label(const std::string& a, const std::string& b);

/// One 1-dimensional atom per label.
QuantumSet classical_embed(const std::vector<std::string>& labels);
/// The monoidal unit: a single 1-dimensional atom labelled "*".
QuantumSet unit_set();
QuantumSet cartesian_product(const QuantumSet& x, const QuantumSet& y);
/// Left atoms become "(a|0)", right atoms "(b|1)".
QuantumSet disjoint_union(const QuantumSet& x, const QuantumSet& y);
QuantumSet dual_set(const QuantumSet& x);
/// A dimension-preserving bijection of labels, if one exists.
std::optional<LabelMap> isomorphic(const QuantumSet& x, const QuantumSet& y);

/// True when every atom of `sub` occurs in `parent` with the same dim and flag.
bool is_subset(const QuantumSet& sub, const QuantumSet& parent);
/// Union of two subsets of a common parent. Atoms are identified by label, so
/// the union is only meaningful relative to that parent.
QuantumSet union_within(const QuantumSet& parent, const QuantumSet& a,
                        const QuantumSet& b);
/// The subset of `parent` with the given labels.
QuantumSet subset(const QuantumSet& parent, const std::vector<std::string>& labels);

}  // namespace qsets

#endif  // QSETS_QSET_HPP

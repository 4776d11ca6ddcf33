#ifndef QSETS_COLORING_HPP
#define QSETS_COLORING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsets/linalg.hpp"
#include "qsets/qrel.hpp"

namespace qsets {

/// A simple graph on labelled vertices.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  /// Throws PreconditionError on loops, unknown endpoints or duplicate labels.
  void validate() const;
  static Graph complete(int n);
  static Graph cycle(int n);
};

/// Projections p_gt on C^dim, one per vertex and color.
struct ColoringFamily {
  Index dim = 1;
  std::vector<std::string> colors;
  std::map<std::pair<std::string, std::string>, CMatrix> projections;

  const CMatrix& at(const std::string& vertex, const std::string& color) const;
  /// Every p_gt is a projection and sum_t p_gt = 1 for every vertex of g.
  /// Throws PreconditionError naming the first violation.
  void validate(const Graph& g, const Tolerance& tol = {}) const;
};

struct ColoringReport {
  bool pass = false;
  /// max ||p_{g1 t} p_{g2 t}||_F over edges and colors.
  double violation = 0.0;
  /// The same quantity computed from inverse-image predicates.
  bool predicate_pass = false;
  double predicate_violation = 0.0;
};

/// Label of the single index atom in `G x H.
inline constexpr const char* kIndexAtom = "H";

/// Checks orthogonality on every edge twice: directly on the projections, and
/// through the function F : `G x H -> `T by pulling back the color points
/// along F_g = F o (`cst_g x I).
ColoringReport verify(const Graph& g, const ColoringFamily& fam,
                      const Tolerance& tol = {});

/// The function `G x H -> `T whose block at ((g|H), t) is spanned by the rows
/// of p_gt.
Relation to_function(const Graph& g, const ColoringFamily& fam,
                     const Tolerance& tol = {});
/// p_gt = F*(delta_t) at the atom (g|H). The source must be `G x H with a
/// single index atom and the target classical.
ColoringFamily from_function(const Relation& f, const Tolerance& tol = {});

struct SearchBudget {
  int restarts = 200;
  int sweeps = 500;
};

struct SearchResult {
  std::optional<ColoringFamily> family;
  int restarts_used = 0;
  /// Smallest violation reached before polishing, over all restarts.
  double best_violation = 0.0;
};

/// See-saw local search. Each restart starts from random projective
/// measurements and repeatedly re-splits the range of p_gs + p_gt between two
/// colors so as to minimize the neighbor penalty. A returned family has passed
/// `verify`; an empty result proves nothing.
SearchResult search(const Graph& g, int colors, Index dim, std::uint64_t seed,
                    SearchBudget budget = {}, const Tolerance& tol = {});

/// p_gt = e_k e_k^dag with k = (g + t) mod d: a quantum d-coloring of K_d.
ColoringFamily latin_square_family(int d);

}  // namespace qsets

#endif  // QSETS_COLORING_HPP

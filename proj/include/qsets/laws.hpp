#ifndef QSETS_LAWS_HPP
#define QSETS_LAWS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsets/json_io.hpp"
#include "qsets/random.hpp"

namespace qsets {

struct LawConfig {
  std::uint64_t seed = 0;
  int trials = 50;
  int max_atoms = 3;
  int max_dim = 3;
  Tolerance tol;
  /// Empty, or "dagger" to swap in a dagger that transposes without
  /// conjugating. Used as a negative control.
  std::string inject_fault;
  /// Restricts the run to these groups ("qrel", "qfun", "opalg", "pred");
  /// empty means all.
  std::set<std::string> groups;

  /// Throws PreconditionError on trials < 1, sizes < 1, bad tolerances or an
  /// unknown fault name.
  void validate() const;
};

/// The operations a law may route through, so a fault can be injected.
struct LawOps {
  std::function<Relation(const Relation&)> dagger;
};

LawOps law_ops(const std::string& fault);

struct LawOutcome {
  double residual = 0.0;
  /// Serializes the instance; only called for a counterexample.
  std::function<Json()> inputs;
};

struct Law {
  std::string group;
  std::string name;
  std::function<LawOutcome(Rng&, const LawConfig&, const LawOps&)> run;
};

const std::vector<Law>& law_suite();

struct LawResult {
  std::string group;
  std::string name;
  int instances = 0;
  double max_residual = 0.0;
  bool pass = true;
};

struct LawReport {
  std::vector<LawResult> laws;
  /// The first violation in (law, trial) order, if any.
  std::optional<Json> counterexample;
  bool pass() const;
};

/// Trial k of law L draws from trial_rng(seed, k * #laws + index of L), so a
/// counterexample can be replayed alone.
LawReport run_laws(const LawConfig& cfg);

Json to_json(const LawReport& r, const LawConfig& cfg);

}  // namespace qsets

#endif  // QSETS_LAWS_HPP

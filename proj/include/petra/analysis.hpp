// Orchestration: structural pre-analysis plus one engine run, merged into a
// tri-state report for the three problems (dead places, dead transitions,
// concurrent places). Definite answers are never contradicted by a bigger
// budget, only refined.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "petra/bdd_engine.hpp"
#include "petra/explicit_engine.hpp"
#include "petra/net.hpp"
#include "petra/tristate.hpp"

namespace petra {

enum class EngineChoice { Explicit, Bdd, Auto };

struct AnalysisReport {
  std::vector<TriState> dead_places;       // Yes = dead
  std::vector<TriState> dead_transitions;  // Yes = dead
  TriHalfMatrix concurrent;                // Yes = concurrent
  bool complete = false;
  std::uint64_t states_visited = 0;
  EngineChoice engine_used = EngineChoice::Explicit;
};

// Sound structural facts: every item flagged here is dead under the full
// firing semantics, independent of any exploration budget.
struct StructuralFacts {
  std::vector<bool> dead_places;
  std::vector<bool> dead_transitions;
};

// Least fixpoint of: a place is dead if initially empty and all its
// producers are dead; a transition is dead if some input place is dead, or
// some input arc demands more tokens than a producer-free place will ever
// hold.
StructuralFacts structural_dead(const PetriNet& net);

struct AnalyzeOptions {
  EngineChoice engine = EngineChoice::Auto;
  Budget budget;  // explicit-engine budget; wall_clock also applies to bdd
  std::size_t max_bdd_nodes = std::numeric_limits<std::size_t>::max();
  bool reverse_var_order = false;
};

// Runs structural_dead plus the chosen engine and merges, enforcing every
// report invariant. Auto probes the symbolic engine on ordinary nets and
// falls back to the explicit engine when the net is rejected as not 1-safe;
// an explicit Bdd choice propagates the rejection instead.
AnalysisReport analyze(const PetriNet& net, const AnalyzeOptions& options = {});

// Yes when no transition is dead, No when some transition is dead, Unknown
// otherwise.
TriState is_quasi_live(const AnalysisReport& report);

// Throws SoundnessError if any report invariant is violated: the diagonal
// law (dead iff not self-concurrent), concurrent implies both alive, a dead
// place's matrix row all-No, complete implies no Unknown.
void validate_report(const AnalysisReport& report);

}  // namespace petra

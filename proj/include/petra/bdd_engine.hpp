// Symbolic reachability for ordinary 1-safe nets: least fixpoint over
// per-transition images on the place-variable BDD. Anything the engine
// cannot represent exactly (weighted arcs, a second token anywhere) is
// rejected so the caller can fall back to the explicit engine.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>

#include "petra/bdd.hpp"
#include "petra/net.hpp"

namespace petra {

struct NonOrdinaryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a firing would put a second token into a place, i.e. the net
// is not 1-safe and the boolean encoding does not apply.
struct NotOneSafeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymbolicBudget {
  std::optional<std::chrono::steady_clock::duration> wall_clock;
};

struct SymbolicResult {
  BddHandle reach;  // set of reached markings; always contains the initial one
  bool complete = false;
  std::uint64_t iterations = 0;
};

// Fixpoint S0 = {M0}, S[k+1] = S[k] union of all one-step successors.
// Stops at the fixpoint (complete) or on wall-clock / node-limit budget
// (incomplete; reach is the last consistent iterate, an under-approximation
// whose every element is genuinely reachable). The node limit is the one the
// store was built with.
SymbolicResult symbolic_reach(BddStore& store, const PetriNet& net,
                              const SymbolicBudget& budget = {});

enum class QueryAnswer { Yes, No, Unknown };

// The reachable-co-marking predicate: is some reached marking in `result`
// marking every place in `places`? Yes answers are valid even for incomplete
// runs; No needs completeness, otherwise Unknown.
QueryAnswer query_marked_together(const BddStore& store,
                                  const SymbolicResult& result,
                                  std::span<const std::uint32_t> places);

}  // namespace petra

#include "petra/bdd_engine.hpp"

#include <algorithm>
#include <vector>

namespace petra {

namespace {

// Minterm of the 0/1 initial marking: conjunction of one literal per place.
BddHandle marking_bdd(BddStore& store, const PetriNet& net) {
  const Marking& m0 = net.initial_marking();
  BddHandle acc = BddStore::terminal_true();
  for (std::uint32_t p = 0; p < net.place_count(); ++p)
    acc = store.apply_and(acc, m0.tokens[p] ? store.var(p) : store.nvar(p));
  return acc;
}

struct TransitionImage {
  BddHandle preset_conj;                 // conjunction of input places
  std::vector<std::uint32_t> consumed;   // preset minus postset: forced to 0
  std::vector<std::uint32_t> produced;   // postset minus preset: forced to 1
};

}  // namespace

SymbolicResult symbolic_reach(BddStore& store, const PetriNet& net,
                              const SymbolicBudget& budget) {
  if (!net.is_ordinary())
    throw NonOrdinaryError(
        "symbolic engine requires an ordinary net (all arc weights 1)");
  if (net.place_count() != store.num_vars())
    throw std::logic_error("store was built for a different place count");
  for (std::uint32_t p = 0; p < net.place_count(); ++p)
    if (net.initial_marking().tokens[p] > 1)
      throw NotOneSafeError("place '" + net.place(p).id +
                            "' holds more than one initial token");

  std::vector<TransitionImage> images(net.transition_count());
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    TransitionImage& img = images[t];
    img.preset_conj = BddStore::terminal_true();
    for (const Arc& a : net.pre(t))
      img.preset_conj = store.apply_and(img.preset_conj, store.var(a.place));
    auto in_pre = [&](std::uint32_t p) {
      for (const Arc& a : net.pre(t))
        if (a.place == p) return true;
      return false;
    };
    auto in_post = [&](std::uint32_t p) {
      for (const Arc& a : net.post(t))
        if (a.place == p) return true;
      return false;
    };
    for (const Arc& a : net.pre(t))
      if (!in_post(a.place)) img.consumed.push_back(a.place);
    for (const Arc& a : net.post(t))
      if (!in_pre(a.place)) img.produced.push_back(a.place);
  }

  const auto deadline =
      budget.wall_clock
          ? std::optional(std::chrono::steady_clock::now() + *budget.wall_clock)
          : std::nullopt;

  SymbolicResult result;
  result.reach = marking_bdd(store, net);

  try {
    while (true) {
      if (deadline && std::chrono::steady_clock::now() > *deadline) {
        result.complete = false;
        return result;
      }
      ++result.iterations;
      BddHandle next = result.reach;
      for (std::size_t t = 0; t < net.transition_count(); ++t) {
        const TransitionImage& img = images[t];
        BddHandle enabled = store.apply_and(result.reach, img.preset_conj);
        if (enabled == BddStore::terminal_false()) continue;
        // A produced place that is already marked in some enabled state
        // would receive a second token.
        for (std::uint32_t q : img.produced) {
          const std::uint32_t one[] = {q};
          if (store.sat_with_all(enabled, one))
            throw NotOneSafeError("firing '" + net.transition(t).id +
                                  "' would put a second token into '" +
                                  net.place(q).id + "'");
        }
        BddHandle succ = enabled;
        for (std::uint32_t p : img.consumed)
          succ = store.apply_and(store.exists(succ, p), store.nvar(p));
        for (std::uint32_t q : img.produced)
          succ = store.apply_and(store.exists(succ, q), store.var(q));
        next = store.apply_or(next, succ);
      }
      if (next == result.reach) {
        result.complete = true;
        return result;
      }
      result.reach = next;
    }
  } catch (const BddLimitError&) {
    // Budget event, not a failure: the last full iterate stays valid.
    result.complete = false;
    return result;
  }
}

QueryAnswer query_marked_together(const BddStore& store,
                                  const SymbolicResult& result,
                                  std::span<const std::uint32_t> places) {
  if (store.sat_with_all(result.reach, places)) return QueryAnswer::Yes;
  return result.complete ? QueryAnswer::No : QueryAnswer::Unknown;
}

}  // namespace petra

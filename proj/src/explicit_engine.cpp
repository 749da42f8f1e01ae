#include "petra/explicit_engine.hpp"

#include <deque>
#include <unordered_set>

namespace petra {

namespace {

struct QueueEntry {
  Marking marking;
  // Places whose token count rose from 0 in the step that first reached this
  // marking; empty-and-initial means "scan everything".
  std::vector<std::uint32_t> risen;
  bool is_initial = false;
};

}  // namespace

Observations explore(const PetriNet& net, const Budget& budget) {
  const std::size_t n_places = net.place_count();
  const std::size_t n_trans = net.transition_count();

  Observations obs;
  obs.place_seen_marked.assign(n_places, false);
  obs.trans_seen_enabled.assign(n_trans, false);
  obs.pair_seen_together = HalfMatrixBits(n_places);

  const auto deadline =
      budget.wall_clock
          ? std::optional(std::chrono::steady_clock::now() + *budget.wall_clock)
          : std::nullopt;

  bool overflow = false;
  const Marking& m0 = net.initial_marking();
  for (TokenCount t : m0.tokens)
    if (t > budget.token_cap) overflow = true;

  std::deque<QueueEntry> frontier;
  std::unordered_set<Marking, MarkingHash> visited;
  if (!overflow) {
    visited.insert(m0);
    frontier.push_back({m0, {}, true});
  }

  std::vector<std::uint32_t> marked;  // scratch, reused per state
  marked.reserve(n_places);

  bool timed_out = false;
  while (!frontier.empty()) {
    if (budget.max_states && obs.states_visited >= *budget.max_states) break;
    if (deadline && (obs.states_visited & 0xFF) == 0 &&
        std::chrono::steady_clock::now() > *deadline) {
      timed_out = true;
      break;
    }

    QueueEntry entry = std::move(frontier.front());
    frontier.pop_front();
    const Marking& m = entry.marking;
    ++obs.states_visited;

    marked.clear();
    for (std::uint32_t p = 0; p < n_places; ++p)
      if (m.tokens[p] >= 1) marked.push_back(p);

    // Pair bits: the parent state already covered every pair it had, so only
    // pairs involving newly-marked places are missing. The initial marking
    // has no parent and gets the full quadratic scan.
    if (entry.is_initial) {
      for (std::size_t a = 0; a < marked.size(); ++a) {
        obs.place_seen_marked[marked[a]] = true;
        for (std::size_t b = 0; b <= a; ++b)
          obs.pair_seen_together.set(marked[a], marked[b]);
      }
    } else {
      for (std::uint32_t q : entry.risen) {
        obs.place_seen_marked[q] = true;
        for (std::uint32_t r : marked) obs.pair_seen_together.set(q, r);
      }
    }

    for (std::size_t t = 0; t < n_trans; ++t) {
      if (!net.enabled(m, t)) continue;
      obs.trans_seen_enabled[t] = true;
      std::optional<Marking> succ = net.fire(m, t, budget.token_cap);
      if (!succ) {
        overflow = true;  // successor dropped, exploration goes on
        continue;
      }
      if (visited.contains(*succ)) continue;
      QueueEntry next{std::move(*succ), {}, false};
      for (std::uint32_t p = 0; p < n_places; ++p)
        if (m.tokens[p] == 0 && next.marking.tokens[p] >= 1)
          next.risen.push_back(p);
      visited.insert(next.marking);
      frontier.push_back(std::move(next));
    }
  }

  obs.complete = frontier.empty() && !overflow && !timed_out;
  return obs;
}

}  // namespace petra

#include "petra/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace petra {

StructuralFacts structural_dead(const PetriNet& net) {
  const std::size_t n_places = net.place_count();
  const std::size_t n_trans = net.transition_count();
  const Marking& m0 = net.initial_marking();

  std::vector<std::vector<std::size_t>> producers(n_places);
  for (std::size_t t = 0; t < n_trans; ++t)
    for (const Arc& a : net.post(t)) producers[a.place].push_back(t);

  StructuralFacts facts;
  facts.dead_places.assign(n_places, false);
  facts.dead_transitions.assign(n_trans, false);

  // A producer-free place never gains tokens, so an input arc demanding more
  // than its initial stock can never be satisfied.
  for (std::size_t t = 0; t < n_trans; ++t)
    for (const Arc& a : net.pre(t))
      if (producers[a.place].empty() && m0.tokens[a.place] < a.weight)
        facts.dead_transitions[t] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < n_places; ++p) {
      if (facts.dead_places[p] || m0.tokens[p] != 0) continue;
      bool all_dead = true;
      for (std::size_t t : producers[p])
        if (!facts.dead_transitions[t]) {
          all_dead = false;
          break;
        }
      if (all_dead) {
        facts.dead_places[p] = true;
        changed = true;
      }
    }
    for (std::size_t t = 0; t < n_trans; ++t) {
      if (facts.dead_transitions[t]) continue;
      for (const Arc& a : net.pre(t))
        if (facts.dead_places[a.place]) {
          facts.dead_transitions[t] = true;
          changed = true;
          break;
        }
    }
  }
  return facts;
}

namespace {

TriState definite_or(bool seen, bool complete) {
  if (seen) return TriState::Yes;
  return complete ? TriState::No : TriState::Unknown;
}

TriState invert(TriState v) {
  if (v == TriState::Yes) return TriState::No;
  if (v == TriState::No) return TriState::Yes;
  return TriState::Unknown;
}

TriState from_query(QueryAnswer a) {
  switch (a) {
    case QueryAnswer::Yes:
      return TriState::Yes;
    case QueryAnswer::No:
      return TriState::No;
    default:
      return TriState::Unknown;
  }
}

void fill_from_observations(AnalysisReport& report, const Observations& obs) {
  const std::size_t n = report.dead_places.size();
  for (std::size_t p = 0; p < n; ++p)
    report.dead_places[p] =
        invert(definite_or(obs.place_seen_marked[p], obs.complete));
  for (std::size_t t = 0; t < report.dead_transitions.size(); ++t)
    report.dead_transitions[t] =
        invert(definite_or(obs.trans_seen_enabled[t], obs.complete));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      report.concurrent.at(i, j) =
          definite_or(obs.pair_seen_together.test(i, j), obs.complete);
  report.complete = obs.complete;
  report.states_visited = obs.states_visited;
}

void fill_from_symbolic(AnalysisReport& report, const PetriNet& net,
                        const BddStore& store, const SymbolicResult& result) {
  const std::size_t n = net.place_count();
  for (std::uint32_t p = 0; p < n; ++p) {
    const std::uint32_t single[] = {p};
    TriState marked = from_query(query_marked_together(store, result, single));
    report.dead_places[p] = invert(marked);
    report.concurrent.at(p, p) = marked;
  }
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < i; ++j) {
      const std::uint32_t pair[] = {i, j};
      report.concurrent.at(i, j) =
          from_query(query_marked_together(store, result, pair));
    }
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    std::vector<std::uint32_t> preset;
    for (const Arc& a : net.pre(t)) preset.push_back(a.place);
    if (preset.empty()) {
      // No inputs: enabled in every marking, the initial one included.
      report.dead_transitions[t] = TriState::No;
      continue;
    }
    report.dead_transitions[t] =
        invert(from_query(query_marked_together(store, result, preset)));
  }
  report.complete = result.complete;
  report.states_visited = net.place_count() <= 62
                              ? store.sat_count(result.reach)
                              : static_cast<std::uint64_t>(std::min(
                                    store.sat_count_approx(result.reach),
                                    1.8e19));
}

void merge_structural(AnalysisReport& report, const PetriNet& net,
                      const StructuralFacts& facts) {
  const std::size_t n = net.place_count();
  for (std::size_t p = 0; p < n; ++p) {
    if (!facts.dead_places[p]) continue;
    const std::string ctx = "place '" + net.place(p).id +
                            "' (structurally dead, engine saw it marked)";
    tri_merge(report.dead_places[p], TriState::Yes, ctx.c_str());
    for (std::size_t j = 0; j < n; ++j)
      tri_merge(report.concurrent.at(p, j), TriState::No, ctx.c_str());
  }
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    if (!facts.dead_transitions[t]) continue;
    const std::string ctx = "transition '" + net.transition(t).id +
                            "' (structurally dead, engine saw it enabled)";
    tri_merge(report.dead_transitions[t], TriState::Yes, ctx.c_str());
  }
}

AnalysisReport run_symbolic(const PetriNet& net, const AnalyzeOptions& options) {
  AnalysisReport report;
  report.dead_places.assign(net.place_count(), TriState::Unknown);
  report.dead_transitions.assign(net.transition_count(), TriState::Unknown);
  report.concurrent = TriHalfMatrix(net.place_count());
  report.engine_used = EngineChoice::Bdd;

  std::vector<std::uint32_t> order;
  if (options.reverse_var_order) {
    order.resize(net.place_count());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = static_cast<std::uint32_t>(order.size() - 1 - i);
  }
  BddStore store(static_cast<std::uint32_t>(net.place_count()),
                 std::move(order), options.max_bdd_nodes);
  SymbolicBudget budget{options.budget.wall_clock};
  SymbolicResult result = symbolic_reach(store, net, budget);
  fill_from_symbolic(report, net, store, result);
  return report;
}

AnalysisReport run_explicit(const PetriNet& net, const AnalyzeOptions& options) {
  AnalysisReport report;
  report.dead_places.assign(net.place_count(), TriState::Unknown);
  report.dead_transitions.assign(net.transition_count(), TriState::Unknown);
  report.concurrent = TriHalfMatrix(net.place_count());
  report.engine_used = EngineChoice::Explicit;
  fill_from_observations(report, explore(net, options.budget));
  return report;
}

}  // namespace

AnalysisReport analyze(const PetriNet& net, const AnalyzeOptions& options) {
  StructuralFacts facts = structural_dead(net);

  AnalysisReport report;
  switch (options.engine) {
    case EngineChoice::Explicit:
      report = run_explicit(net, options);
      break;
    case EngineChoice::Bdd:
      report = run_symbolic(net, options);  // rejections propagate
      break;
    case EngineChoice::Auto: {
      const Marking& m0 = net.initial_marking();
      bool bdd_candidate =
          net.is_ordinary() &&
          std::all_of(m0.tokens.begin(), m0.tokens.end(),
                      [](TokenCount t) { return t <= 1; });
      if (bdd_candidate) {
        try {
          report = run_symbolic(net, options);
        } catch (const NotOneSafeError&) {
          report = run_explicit(net, options);
        }
      } else {
        report = run_explicit(net, options);
      }
      break;
    }
  }

  merge_structural(report, net, facts);
  validate_report(report);
  return report;
}

TriState is_quasi_live(const AnalysisReport& report) {
  bool any_unknown = false;
  for (TriState v : report.dead_transitions) {
    if (v == TriState::Yes) return TriState::No;
    if (v == TriState::Unknown) any_unknown = true;
  }
  return any_unknown ? TriState::Unknown : TriState::Yes;
}

void validate_report(const AnalysisReport& report) {
  const std::size_t n = report.dead_places.size();
  if (report.concurrent.dim() != n)
    throw SoundnessError("concurrency matrix dimension mismatch");

  for (std::size_t i = 0; i < n; ++i) {
    const TriState dead = report.dead_places[i];
    const TriState self = report.concurrent.at(i, i);
    if (dead != invert(self))
      throw SoundnessError("diagonal law violated at place index " +
                           std::to_string(i + 1));
    if (dead == TriState::Yes)
      for (std::size_t j = 0; j < n; ++j)
        if (report.concurrent.at(i, j) != TriState::No)
          throw SoundnessError("dead place with non-No matrix cell at (" +
                               std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ")");
    for (std::size_t j = 0; j <= i; ++j)
      if (report.concurrent.at(i, j) == TriState::Yes &&
          (report.dead_places[i] != TriState::No ||
           report.dead_places[j] != TriState::No))
        throw SoundnessError("concurrent pair with a non-alive member at (" +
                             std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
  }

  if (report.complete) {
    auto no_unknown = [](TriState v) { return v != TriState::Unknown; };
    bool ok = std::all_of(report.dead_places.begin(), report.dead_places.end(),
                          no_unknown) &&
              std::all_of(report.dead_transitions.begin(),
                          report.dead_transitions.end(), no_unknown);
    for (std::size_t i = 0; ok && i < n; ++i)
      for (std::size_t j = 0; ok && j <= i; ++j)
        ok = no_unknown(report.concurrent.at(i, j));
    if (!ok)
      throw SoundnessError("complete report still contains unknown cells");
  }
}

}  // namespace petra

#include "petra/net.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace petra {

std::vector<std::size_t> PetriNet::preset(std::size_t t) const {
  std::vector<std::size_t> out;
  out.reserve(pre_[t].size());
  for (const Arc& a : pre_[t]) out.push_back(a.place);
  return out;
}

bool PetriNet::enabled(const Marking& m, std::size_t t) const {
  for (const Arc& a : pre_[t])
    if (m.tokens[a.place] < a.weight) return false;
  return true;
}

std::optional<Marking> PetriNet::fire(const Marking& m, std::size_t t,
                                      TokenCount token_cap) const {
  if (!enabled(m, t))
    throw std::logic_error("fire: transition " + transitions_[t].id +
                           " is not enabled");
  Marking out = m;
  for (const Arc& a : pre_[t]) out.tokens[a.place] -= a.weight;
  for (const Arc& a : post_[t]) {
    std::uint64_t v =
        static_cast<std::uint64_t>(out.tokens[a.place]) + a.weight;
    if (v > token_cap) return std::nullopt;
    out.tokens[a.place] = static_cast<TokenCount>(v);
  }
  return out;
}

const std::pair<NetBuilder::NodeKind, std::size_t>* NetBuilder::find(
    const std::string& id) const {
  auto it = ids_.find(id);
  return it == ids_.end() ? nullptr : &it->second;
}

std::optional<NetBuilder::NodeKind> NetBuilder::lookup(
    const std::string& id) const {
  const auto* e = find(id);
  if (!e) return std::nullopt;
  return e->first;
}

void NetBuilder::add_place(const std::string& id, TokenCount initial) {
  if (find(id)) throw NetBuildError("duplicate id '" + id + "'");
  ids_.emplace(id, std::pair{NodeKind::Place, places_.size()});
  places_.push_back(
      {id, static_cast<std::uint32_t>(places_.size() + 1), initial});
}

void NetBuilder::add_transition(const std::string& id) {
  if (find(id)) throw NetBuildError("duplicate id '" + id + "'");
  ids_.emplace(id, std::pair{NodeKind::Transition, transitions_.size()});
  transitions_.push_back(
      {id, static_cast<std::uint32_t>(transitions_.size() + 1)});
}

void NetBuilder::add_arc(const std::string& source, const std::string& target,
                         TokenCount weight) {
  if (weight == 0)
    throw NetBuildError("arc " + source + " -> " + target +
                        " has weight 0 (weights must be >= 1)");
  arcs_.push_back({source, target, weight});
}

PetriNet NetBuilder::build() {
  PetriNet net;
  net.places_ = places_;
  net.transitions_ = transitions_;
  net.pre_.resize(transitions_.size());
  net.post_.resize(transitions_.size());

  // Merge parallel arcs by weight summation, keep per-transition arc lists
  // sorted by place index.
  std::vector<std::map<std::uint32_t, std::uint64_t>> pre_w(
      transitions_.size()),
      post_w(transitions_.size());

  for (const PendingArc& a : arcs_) {
    const auto* src = find(a.source);
    const auto* dst = find(a.target);
    if (!src)
      throw NetBuildError("arc references unknown id '" + a.source + "'");
    if (!dst)
      throw NetBuildError("arc references unknown id '" + a.target + "'");
    if (src->first == dst->first)
      throw NetBuildError(
          "arc " + a.source + " -> " + a.target +
          (src->first == NodeKind::Place ? " connects two places"
                                         : " connects two transitions"));
    if (src->first == NodeKind::Place)
      pre_w[dst->second][static_cast<std::uint32_t>(src->second)] += a.weight;
    else
      post_w[src->second][static_cast<std::uint32_t>(dst->second)] += a.weight;
  }

  auto flatten = [&](const std::map<std::uint32_t, std::uint64_t>& m,
                     std::vector<Arc>& out) {
    for (auto [place, w] : m) {
      if (w > std::numeric_limits<TokenCount>::max())
        throw NetBuildError("merged arc weight overflows at place index " +
                            std::to_string(place));
      out.push_back({place, static_cast<TokenCount>(w)});
      if (w != 1) net.ordinary_ = false;
    }
  };
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    flatten(pre_w[t], net.pre_[t]);
    flatten(post_w[t], net.post_[t]);
  }

  net.initial_.tokens.resize(places_.size());
  for (std::size_t p = 0; p < places_.size(); ++p)
    net.initial_.tokens[p] = places_[p].initial;
  return net;
}

}  // namespace petra

// Core place/transition net model: immutable net structure, markings,
// enabledness and firing. Places and transitions are numbered densely in
// declaration order; all public indices are 0-based, the 1-based display
// number lives in the declarations.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace petra {

using TokenCount = std::uint32_t;

// Default per-place token cap; firings that would exceed the configured cap
// are reported to the caller instead of wrapping.
inline constexpr TokenCount kDefaultTokenCap = 1u << 20;

struct NetBuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlaceDecl {
  std::string id;
  std::uint32_t number = 0;  // 1-based declaration number
  TokenCount initial = 0;
};

struct TransDecl {
  std::string id;
  std::uint32_t number = 0;  // 1-based declaration number
};

// One weighted arc endpoint; `place` is a 0-based place index.
struct Arc {
  std::uint32_t place = 0;
  TokenCount weight = 1;
};

struct Marking {
  std::vector<TokenCount> tokens;  // length |P|

  bool marked(std::size_t place) const { return tokens[place] >= 1; }
  bool operator==(const Marking&) const = default;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (TokenCount t : m.tokens) {
      h ^= t;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

class PetriNet {
 public:
  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }

  const PlaceDecl& place(std::size_t p) const { return places_[p]; }
  const TransDecl& transition(std::size_t t) const { return transitions_[t]; }
  const std::vector<PlaceDecl>& places() const { return places_; }
  const std::vector<TransDecl>& transitions() const { return transitions_; }

  // Input/output arcs of a transition, sorted by place index, parallel arcs
  // already merged.
  std::span<const Arc> pre(std::size_t t) const { return pre_[t]; }
  std::span<const Arc> post(std::size_t t) const { return post_[t]; }

  const Marking& initial_marking() const { return initial_; }

  bool is_ordinary() const { return ordinary_; }

  // The set of input places of a transition, ascending.
  std::vector<std::size_t> preset(std::size_t t) const;

  // True iff every input place of t carries at least the arc weight.
  bool enabled(const Marking& m, std::size_t t) const;

  // Fires t from m. Precondition: enabled(m, t) (throws std::logic_error
  // otherwise). Returns nullopt when some resulting count would exceed
  // `token_cap` (possible unboundedness; the caller decides how to degrade).
  std::optional<Marking> fire(const Marking& m, std::size_t t,
                              TokenCount token_cap = kDefaultTokenCap) const;

 private:
  friend class NetBuilder;

  std::vector<PlaceDecl> places_;
  std::vector<TransDecl> transitions_;
  std::vector<std::vector<Arc>> pre_;
  std::vector<std::vector<Arc>> post_;
  Marking initial_;
  bool ordinary_ = true;
};

// Incremental net construction with id-based arc declaration. Arc endpoints
// are resolved at build() time, so arcs may be added before their endpoints
// are declared (PNML allows that; the text parser enforces its own
// declaration-before-use rule via lookup()).
class NetBuilder {
 public:
  enum class NodeKind { Place, Transition };

  // Throw NetBuildError on duplicate ids (places and transitions share one
  // id namespace so that arcs can name either side unambiguously).
  void add_place(const std::string& id, TokenCount initial = 0);
  void add_transition(const std::string& id);

  // Arc from `source` to `target`, one endpoint a place and the other a
  // transition; direction is inferred. Weight 0 is rejected. Parallel arcs
  // merge by weight summation.
  void add_arc(const std::string& source, const std::string& target,
               TokenCount weight = 1);

  std::optional<NodeKind> lookup(const std::string& id) const;

  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }

  PetriNet build();

 private:
  struct PendingArc {
    std::string source, target;
    TokenCount weight;
  };

  std::vector<PlaceDecl> places_;
  std::vector<TransDecl> transitions_;
  std::vector<PendingArc> arcs_;
  // id -> (kind, 0-based index)
  std::unordered_map<std::string, std::pair<NodeKind, std::size_t>> ids_;

  const std::pair<NodeKind, std::size_t>* find(const std::string& id) const;
};

}  // namespace petra

// Self-contained reduced-ordered-BDD store: hash-consed nodes, two
// terminals, no complement edges. One boolean variable per place; the
// variable order is fixed at construction. Handles are valid for one store
// only; handle equality is semantic equality (canonicity).
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace petra {

struct BddLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BddHandle {
  std::uint32_t id = 0;
  bool operator==(const BddHandle&) const = default;
};

class BddStore {
 public:
  // `var_order` lists variable indices from top level to bottom; empty means
  // identity (variable i at level i).
  explicit BddStore(std::uint32_t num_vars,
                    std::vector<std::uint32_t> var_order = {},
                    std::size_t node_limit =
                        std::numeric_limits<std::size_t>::max());

  static constexpr BddHandle terminal_false() { return {0}; }
  static constexpr BddHandle terminal_true() { return {1}; }

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t node_limit() const { return node_limit_; }

  BddHandle var(std::uint32_t v);   // projection: v
  BddHandle nvar(std::uint32_t v);  // negated projection: !v

  BddHandle apply_and(BddHandle a, BddHandle b);
  BddHandle apply_or(BddHandle a, BddHandle b);
  BddHandle negate(BddHandle a);
  // Cofactor: a with variable v fixed to value.
  BddHandle restrict_var(BddHandle a, std::uint32_t v, bool value);
  // Existential quantification of one variable.
  BddHandle exists(BddHandle a, std::uint32_t v);

  // True iff some satisfying assignment of a sets every variable in `ones`
  // to 1. Pure walk, allocates no nodes.
  bool sat_with_all(BddHandle a, std::span<const std::uint32_t> ones) const;

  // Number of satisfying assignments over all num_vars variables.
  // Requires num_vars <= 62 (test-scale use).
  std::uint64_t sat_count(BddHandle a) const;

  // Same count in floating point, usable at any variable count (reporting
  // only; loses precision past 2^53).
  double sat_count_approx(BddHandle a) const;

  // Evaluate under a full assignment (assignment[v] for variable v).
  bool evaluate(BddHandle a, const std::vector<bool>& assignment) const;

 private:
  struct Node {
    std::uint32_t level;  // num_vars for terminals
    std::uint32_t lo, hi;
  };

  enum class Op : std::uint8_t { And, Or, Not, Restrict0, Restrict1 };

  struct NodeKey {
    std::uint32_t level, lo, hi;
    bool operator==(const NodeKey&) const = default;
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept {
      std::uint64_t h = k.level;
      h = h * 0x100000001b3ull ^ k.lo;
      h = h * 0x100000001b3ull ^ k.hi;
      return static_cast<std::size_t>(h * 0x2545f4914f6cdd1dull);
    }
  };
  struct CacheKey {
    Op op;
    std::uint32_t a, b;
    bool operator==(const CacheKey&) const = default;
  };
  struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const noexcept {
      std::uint64_t h = static_cast<std::uint64_t>(k.op);
      h = h * 0x100000001b3ull ^ k.a;
      h = h * 0x100000001b3ull ^ k.b;
      return static_cast<std::size_t>(h * 0x2545f4914f6cdd1dull);
    }
  };

  std::uint32_t num_vars_;
  std::size_t node_limit_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> level_of_var_;  // var -> level
  std::vector<std::uint32_t> var_of_level_;  // level -> var
  std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> unique_;
  std::unordered_map<CacheKey, std::uint32_t, CacheKeyHash> cache_;
  std::size_t cache_high_water_;

  std::uint32_t make_node(std::uint32_t level, std::uint32_t lo,
                          std::uint32_t hi);
  std::uint32_t apply(Op op, std::uint32_t a, std::uint32_t b);
  std::uint32_t restrict_rec(std::uint32_t a, std::uint32_t level, bool value);
  std::uint32_t level_of(std::uint32_t node) const {
    return nodes_[node].level;
  }
};

}  // namespace petra

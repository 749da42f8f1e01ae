#include "petra/bdd.hpp"

#include <algorithm>
#include <cmath>

namespace petra {

BddStore::BddStore(std::uint32_t num_vars, std::vector<std::uint32_t> var_order,
                   std::size_t node_limit)
    : num_vars_(num_vars), node_limit_(node_limit) {
  if (var_order.empty()) {
    var_order.resize(num_vars);
    for (std::uint32_t v = 0; v < num_vars; ++v) var_order[v] = v;
  }
  if (var_order.size() != num_vars)
    throw std::logic_error("BddStore: variable order has wrong size");
  level_of_var_.assign(num_vars, num_vars);
  var_of_level_ = var_order;
  for (std::uint32_t level = 0; level < num_vars; ++level) {
    std::uint32_t v = var_order[level];
    if (v >= num_vars || level_of_var_[v] != num_vars)
      throw std::logic_error("BddStore: variable order is not a permutation");
    level_of_var_[v] = level;
  }
  // Terminals live at a sentinel level below every variable.
  nodes_.push_back({num_vars, 0, 0});  // false
  nodes_.push_back({num_vars, 1, 1});  // true
  cache_high_water_ = 1u << 16;
}

std::uint32_t BddStore::make_node(std::uint32_t level, std::uint32_t lo,
                                  std::uint32_t hi) {
  if (lo == hi) return lo;  // reduction
  NodeKey key{level, lo, hi};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  if (nodes_.size() >= node_limit_)
    throw BddLimitError("BDD node limit of " + std::to_string(node_limit_) +
                        " exceeded");
  std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({level, lo, hi});
  unique_.emplace(key, id);
  if (nodes_.size() > cache_high_water_) {
    cache_.clear();
    cache_high_water_ *= 2;
  }
  return id;
}

BddHandle BddStore::var(std::uint32_t v) {
  return {make_node(level_of_var_.at(v), 0, 1)};
}

BddHandle BddStore::nvar(std::uint32_t v) {
  return {make_node(level_of_var_.at(v), 1, 0)};
}

std::uint32_t BddStore::apply(Op op, std::uint32_t a, std::uint32_t b) {
  if (op == Op::And) {
    if (a == 0 || b == 0) return 0;
    if (a == 1) return b;
    if (b == 1 || a == b) return a;
  } else if (op == Op::Or) {
    if (a == 1 || b == 1) return 1;
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
  } else {  // Not
    if (a == 0) return 1;
    if (a == 1) return 0;
  }
  if ((op == Op::And || op == Op::Or) && a > b) std::swap(a, b);

  CacheKey key{op, a, b};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  std::uint32_t result;
  if (op == Op::Not) {
    const Node n = nodes_[a];
    result = make_node(n.level, apply(Op::Not, n.lo, 0),
                       apply(Op::Not, n.hi, 0));
  } else {
    const std::uint32_t level = std::min(level_of(a), level_of(b));
    const std::uint32_t alo = level_of(a) == level ? nodes_[a].lo : a;
    const std::uint32_t ahi = level_of(a) == level ? nodes_[a].hi : a;
    const std::uint32_t blo = level_of(b) == level ? nodes_[b].lo : b;
    const std::uint32_t bhi = level_of(b) == level ? nodes_[b].hi : b;
    result = make_node(level, apply(op, alo, blo), apply(op, ahi, bhi));
  }
  cache_.emplace(key, result);
  return result;
}

BddHandle BddStore::apply_and(BddHandle a, BddHandle b) {
  return {apply(Op::And, a.id, b.id)};
}

BddHandle BddStore::apply_or(BddHandle a, BddHandle b) {
  return {apply(Op::Or, a.id, b.id)};
}

BddHandle BddStore::negate(BddHandle a) { return {apply(Op::Not, a.id, 0)}; }

std::uint32_t BddStore::restrict_rec(std::uint32_t a, std::uint32_t level,
                                     bool value) {
  if (level_of(a) > level) return a;  // variable absent in this subgraph
  if (level_of(a) == level) return value ? nodes_[a].hi : nodes_[a].lo;

  CacheKey key{value ? Op::Restrict1 : Op::Restrict0, a, level};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const Node n = nodes_[a];
  std::uint32_t result = make_node(n.level, restrict_rec(n.lo, level, value),
                                   restrict_rec(n.hi, level, value));
  cache_.emplace(key, result);
  return result;
}

BddHandle BddStore::restrict_var(BddHandle a, std::uint32_t v, bool value) {
  return {restrict_rec(a.id, level_of_var_.at(v), value)};
}

BddHandle BddStore::exists(BddHandle a, std::uint32_t v) {
  const std::uint32_t level = level_of_var_.at(v);
  return {apply(Op::Or, restrict_rec(a.id, level, false),
                restrict_rec(a.id, level, true))};
}

bool BddStore::sat_with_all(BddHandle a,
                            std::span<const std::uint32_t> ones) const {
  std::vector<bool> required(num_vars_ + 1, false);
  for (std::uint32_t v : ones) required[level_of_var_.at(v)] = true;

  // A level skipped along a path is unconstrained in the BDD, so a required
  // variable that never appears can always be set to 1; only explicit
  // low-branches through required levels are forbidden.
  std::unordered_map<std::uint32_t, bool> memo;
  auto rec = [&](auto&& self, std::uint32_t node) -> bool {
    if (node == 0) return false;
    if (node == 1) return true;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    const Node& n = nodes_[node];
    bool ok = self(self, n.hi);
    if (!ok && !required[n.level]) ok = self(self, n.lo);
    memo.emplace(node, ok);
    return ok;
  };
  return rec(rec, a.id);
}

std::uint64_t BddStore::sat_count(BddHandle a) const {
  if (num_vars_ > 62)
    throw std::logic_error("sat_count supports at most 62 variables");
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  auto rec = [&](auto&& self, std::uint32_t node) -> std::uint64_t {
    if (node == 0) return 0;
    if (node == 1) return 1;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    const Node& n = nodes_[node];
    std::uint64_t count =
        (self(self, n.lo) << (level_of(n.lo) - n.level - 1)) +
        (self(self, n.hi) << (level_of(n.hi) - n.level - 1));
    memo.emplace(node, count);
    return count;
  };
  return rec(rec, a.id) << level_of(a.id);
}

double BddStore::sat_count_approx(BddHandle a) const {
  std::unordered_map<std::uint32_t, double> memo;
  auto rec = [&](auto&& self, std::uint32_t node) -> double {
    if (node == 0) return 0.0;
    if (node == 1) return 1.0;
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    const Node& n = nodes_[node];
    double count =
        std::ldexp(self(self, n.lo),
                   static_cast<int>(level_of(n.lo) - n.level - 1)) +
        std::ldexp(self(self, n.hi),
                   static_cast<int>(level_of(n.hi) - n.level - 1));
    memo.emplace(node, count);
    return count;
  };
  return std::ldexp(rec(rec, a.id), static_cast<int>(level_of(a.id)));
}

bool BddStore::evaluate(BddHandle a, const std::vector<bool>& assignment) const {
  std::uint32_t node = a.id;
  while (node > 1) {
    const Node& n = nodes_[node];
    node = assignment[var_of_level_[n.level]] ? n.hi : n.lo;
  }
  return node == 1;
}

}  // namespace petra

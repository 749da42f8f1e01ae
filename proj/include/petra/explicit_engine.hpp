// Explicit-state breadth-first exploration. One pass accumulates exactly the
// three observation families the analyses need: places ever marked,
// transitions ever enabled, place pairs ever marked together. Deterministic:
// FIFO frontier, transitions tried in index order.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "petra/net.hpp"

namespace petra {

// One bit per unordered place pair, lower-triangular layout: cell (i, j)
// with j <= i, both 0-based. Symmetry is structural, not checked.
class HalfMatrixBits {
 public:
  HalfMatrixBits() = default;
  explicit HalfMatrixBits(std::size_t dim)
      : dim_(dim), bits_(dim * (dim + 1) / 2, false) {}

  std::size_t dim() const { return dim_; }
  std::size_t cell_count() const { return bits_.size(); }

  static std::size_t cell_index(std::size_t i, std::size_t j) {
    if (j > i) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  bool test(std::size_t i, std::size_t j) const {
    return bits_[cell_index(i, j)];
  }
  void set(std::size_t i, std::size_t j) { bits_[cell_index(i, j)] = true; }

  bool operator==(const HalfMatrixBits&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<bool> bits_;
};

struct Budget {
  std::optional<std::uint64_t> max_states;
  std::optional<std::chrono::steady_clock::duration> wall_clock;
  TokenCount token_cap = kDefaultTokenCap;
};

struct Observations {
  std::vector<bool> place_seen_marked;   // per place
  std::vector<bool> trans_seen_enabled;  // per transition
  HalfMatrixBits pair_seen_together;
  bool complete = false;
  std::uint64_t states_visited = 0;  // distinct markings fully processed
};

// Breadth-first search from the initial marking. Budget exhaustion and
// token-cap overflow surface as complete=false, never as failure; every
// recorded bit is a witness from a genuinely reachable marking.
Observations explore(const PetriNet& net, const Budget& budget = {});

}  // namespace petra

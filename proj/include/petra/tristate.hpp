// Tri-state analysis cells and the lower-triangular tri-state matrix.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace petra {

enum class TriState : unsigned char { Unknown, Yes, No };

// A definite answer that contradicts another definite answer means a bug in
// an engine or the structural analysis, never user error.
struct SoundnessError : std::logic_error {
  using std::logic_error::logic_error;
};

inline char tri_char(TriState v) {
  switch (v) {
    case TriState::Yes:
      return '1';
    case TriState::No:
      return '0';
    default:
      return '.';
  }
}

inline TriState tri_from_char(char c) {
  switch (c) {
    case '1':
      return TriState::Yes;
    case '0':
      return TriState::No;
    case '.':
      return TriState::Unknown;
    default:
      throw std::invalid_argument(std::string("invalid status character '") +
                                  c + "'");
  }
}

// Merge a definite value into a cell. Definite beats unknown; two differing
// definite values are a soundness breach.
inline void tri_merge(TriState& cell, TriState value, const char* context) {
  if (value == TriState::Unknown || cell == value) return;
  if (cell != TriState::Unknown)
    throw SoundnessError(std::string("contradictory definite answers for ") +
                         context);
  cell = value;
}

// Lower-triangular tri-state matrix, cell (i, j) with j <= i, 0-based.
class TriHalfMatrix {
 public:
  TriHalfMatrix() = default;
  explicit TriHalfMatrix(std::size_t dim, TriState fill = TriState::Unknown)
      : dim_(dim), cells_(dim * (dim + 1) / 2, fill) {}

  std::size_t dim() const { return dim_; }
  std::size_t cell_count() const { return cells_.size(); }

  TriState at(std::size_t i, std::size_t j) const {
    return cells_[index(i, j)];
  }
  TriState& at(std::size_t i, std::size_t j) { return cells_[index(i, j)]; }

  bool operator==(const TriHalfMatrix&) const = default;

 private:
  static std::size_t index(std::size_t i, std::size_t j) {
    if (j > i) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t dim_ = 0;
  std::vector<TriState> cells_;
};

}  // namespace petra

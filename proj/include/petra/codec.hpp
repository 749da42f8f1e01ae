// The interchange text formats: status lines over {'0','1','.'} with
// run-length compression, one line per vector, one line per half-matrix row.
// Output is byte-exact and canonical; readers are tolerant of CRLF and of
// non-canonical run counts.
#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "petra/tristate.hpp"

namespace petra {

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Run-length compression: a maximal run of n > 3 equal characters becomes
// c(n); shorter runs stay verbatim. Input must be over {'0','1','.'}.
std::string compress_line(std::string_view line);

// Inverse of compress_line. Accepts any count >= 1 (so non-canonical inputs
// like c(2) decode fine); rejects count 0, empty or non-numeric counts,
// unbalanced parentheses, and characters outside the alphabet.
std::string decompress_line(std::string_view line);

// One compressed status line plus LF. '1' = yes, '0' = no, '.' = unknown;
// whether yes means "dead" or "concurrent" is the caller's slice.
void write_vector(std::span<const TriState> cells, std::ostream& out);

// |P| lines; line i is the compressed row of cells (i,1)..(i,i).
void write_matrix(const TriHalfMatrix& matrix, std::ostream& out);

// Inverses of the writers, for round-trips and result diffing. The matrix
// reader checks that row i decompresses to exactly i cells.
std::vector<TriState> read_vector(std::istream& in);
TriHalfMatrix read_matrix(std::istream& in);

}  // namespace petra

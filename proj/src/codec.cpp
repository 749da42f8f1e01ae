#include "petra/codec.hpp"

#include <cstdint>
#include <istream>
#include <ostream>

namespace petra {

namespace {

bool in_alphabet(char c) { return c == '0' || c == '1' || c == '.'; }

[[noreturn]] void bad_char(char c) {
  throw CodecError(std::string("character '") + c +
                   "' outside the {'0','1','.'} alphabet");
}

std::string read_line(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF input
  return line;
}

}  // namespace

std::string compress_line(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (!in_alphabet(c)) bad_char(c);
    std::size_t j = i;
    while (j < line.size() && line[j] == c) ++j;
    const std::size_t n = j - i;
    if (n > 3) {
      out += c;
      out += '(';
      out += std::to_string(n);
      out += ')';
    } else {
      out.append(n, c);
    }
    i = j;
  }
  return out;
}

std::string decompress_line(std::string_view line) {
  std::string out;
  out.reserve(line.size());
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '(' || c == ')')
      throw CodecError("'(' or ')' without a preceding status character");
    if (!in_alphabet(c)) bad_char(c);
    ++i;
    if (i < line.size() && line[i] == '(') {
      const std::size_t close = line.find(')', i);
      if (close == std::string_view::npos)
        throw CodecError("unbalanced parentheses");
      std::string_view digits = line.substr(i + 1, close - i - 1);
      if (digits.empty())
        throw CodecError("empty repeat count");
      std::uint64_t n = 0;
      for (char d : digits) {
        if (d < '0' || d > '9')
          throw CodecError("malformed repeat count '" + std::string(digits) +
                           "'");
        n = n * 10 + static_cast<std::uint64_t>(d - '0');
        if (n > (std::uint64_t{1} << 32))
          throw CodecError("repeat count '" + std::string(digits) +
                           "' out of range");
      }
      if (n == 0) throw CodecError("repeat count 0 is not a run");
      out.append(static_cast<std::size_t>(n), c);
      i = close + 1;
    } else {
      out += c;
    }
  }
  return out;
}

void write_vector(std::span<const TriState> cells, std::ostream& out) {
  std::string line;
  line.reserve(cells.size());
  for (TriState v : cells) line += tri_char(v);
  out << compress_line(line) << '\n';
  if (!out) throw CodecError("write failure on output stream");
}

void write_matrix(const TriHalfMatrix& matrix, std::ostream& out) {
  std::string row;
  for (std::size_t i = 0; i < matrix.dim(); ++i) {
    row.clear();
    for (std::size_t j = 0; j <= i; ++j) row += tri_char(matrix.at(i, j));
    out << compress_line(row) << '\n';
    if (!out) throw CodecError("write failure on output stream");
  }
}

std::vector<TriState> read_vector(std::istream& in) {
  const std::string decoded = decompress_line(read_line(in));
  std::vector<TriState> cells;
  cells.reserve(decoded.size());
  for (char c : decoded) cells.push_back(tri_from_char(c));
  std::string rest;
  while (std::getline(in, rest)) {
    if (!rest.empty() && rest.back() == '\r') rest.pop_back();
    if (!rest.empty())
      throw CodecError("vector file has more than one line of data");
  }
  return cells;
}

TriHalfMatrix read_matrix(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    rows.push_back(decompress_line(line));
  }
  TriHalfMatrix matrix(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != i + 1)
      throw CodecError("matrix row " + std::to_string(i + 1) +
                       " decompresses to " + std::to_string(rows[i].size()) +
                       " cells, expected " + std::to_string(i + 1));
    for (std::size_t j = 0; j <= i; ++j)
      matrix.at(i, j) = tri_from_char(rows[i][j]);
  }
  return matrix;
}

}  // namespace petra

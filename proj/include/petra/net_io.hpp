// Net ingestion: a PNML P/T-net subset and a line-oriented text format.
// Both number places and transitions by order of declaration in the source;
// that order is the numbering used everywhere downstream.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "petra/net.hpp"

namespace petra {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class NetFormat { Auto, Pnml, Text };

// PNML subset: place / transition / arc / initialMarking / inscription,
// pages flattened in document order, namespaces and graphics/name/
// toolspecific elements ignored. Exactly one <net> element per file.
PetriNet parse_pnml(std::string_view content);

// Text grammar, one item per line, '#' starts a comment:
//   place <id> [<tokens>]
//   trans <id>
//   arc <id> <id> [<weight>]
// Arc direction is inferred from which endpoint is a place. Ids must be
// declared before use. LF and CRLF both accepted.
PetriNet parse_text(std::string_view content);

// Format auto-detection: first non-whitespace byte '<' means PNML.
PetriNet parse_net(std::string_view content, NetFormat format = NetFormat::Auto);

// Debug printer for the text format; parse_text(print_text(n)) reproduces n
// with identical indices, arcs and initial marking.
std::string print_text(const PetriNet& net);

// Reads a whole file (or stdin when path is "-") and parses it.
PetriNet load_net(const std::string& path, NetFormat format = NetFormat::Auto);

}  // namespace petra

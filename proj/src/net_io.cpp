#include "petra/net_io.hpp"

#include <expat.h>

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>
#include <vector>

namespace petra {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Non-negative decimal integer; anything else (sign, empty, trailing junk)
// is rejected so that "-1" or "1.5" in a marking/inscription fails loudly.
TokenCount parse_count(std::string_view raw, const std::string& what) {
  std::string_view s = trim(raw);
  if (s.empty() || s.size() > 10)
    throw ParseError(what + ": '" + std::string(raw) +
                     "' is not a non-negative integer");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw ParseError(what + ": '" + std::string(raw) +
                       "' is not a non-negative integer");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v > std::numeric_limits<TokenCount>::max())
    throw ParseError(what + ": value " + std::string(s) + " out of range");
  return static_cast<TokenCount>(v);
}

std::string_view local_name(const XML_Char* qname) {
  std::string_view n(qname);
  if (auto pos = n.rfind(':'); pos != std::string_view::npos)
    n.remove_prefix(pos + 1);
  return n;
}

// SAX handler for the PNML P/T subset. Collects declarations in document
// order; arc endpoints are resolved after the whole document has been seen.
struct PnmlHandler {
  NetBuilder builder;

  struct PendingPlace {
    std::string id;
    std::string marking_text;
    bool has_marking = false;
  };
  struct PendingArc {
    std::string source, target;
    std::string inscription_text;
    bool has_inscription = false;
  };

  std::vector<std::string> stack;  // local element names
  int net_count = 0;
  int toolspecific_depth = 0;
  bool capture = false;
  std::string text;

  std::optional<PendingPlace> place;
  std::optional<PendingArc> arc;
  std::vector<std::pair<PendingArc, TokenCount>> arcs;
  std::string error;

  static const XML_Char* attr(const XML_Char** atts, std::string_view name) {
    for (int i = 0; atts[i]; i += 2)
      if (local_name(atts[i]) == name) return atts[i + 1];
    return nullptr;
  }

  void start(const XML_Char* qname, const XML_Char** atts) {
    std::string_view n = local_name(qname);
    if (toolspecific_depth > 0 || n == "toolspecific") {
      ++toolspecific_depth;
      return;
    }
    stack.emplace_back(n);
    if (n == "net") {
      ++net_count;
    } else if (n == "place") {
      const XML_Char* id = attr(atts, "id");
      if (!id) throw ParseError("place element without id attribute");
      place = PendingPlace{id, {}, false};
    } else if (n == "transition") {
      const XML_Char* id = attr(atts, "id");
      if (!id) throw ParseError("transition element without id attribute");
      builder.add_transition(id);
    } else if (n == "arc") {
      const XML_Char* src = attr(atts, "source");
      const XML_Char* dst = attr(atts, "target");
      if (!src || !dst)
        throw ParseError("arc element without source/target attribute");
      arc = PendingArc{src, dst, {}, false};
    } else if (n == "text" && stack.size() >= 2) {
      const std::string& parent = stack[stack.size() - 2];
      if (parent == "initialMarking" && place) {
        capture = true;
        text.clear();
      } else if (parent == "inscription" && arc) {
        capture = true;
        text.clear();
      }
    }
  }

  void end(const XML_Char* qname) {
    std::string_view n = local_name(qname);
    if (toolspecific_depth > 0) {
      --toolspecific_depth;
      return;
    }
    if (n == "text" && capture) {
      const std::string& parent = stack[stack.size() - 2];
      if (parent == "initialMarking" && place) {
        place->marking_text += text;
        place->has_marking = true;
      } else if (parent == "inscription" && arc) {
        arc->inscription_text += text;
        arc->has_inscription = true;
      }
      capture = false;
    } else if (n == "place" && place) {
      TokenCount initial =
          place->has_marking
              ? parse_count(place->marking_text,
                            "initialMarking of place '" + place->id + "'")
              : 0;
      builder.add_place(place->id, initial);
      place.reset();
    } else if (n == "arc" && arc) {
      TokenCount weight =
          arc->has_inscription
              ? parse_count(arc->inscription_text, "inscription of arc " +
                                                       arc->source + " -> " +
                                                       arc->target)
              : 1;
      arcs.emplace_back(*arc, weight);
      arc.reset();
    }
    if (!stack.empty()) stack.pop_back();
  }

  void characters(const XML_Char* s, int len) {
    if (capture) text.append(s, static_cast<std::size_t>(len));
  }
};

extern "C" {
void pnml_start(void* ud, const XML_Char* name, const XML_Char** atts) {
  auto* h = static_cast<PnmlHandler*>(ud);
  if (!h->error.empty()) return;
  try {
    h->start(name, atts);
  } catch (const std::exception& e) {
    h->error = e.what();
  }
}
void pnml_end(void* ud, const XML_Char* name) {
  auto* h = static_cast<PnmlHandler*>(ud);
  if (!h->error.empty()) return;
  try {
    h->end(name);
  } catch (const std::exception& e) {
    h->error = e.what();
  }
}
void pnml_chars(void* ud, const XML_Char* s, int len) {
  auto* h = static_cast<PnmlHandler*>(ud);
  if (h->error.empty()) h->characters(s, len);
}
}  // extern "C"

}  // namespace

PetriNet parse_pnml(std::string_view content) {
  PnmlHandler handler;
  XML_Parser parser = XML_ParserCreate(nullptr);
  XML_SetUserData(parser, &handler);
  XML_SetElementHandler(parser, pnml_start, pnml_end);
  XML_SetCharacterDataHandler(parser, pnml_chars);

  enum XML_Status st = XML_Parse(parser, content.data(),
                                 static_cast<int>(content.size()), 1);
  std::string xml_error;
  if (st == XML_STATUS_ERROR)
    xml_error = std::string(XML_ErrorString(XML_GetErrorCode(parser))) +
                " at line " + std::to_string(XML_GetCurrentLineNumber(parser));
  XML_ParserFree(parser);

  if (!handler.error.empty()) throw ParseError("pnml: " + handler.error);
  if (!xml_error.empty()) throw ParseError("pnml: malformed XML: " + xml_error);
  if (handler.net_count == 0) throw ParseError("pnml: no <net> element");
  if (handler.net_count > 1)
    throw ParseError("pnml: multiple <net> elements in one file");

  try {
    for (const auto& [a, weight] : handler.arcs)
      handler.builder.add_arc(a.source, a.target, weight);
    return handler.builder.build();
  } catch (const NetBuildError& e) {
    throw ParseError(std::string("pnml: ") + e.what());
  }
}

PetriNet parse_text(std::string_view content) {
  NetBuilder builder;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("text:" + std::to_string(lineno) + ": " + msg);
  };

  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    std::string_view line = content.substr(
        pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
    ++lineno;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    std::istringstream ss{std::string(line)};
    std::string keyword;
    ss >> keyword;
    std::vector<std::string> args;
    for (std::string tok; ss >> tok;) args.push_back(tok);

    try {
      if (keyword == "place") {
        if (args.empty() || args.size() > 2)
          fail("expected: place <id> [<tokens>]");
        if (builder.lookup(args[0])) fail("redefinition of '" + args[0] + "'");
        TokenCount tokens =
            args.size() == 2 ? parse_count(args[1], "tokens") : 0;
        builder.add_place(args[0], tokens);
      } else if (keyword == "trans") {
        if (args.size() != 1) fail("expected: trans <id>");
        if (builder.lookup(args[0])) fail("redefinition of '" + args[0] + "'");
        builder.add_transition(args[0]);
      } else if (keyword == "arc") {
        if (args.size() < 2 || args.size() > 3)
          fail("expected: arc <id> <id> [<weight>]");
        auto src = builder.lookup(args[0]);
        auto dst = builder.lookup(args[1]);
        if (!src) fail("arc references undeclared id '" + args[0] + "'");
        if (!dst) fail("arc references undeclared id '" + args[1] + "'");
        if (*src == *dst)
          fail(*src == NetBuilder::NodeKind::Place
                   ? "arc connects two places"
                   : "arc connects two transitions");
        TokenCount weight =
            args.size() == 3 ? parse_count(args[2], "weight") : 1;
        builder.add_arc(args[0], args[1], weight);
      } else {
        fail("unknown keyword '" + keyword + "'");
      }
    } catch (const NetBuildError& e) {
      fail(e.what());
    } catch (const ParseError& e) {
      // parse_count throws without line context; re-attach it unless the
      // message already carries one.
      std::string msg = e.what();
      if (msg.rfind("text:", 0) == 0) throw;
      fail(msg);
    }
  }

  try {
    return builder.build();
  } catch (const NetBuildError& e) {
    throw ParseError(std::string("text: ") + e.what());
  }
}

PetriNet parse_net(std::string_view content, NetFormat format) {
  if (format == NetFormat::Auto) {
    std::string_view head = trim(content);
    format = (!head.empty() && head.front() == '<') ? NetFormat::Pnml
                                                    : NetFormat::Text;
  }
  return format == NetFormat::Pnml ? parse_pnml(content) : parse_text(content);
}

std::string print_text(const PetriNet& net) {
  std::ostringstream out;
  for (const PlaceDecl& p : net.places())
    out << "place " << p.id << ' ' << p.initial << '\n';
  for (const TransDecl& t : net.transitions()) out << "trans " << t.id << '\n';
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    for (const Arc& a : net.pre(t))
      out << "arc " << net.place(a.place).id << ' ' << net.transition(t).id
          << ' ' << a.weight << '\n';
    for (const Arc& a : net.post(t))
      out << "arc " << net.transition(t).id << ' ' << net.place(a.place).id
          << ' ' << a.weight << '\n';
  }
  return out.str();
}

PetriNet load_net(const std::string& path, NetFormat format) {
  std::string content;
  if (path == "-") {
    content.assign(std::istreambuf_iterator<char>(std::cin),
                   std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    content.assign(std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>());
  }
  return parse_net(content, format);
}

}  // namespace petra

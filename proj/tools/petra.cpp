// petra: dead places, dead transitions and concurrent places of a
// place/transition net, with sound tri-state partial results under budgets.
//
// Exit codes: 0 all requested results complete, 2 some cells unknown,
// 1 usage / parse / internal error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "petra/analysis.hpp"
#include "petra/codec.hpp"
#include "petra/net_io.hpp"

namespace {

struct RunConfig {
  std::string input;
  petra::NetFormat format = petra::NetFormat::Auto;
  bool dead_places = false;
  bool dead_transitions = false;
  bool concurrent_places = false;
  petra::EngineChoice engine = petra::EngineChoice::Auto;
  std::optional<std::uint64_t> max_states;
  std::optional<double> timeout_seconds;
  std::optional<std::size_t> max_bdd_nodes;
  std::string output_dir = ".";
  bool to_stdout = false;
  bool reverse_order = false;
};

struct Rendered {
  std::string name;       // dead-places / dead-transitions / concurrent-places
  std::string extension;  // dp / dt / cp
  std::string data;       // compressed lines, LF-terminated
  std::size_t yes = 0, no = 0, unknown = 0;
};

void count_cells(Rendered& r, petra::TriState v) {
  switch (v) {
    case petra::TriState::Yes:
      ++r.yes;
      break;
    case petra::TriState::No:
      ++r.no;
      break;
    default:
      ++r.unknown;
  }
}

Rendered render_vector(const std::string& name, const std::string& ext,
                       const std::vector<petra::TriState>& cells) {
  Rendered r{name, ext, {}, 0, 0, 0};
  std::ostringstream out;
  petra::write_vector(cells, out);
  r.data = out.str();
  for (petra::TriState v : cells) count_cells(r, v);
  return r;
}

Rendered render_matrix(const petra::TriHalfMatrix& matrix) {
  Rendered r{"concurrent-places", "cp", {}, 0, 0, 0};
  std::ostringstream out;
  petra::write_matrix(matrix, out);
  r.data = out.str();
  for (std::size_t i = 0; i < matrix.dim(); ++i)
    for (std::size_t j = 0; j <= i; ++j) count_cells(r, matrix.at(i, j));
  return r;
}

std::string output_stem(const std::string& input) {
  if (input == "-") return "stdin";
  std::string stem = std::filesystem::path(input).stem().string();
  return stem.empty() ? "net" : stem;
}

int run(const RunConfig& config) {
  petra::PetriNet net = petra::load_net(config.input, config.format);

  petra::AnalyzeOptions options;
  options.engine = config.engine;
  options.reverse_var_order = config.reverse_order;
  if (config.max_states) options.budget.max_states = *config.max_states;
  if (config.timeout_seconds)
    options.budget.wall_clock =
        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(*config.timeout_seconds));
  if (config.max_bdd_nodes) options.max_bdd_nodes = *config.max_bdd_nodes;

  petra::AnalysisReport report = petra::analyze(net, options);

  std::vector<Rendered> outputs;
  if (config.dead_places)
    outputs.push_back(
        render_vector("dead-places", "dp", report.dead_places));
  if (config.dead_transitions)
    outputs.push_back(
        render_vector("dead-transitions", "dt", report.dead_transitions));
  if (config.concurrent_places)
    outputs.push_back(render_matrix(report.concurrent));

  const std::string stem = output_stem(config.input);
  bool any_unknown = false;
  for (const Rendered& r : outputs) {
    if (config.to_stdout) {
      std::cout << "# " << r.name << '\n' << r.data;
      if (!std::cout) throw std::runtime_error("write failure on stdout");
    } else {
      std::filesystem::path path =
          std::filesystem::path(config.output_dir) / (stem + "." + r.extension);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file '" +
                                         path.string() + "'");
      out << r.data;
      out.close();
      if (!out)
        throw std::runtime_error("write failure on '" + path.string() + "'");
    }
    std::cerr << r.name << ": 1=" << r.yes << " 0=" << r.no << " .=" << r.unknown
              << " states=" << report.states_visited
              << " complete=" << (report.complete ? "yes" : "no") << '\n';
    if (r.unknown > 0) any_unknown = true;
  }
  return any_unknown ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  std::string format = "auto";
  std::string engine = "auto";

  CLI::App app{
      "petra - dead places, dead transitions and concurrent places of a "
      "place/transition net"};
  app.add_option("input", config.input,
                 "input net, PNML or text format ('-' reads stdin)")
      ->required();
  app.add_flag("--dead-places", config.dead_places,
               "compute the dead-places vector (<stem>.dp)");
  app.add_flag("--dead-transitions", config.dead_transitions,
               "compute the dead-transitions vector (<stem>.dt)");
  app.add_flag("--concurrent-places", config.concurrent_places,
               "compute the concurrent-places half matrix (<stem>.cp)");
  app.add_option("--format", format, "input format")
      ->check(CLI::IsMember({"auto", "pnml", "text"}))
      ->capture_default_str();
  app.add_option("--engine", engine,
                 "state-space engine; auto tries bdd on ordinary 1-safe nets "
                 "and falls back to explicit")
      ->check(CLI::IsMember({"auto", "explicit", "bdd"}))
      ->capture_default_str();
  app.add_option("--max-states", config.max_states,
                 "stop the explicit engine after this many states")
      ->check(CLI::PositiveNumber);
  app.add_option("--timeout", config.timeout_seconds,
                 "wall-clock budget in seconds (default: env PETRA_TIMEOUT)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-bdd-nodes", config.max_bdd_nodes,
                 "node budget for the symbolic engine")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output-dir", config.output_dir,
                 "directory for the result files")
      ->capture_default_str();
  app.add_flag("--stdout", config.to_stdout,
               "write labeled result sections to stdout instead of files");
  app.add_flag("--reverse-order", config.reverse_order,
               "reverse the symbolic engine's variable order");
  app.footer(
      "Results use one character per item, in declaration order: '1' dead\n"
      "(or concurrent), '0' not, '.' unknown (budget ran out first). Runs of\n"
      "a character c repeated n > 3 times are written c(n).\n"
      "Exit status: 0 complete, 2 some '.' cells, 1 error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (!config.dead_places && !config.dead_transitions &&
      !config.concurrent_places) {
    std::cerr << "petra: nothing to do; pass at least one of --dead-places, "
                 "--dead-transitions, --concurrent-places\n";
    return 1;
  }
  if (!config.timeout_seconds) {
    if (const char* env = std::getenv("PETRA_TIMEOUT")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0)) {
        std::cerr << "petra: PETRA_TIMEOUT must be a positive number of "
                     "seconds, got '"
                  << env << "'\n";
        return 1;
      }
      config.timeout_seconds = v;
    }
  }
  if (format == "pnml") config.format = petra::NetFormat::Pnml;
  if (format == "text") config.format = petra::NetFormat::Text;
  if (engine == "explicit") config.engine = petra::EngineChoice::Explicit;
  if (engine == "bdd") config.engine = petra::EngineChoice::Bdd;

  try {
    return run(config);
  } catch (const petra::SoundnessError& e) {
    std::cerr << "petra: internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "petra: " << e.what() << '\n';
    return 1;
  }
}

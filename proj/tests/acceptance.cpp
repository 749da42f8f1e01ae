// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria. Every tolerance and population size is pinned here.
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matrix_fixture.hpp"
#include "oracle.hpp"
#include "petra/analysis.hpp"
#include "petra/codec.hpp"
#include "petra/net_io.hpp"
#include "process.hpp"
#include "random_net.hpp"

using namespace petra;
using testing::OracleAnswer;
using testing::OracleCapExceeded;
using testing::RandomNetParams;

namespace {

struct Failure {
  std::string reason;
};

using CriterionFn = std::function<void(std::vector<AnalysisReport>&)>;

// ---- shared checks -------------------------------------------------------

std::string report_law_violation(const AnalysisReport& r) {
  const std::size_t n = r.dead_places.size();
  auto invert = [](TriState v) {
    if (v == TriState::Yes) return TriState::No;
    if (v == TriState::No) return TriState::Yes;
    return TriState::Unknown;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (r.concurrent.at(i, i) != invert(r.dead_places[i]))
      return "diagonal law broken at place " + std::to_string(i + 1);
    if (r.dead_places[i] == TriState::Yes)
      for (std::size_t j = 0; j < n; ++j)
        if (r.concurrent.at(i, j) != TriState::No)
          return "dead place " + std::to_string(i + 1) + " has a non-zero row";
    for (std::size_t j = 0; j <= i; ++j)
      if (r.concurrent.at(i, j) == TriState::Yes &&
          (r.dead_places[i] != TriState::No ||
           r.dead_places[j] != TriState::No))
        return "concurrent pair (" + std::to_string(i + 1) + "," +
               std::to_string(j + 1) + ") has a non-alive member";
  }
  bool any_yes = false, any_unknown = false;
  for (TriState v : r.dead_transitions) {
    any_yes |= v == TriState::Yes;
    any_unknown |= v == TriState::Unknown;
  }
  TriState expected = any_yes ? TriState::No
                      : any_unknown ? TriState::Unknown
                                    : TriState::Yes;
  if (is_quasi_live(r) != expected)
    return "quasi-liveness disagrees with the dead-transition vector";
  if (r.complete && any_unknown)
    return "complete report contains unknown transition cells";
  return {};
}

bool matches_oracle(const AnalysisReport& report, const OracleAnswer& oracle,
                    std::string& why) {
  const std::size_t n = report.dead_places.size();
  for (std::size_t p = 0; p < n; ++p)
    if (report.dead_places[p] !=
        (oracle.dead_places[p] ? TriState::Yes : TriState::No)) {
      why = "dead-places mismatch at place " + std::to_string(p + 1);
      return false;
    }
  for (std::size_t t = 0; t < report.dead_transitions.size(); ++t)
    if (report.dead_transitions[t] !=
        (oracle.dead_transitions[t] ? TriState::Yes : TriState::No)) {
      why = "dead-transitions mismatch at transition " + std::to_string(t + 1);
      return false;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (report.concurrent.at(i, j) !=
          (oracle.concurrent[i][j] ? TriState::Yes : TriState::No)) {
        why = "concurrency mismatch at (" + std::to_string(i + 1) + "," +
              std::to_string(j + 1) + ")";
        return false;
      }
  return true;
}

bool reports_equal(const AnalysisReport& a, const AnalysisReport& b) {
  return a.dead_places == b.dead_places &&
         a.dead_transitions == b.dead_transitions &&
         a.concurrent == b.concurrent && a.complete == b.complete;
}

AnalyzeOptions explicit_options(
    std::optional<std::uint64_t> max_states = std::nullopt) {
  AnalyzeOptions o;
  o.engine = EngineChoice::Explicit;
  o.budget.max_states = max_states;
  return o;
}

// ---- criteria ------------------------------------------------------------

// 1. The 41-row reference table, both directions, byte-for-byte, < 1 s.
void criterion_appendix_golden(std::vector<AnalysisReport>&) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < testing::kReferenceMatrix.size(); ++i) {
    const auto& row = testing::kReferenceMatrix[i];
    if (compress_line(row.plain) != row.compressed)
      throw Failure{"compression of row " + std::to_string(i + 1) +
                    " differs from the reference"};
    if (decompress_line(row.compressed) != std::string(row.plain))
      throw Failure{"decompression of row " + std::to_string(i + 1) +
                    " differs from the reference"};
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  if (testing::kReferenceMatrix.size() != 41)
    throw Failure{"reference table does not have 41 rows"};
  if (elapsed.count() >= 1.0)
    throw Failure{"took " + std::to_string(elapsed.count()) + " s (limit 1)"};
}

// 2. >= 500 random nets (<= 8 places / 8 transitions, weights <= 2, initial
// <= 2, reachable set <= 10^4): complete explicit analyze == oracle, < 60 s.
void criterion_oracle_equivalence(std::vector<AnalysisReport>& reports) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20260809);
  RandomNetParams conserving;
  conserving.conserving = true;
  int accepted = 0;
  for (int attempt = 0; attempt < 20000 && accepted < 500; ++attempt) {
    // alternate sparse nets with token-conserving ones whose reachable sets
    // run into the thousands
    PetriNet net = attempt % 2 == 0 ? testing::random_net(rng)
                                    : testing::random_net(rng, conserving);
    OracleAnswer oracle;
    try {
      oracle = testing::oracle_analyze(net, 10000);
    } catch (const OracleCapExceeded&) {
      continue;
    }
    AnalysisReport report = analyze(net, explicit_options());
    if (!report.complete)
      throw Failure{"explicit run incomplete on a bounded net"};
    std::string why;
    if (!matches_oracle(report, oracle, why)) throw Failure{why};
    if (report.states_visited != oracle.reachable.size())
      throw Failure{"state count differs from the oracle enumeration"};
    reports.push_back(std::move(report));
    ++accepted;
  }
  if (accepted < 500)
    throw Failure{"only " + std::to_string(accepted) +
                  " nets within the population bounds"};
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  if (elapsed.count() >= 60.0)
    throw Failure{"took " + std::to_string(elapsed.count()) + " s (limit 60)"};
}

// 3. >= 200 random ordinary 1-safe nets: symbolic report == explicit report
// and satisfying-valuation count == states visited, < 60 s.
void criterion_engine_crosscheck(std::vector<AnalysisReport>& reports) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(4271);
  RandomNetParams params;
  params.ordinary = true;
  params.binary_initial = true;
  int accepted = 0;
  for (int attempt = 0; attempt < 20000 && accepted < 200; ++attempt) {
    PetriNet net = testing::random_net(rng, params);
    OracleAnswer oracle;
    try {
      oracle = testing::oracle_analyze(net, 10000);
    } catch (const OracleCapExceeded&) {
      continue;
    }
    bool safe = true;
    for (const auto& m : oracle.reachable)
      for (TokenCount v : m)
        if (v > 1) safe = false;
    if (!safe) continue;

    AnalysisReport explicit_report = analyze(net, explicit_options());
    AnalyzeOptions bdd_options;
    bdd_options.engine = EngineChoice::Bdd;
    AnalysisReport bdd_report = analyze(net, bdd_options);

    if (!bdd_report.complete)
      throw Failure{"symbolic run incomplete without any budget"};
    if (!reports_equal(explicit_report, bdd_report))
      throw Failure{"symbolic and explicit reports differ"};
    if (bdd_report.states_visited != explicit_report.states_visited)
      throw Failure{"satisfying-valuation count " +
                    std::to_string(bdd_report.states_visited) +
                    " != states visited " +
                    std::to_string(explicit_report.states_visited)};
    reports.push_back(std::move(explicit_report));
    reports.push_back(std::move(bdd_report));
    ++accepted;
  }
  if (accepted < 200)
    throw Failure{"only " + std::to_string(accepted) +
                  " ordinary 1-safe nets found"};
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  if (elapsed.count() >= 60.0)
    throw Failure{"took " + std::to_string(elapsed.count()) + " s (limit 60)"};
}

// 4. 50 nets, budgets 1, 2, 4, ..., full: definite cells never contradict
// the full-budget report and grow monotonically with the budget.
void criterion_anytime_soundness(std::vector<AnalysisReport>& reports) {
  std::mt19937 rng(9042);
  auto definite_consistent = [](const AnalysisReport& part,
                                const AnalysisReport& next) {
    auto ok = [](TriState small, TriState large) {
      return small == TriState::Unknown || small == large;
    };
    for (std::size_t p = 0; p < part.dead_places.size(); ++p)
      if (!ok(part.dead_places[p], next.dead_places[p])) return false;
    for (std::size_t t = 0; t < part.dead_transitions.size(); ++t)
      if (!ok(part.dead_transitions[t], next.dead_transitions[t]))
        return false;
    for (std::size_t i = 0; i < part.dead_places.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (!ok(part.concurrent.at(i, j), next.concurrent.at(i, j)))
          return false;
    return true;
  };

  RandomNetParams conserving;
  conserving.conserving = true;
  int accepted = 0;
  for (int attempt = 0; attempt < 2000 && accepted < 50; ++attempt) {
    PetriNet net = attempt % 2 == 0 ? testing::random_net(rng)
                                    : testing::random_net(rng, conserving);
    try {
      testing::oracle_analyze(net, 10000);
    } catch (const OracleCapExceeded&) {
      continue;
    }
    ++accepted;
    AnalysisReport full = analyze(net, explicit_options());
    std::vector<AnalysisReport> ladder;
    for (std::uint64_t b = 1; b < full.states_visited; b *= 2)
      ladder.push_back(analyze(net, explicit_options(b)));
    ladder.push_back(full);
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      // against the full report (no contradiction at any budget)
      if (!definite_consistent(ladder[k], ladder.back()))
        throw Failure{"a definite cell contradicts the full-budget report"};
      // against the next budget (monotone growth of definite cells)
      if (k + 1 < ladder.size() &&
          !definite_consistent(ladder[k], ladder[k + 1]))
        throw Failure{"definite cells shrank when the budget grew"};
    }
    for (AnalysisReport& r : ladder) reports.push_back(std::move(r));
  }
  if (accepted < 50) throw Failure{"fewer than 50 usable nets"};
}

// 5. The report laws hold on every report produced by criteria 2-4.
void criterion_report_laws(std::vector<AnalysisReport>& reports) {
  if (reports.size() < 500 + 2 * 200 + 50)
    throw Failure{"earlier criteria produced too few reports (" +
                  std::to_string(reports.size()) + ")"};
  for (const AnalysisReport& r : reports) {
    std::string violation = report_law_violation(r);
    if (!violation.empty()) throw Failure{violation};
  }
}

// 6. decompress(compress(s)) == s on 10^5 random lines up to length 10^4,
// and every compressed output is canonical.
void criterion_codec_fuzz(std::vector<AnalysisReport>&) {
  std::mt19937 rng(777);
  static const char alphabet[] = {'0', '1', '.'};
  std::uniform_int_distribution<int> char_dist(0, 2);
  std::geometric_distribution<int> run_dist(0.05);
  std::uniform_int_distribution<int> bucket(0, 99);

  auto canonical = [](const std::string& c) -> bool {
    char prev = '\0';
    std::size_t i = 0;
    while (i < c.size()) {
      const char ch = c[i];
      if (ch != '0' && ch != '1' && ch != '.') return false;
      if (i + 1 < c.size() && c[i + 1] == '(') {
        std::size_t close = c.find(')', i + 1);
        if (close == std::string::npos) return false;
        unsigned long n = std::stoul(c.substr(i + 2, close - i - 2));
        if (n <= 3) return false;
        i = close + 1;
      } else {
        std::size_t run = 0;
        while (i < c.size() && c[i] == ch &&
               !(i + 1 < c.size() && c[i + 1] == '(')) {
          ++run;
          ++i;
        }
        if (run > 3) return false;
      }
      if (ch == prev) return false;
      prev = ch;
    }
    return true;
  };

  for (int iter = 0; iter < 100000; ++iter) {
    const int b = bucket(rng);
    const std::size_t max_len = b < 80 ? 64 : b < 95 ? 1024 : 10000;
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    const std::size_t len = len_dist(rng);
    std::string s;
    s.reserve(len);
    if (iter % 2 == 0) {
      while (s.size() < len) {
        const char ch = alphabet[char_dist(rng)];
        s.append(std::min<std::size_t>(1 + run_dist(rng), len - s.size()), ch);
      }
    } else {
      for (std::size_t k = 0; k < len; ++k) s += alphabet[char_dist(rng)];
    }
    const std::string c = compress_line(s);
    if (decompress_line(c) != s)
      throw Failure{"round-trip failed on a line of length " +
                    std::to_string(s.size())};
    if (!canonical(c))
      throw Failure{"non-canonical compression of a line of length " +
                    std::to_string(s.size())};
  }
}

// 7. Synthetic 2000-place net with near-uniform matrix rows: the compressed
// matrix is at least 50x smaller than the uncompressed one.
void criterion_compression_effectiveness(std::vector<AnalysisReport>&) {
  NetBuilder builder;
  const std::size_t n = 2000;
  for (std::size_t p = 0; p < n; ++p) {
    const bool hole = (p + 1) % 500 == 0;  // a few dead places
    builder.add_place("p" + std::to_string(p), hole ? 0 : 1);
  }
  PetriNet net = builder.build();

  AnalysisReport report = analyze(net, explicit_options());
  if (!report.complete) throw Failure{"synthetic net did not complete"};

  std::ostringstream compressed;
  write_matrix(report.concurrent, compressed);

  std::size_t uncompressed_size = 0;
  for (std::size_t i = 0; i < n; ++i) uncompressed_size += i + 2;  // row + LF

  const double ratio = static_cast<double>(uncompressed_size) /
                       static_cast<double>(compressed.str().size());
  if (ratio < 50.0)
    throw Failure{"compression ratio " + std::to_string(ratio) + " < 50"};
}

// 8. CLI contract: one exploration for all three analyses, byte-identical
// reruns, exit codes 0 / 2 / 1.
void criterion_cli_contract(std::vector<AnalysisReport>&) {
  namespace fs = std::filesystem;
  const std::string cli = PETRA_CLI_PATH;
  fs::path dir = testing::fresh_dir("petra_acceptance_cli");
  {
    std::ofstream net(dir / "fork.net");
    net << "place p0 1\nplace p1\nplace p2\ntrans t\narc p0 t\narc t p1\narc "
           "t p2\n";
  }

  const std::string cmd =
      cli + " --dead-places --dead-transitions --concurrent-places fork.net";
  auto first = testing::run_command(cmd, dir);
  if (first.exit_code != 0)
    throw Failure{"complete run exited " + std::to_string(first.exit_code)};

  std::vector<std::string> states;
  std::istringstream err(first.err);
  for (std::string line; std::getline(err, line);) {
    const auto pos = line.find("states=");
    if (pos == std::string::npos) continue;
    states.push_back(line.substr(pos, line.find(' ', pos) - pos));
  }
  if (states.size() != 3)
    throw Failure{"expected three summary lines, saw " +
                  std::to_string(states.size())};
  if (states[0] != states[1] || states[1] != states[2])
    throw Failure{"summaries report different state counts: " + states[0] +
                  " " + states[1] + " " + states[2]};

  const std::string dp = testing::slurp(dir / "fork.dp");
  const std::string dt = testing::slurp(dir / "fork.dt");
  const std::string cp = testing::slurp(dir / "fork.cp");
  auto second = testing::run_command(cmd, dir);
  if (second.exit_code != 0) throw Failure{"second run exited nonzero"};
  if (testing::slurp(dir / "fork.dp") != dp ||
      testing::slurp(dir / "fork.dt") != dt ||
      testing::slurp(dir / "fork.cp") != cp)
    throw Failure{"rerun produced different bytes"};

  auto budgeted = testing::run_command(
      cli + " --concurrent-places --engine explicit --max-states 1 fork.net",
      dir);
  if (budgeted.exit_code != 2)
    throw Failure{"budgeted run with unknowns exited " +
                  std::to_string(budgeted.exit_code) + ", expected 2"};
  if (testing::slurp(dir / "fork.cp").find('.') == std::string::npos)
    throw Failure{"budgeted matrix contains no '.' cell"};

  auto usage = testing::run_command(cli + " --no-such-option fork.net", dir);
  if (usage.exit_code != 1)
    throw Failure{"usage error exited " + std::to_string(usage.exit_code) +
                  ", expected 1"};
  auto missing = testing::run_command(cli + " --dead-places nothere.net", dir);
  if (missing.exit_code != 1)
    throw Failure{"missing input exited " + std::to_string(missing.exit_code) +
                  ", expected 1"};
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    CriterionFn fn;
  };
  const Entry entries[] = {
      {"1. reference-table golden codec (41 rows, both directions, < 1 s)",
       criterion_appendix_golden},
      {"2. oracle equivalence on 500 random nets (< 60 s)",
       criterion_oracle_equivalence},
      {"3. engine cross-check on 200 ordinary 1-safe nets (< 60 s)",
       criterion_engine_crosscheck},
      {"4. anytime soundness across budget ladders (50 nets)",
       criterion_anytime_soundness},
      {"5. report laws on every report from criteria 2-4",
       criterion_report_laws},
      {"6. codec round-trip fuzz (100000 lines, canonical output)",
       criterion_codec_fuzz},
      {"7. compression effectiveness on a 2000-place matrix (>= 50x)",
       criterion_compression_effectiveness},
      {"8. CLI contract (single exploration, byte-identical reruns, exit "
       "codes)",
       criterion_cli_contract},
  };

  std::vector<AnalysisReport> reports;
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      e.fn(reports);
    } catch (const Failure& f) {
      failure = f.reason;
    } catch (const std::exception& ex) {
      failure = std::string("unexpected exception: ") + ex.what();
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::ostringstream line;
    line << (failure.empty() ? "PASS  " : "FAIL  ") << e.label << "  ["
         << elapsed.count() << " s]";
    if (!failure.empty()) line << "  -- " << failure;
    std::cout << line.str() << std::endl;
    if (!failure.empty()) ++failures;
  }
  return failures;
}

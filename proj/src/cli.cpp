#include "qsq/cli.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "qsq/cost.hpp"
#include "qsq/error.hpp"
#include "qsq/io.hpp"
#include "qsq/layout.hpp"
#include "qsq/synth.hpp"
#include "qsq/verify.hpp"

namespace qsq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw UsageError(what + " must be an integer, got '" + text + "'");
  return v;
}

int parse_width(const std::string& text) {
  const int n = parse_int(text, "n");
  if (n <= 4) {
    throw UsageError("n must be greater than 4 (got " + text +
                     "); the squarer is defined for inputs of more than 4 bits");
  }
  return n;
}

// "6" or "5..8".
std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = parse_width(text);
    return {n, n};
  }
  const int lo = parse_width(text.substr(0, dots));
  const int hi = parse_width(text.substr(dots + 2));
  if (hi < lo) throw UsageError("empty range '" + text + "'");
  return {lo, hi};
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    io::write_file(path, contents);
  }
}

struct SynthOptions {
  std::string n;
  std::string out;
  std::string format = "json";
  bool expanded = false;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  const int n = parse_width(o.n);
  const auto circuit = synth::synthesize_squarer(n);
  std::string text;
  if (o.format == "grid") {
    text = layout::dump(circuit.grid);
  } else if (o.format == "qasm") {
    text = io::to_qasm(ir::expand(circuit.netlist));
  } else {
    text = io::to_json(o.expanded ? ir::expand(circuit.netlist) : circuit.netlist);
  }
  emit(o.out, text, out);
  return kExitOk;
}

struct VerifyOptions {
  std::string range;
  std::string mode = "basis-exhaustive";
  std::string report;
  std::string mutate;
};

std::optional<std::size_t> parse_mutation(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const std::string prefix = "drop-gate:";
  if (text.rfind(prefix, 0) != 0) {
    throw UsageError("--mutate expects drop-gate:<k>, got '" + text + "'");
  }
  const int k = parse_int(text.substr(prefix.size()), "mutation index");
  if (k < 0) throw UsageError("mutation index must be non-negative");
  return static_cast<std::size_t>(k);
}

std::string describe(const verify::Check& c) {
  std::ostringstream s;
  if (c.n != 0) s << "n=" << c.n << ' ';
  s << c.level << ": " << c.report.inputs_checked << " inputs, " << c.report.mismatches.size()
    << " mismatches";
  if (!c.report.overflows.empty()) s << ", " << c.report.overflows.size() << " adder overflows";
  return s.str();
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const auto [lo, hi] = parse_range(o.range);
  const auto drop = parse_mutation(o.mutate);
  const bool basis = o.mode != "statevector-blocks";
  const bool blocks = o.mode != "basis-exhaustive";
  if (basis && hi > 16) throw UsageError("basis-exhaustive mode supports n in 5..16");

  std::vector<verify::Check> checks;
  if (basis) {
    for (int n = lo; n <= hi; ++n) {
      const auto circuit = synth::synthesize_squarer(n);
      std::vector<verify::Check> part;
      try {
        part = verify::verify_squarer(circuit, drop);
      } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
      }
      for (auto& c : part) {
        out << describe(c) << '\n';
        checks.push_back(std::move(c));
      }
    }
  }
  if (blocks) {
    for (auto& c : verify::verify_blocks_statevector()) {
      out << describe(c) << '\n';
      checks.push_back(std::move(c));
    }
  }
  if (!o.report.empty()) emit(o.report, verify::report_json(checks), out);

  for (const auto& c : checks) {
    if (c.report.ok()) continue;
    std::ostringstream where;
    if (c.n != 0) where << "n=" << c.n << ", ";
    if (!c.report.mismatches.empty()) {
      const auto& m = c.report.mismatches.front();
      where << (c.n != 0 ? "a=" : "input=") << (m.input.empty() ? 0 : m.input.front());
      if (!m.detail.empty()) where << " (" << c.level << ": " << m.detail << ")";
    } else {
      where << "a=" << c.report.overflows.front().front() << " (" << c.level
            << ": carry-less adder overflow)";
    }
    err << "verification failed at " << where.str() << '\n';
    return kExitVerify;
  }
  out << "all checks passed\n";
  return kExitOk;
}

struct CompareOptions {
  std::string range;
  std::string designs = "proposed,thapliyal,nagamani-osu";
  bool ratios = false;
  std::string csv;
};

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  std::vector<cost::Design> designs;
  std::stringstream list(o.designs);
  for (std::string name; std::getline(list, name, ',');) {
    if (name.empty()) continue;
    try {
      designs.push_back(cost::design_from_name(name));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (designs.empty()) throw UsageError("--designs is empty");
  if (o.range.empty() && !o.ratios) throw UsageError("compare needs an n range or --ratios");

  std::vector<cost::CostReport> reports;
  if (!o.range.empty()) {
    const auto [lo, hi] = parse_range(o.range);
    for (int n = lo; n <= hi; ++n) {
      for (cost::Design d : designs) {
        if (d == cost::Design::Proposed) {
          reports.push_back(cost::reconcile(cost::measure(synth::synthesize_squarer(n)), n));
        } else {
          reports.push_back(cost::baseline_costs(d, n));
        }
      }
    }
    out << cost::to_table(reports);
  }
  if (o.ratios) out << cost::ratios_table(cost::reduction_ratios());
  if (!o.csv.empty()) emit(o.csv, cost::to_csv(reports), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Garbage-free quantum squaring circuit: synthesis, verification, cost analysis",
               "qsq"};
  app.require_subcommand(1);

  SynthOptions so;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize the n-bit squarer");
  synth_cmd->add_option("n", so.n, "Input width (n > 4)")->required();
  synth_cmd->add_option("--out", so.out, "Output path (default: stdout)");
  synth_cmd->add_option("--format", so.format, "json, qasm or grid")
      ->check(CLI::IsMember({"json", "qasm", "grid"}));
  synth_cmd->add_flag("--expanded", so.expanded, "Expand macros to Clifford+T before writing");

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustively verify the squarer");
  verify_cmd->add_option("range", vo.range, "n or lo..hi")->required();
  verify_cmd->add_option("--mode", vo.mode, "basis-exhaustive, statevector-blocks or both")
      ->check(CLI::IsMember({"basis-exhaustive", "statevector-blocks", "both"}));
  verify_cmd->add_option("--report", vo.report, "Write a JSON report");
  verify_cmd->add_option("--mutate", vo.mutate,
                         "drop-gate:k removes the k-th operation of the lowered netlist");

  CompareOptions co;
  auto* compare_cmd = app.add_subcommand("compare", "Closed-form and measured cost table");
  compare_cmd->add_option("range", co.range, "n or lo..hi");
  compare_cmd->add_option("--designs", co.designs, "Comma list of proposed, thapliyal, nagamani-osu");
  compare_cmd->add_flag("--ratios", co.ratios, "Print asymptotic reduction percentages");
  compare_cmd->add_option("--csv", co.csv, "Write CSV rows");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth_cmd) return cmd_synth(so, out);
    if (*verify_cmd) return cmd_verify(vo, out, err);
    if (*compare_cmd) return cmd_compare(co, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::UnsupportedWidth || e.code() == ErrorCode::UnknownDesign
               ? kExitUsage
               : kExitVerify;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace qsq::cli

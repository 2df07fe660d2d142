#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qsq/cli.hpp"
#include "qsq/error.hpp"
#include "qsq/io.hpp"
#include "qsq/synth.hpp"

using namespace qsq;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qsq_io_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Json, RoundTripMacroAndExpanded) {
  for (int n : {5, 6, 8}) {
    const auto nl = synth::synthesize_squarer(n).netlist;
    EXPECT_EQ(io::from_json(io::to_json(nl)), nl) << n;
    const auto x = ir::expand(nl);
    EXPECT_EQ(io::from_json(io::to_json(x)), x) << n;
    EXPECT_EQ(io::to_json(io::from_json(io::to_json(x))), io::to_json(x));
  }
}

TEST(Json, KeepsRegisters) {
  const auto nl = synth::synthesize_squarer(6).netlist;
  const auto back = io::from_json(io::to_json(nl));
  EXPECT_EQ(back.registers(), nl.registers());
  EXPECT_EQ(back.wire_count(), nl.wire_count());
}

TEST(Json, ParseErrors) {
  for (const std::string bad :
       {"", "{", "[]", R"({"wires": 2})", R"({"wires": 2, "cbits": 0, "registers": {}, "gates": [{"kind": "nope", "wires": [0]}]})",
        R"({"wires": 2, "cbits": 0, "registers": {}, "gates": [{"kind": "cx"}]})",
        R"({"wires": "two", "cbits": 0, "registers": {}, "gates": []})"}) {
    try {
      (void)io::from_json(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::Parse) << bad;
    }
  }
}

TEST(Json, InvalidGateKeepsNetlistError) {
  const std::string text =
      R"({"wires": 2, "cbits": 0, "registers": {}, "gates": [{"kind": "cx", "wires": [0, 5]}]})";
  try {
    (void)io::from_json(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnallocatedWire);
  }
}

TEST(Qasm, RequiresExpandedNetlist) {
  const auto nl = synth::synthesize_squarer(5).netlist;
  try {
    (void)io::to_qasm(nl);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unexpanded);
  }
}

TEST(Qasm, StatementShapes) {
  ir::Netlist nl;
  const auto q = nl.alloc_register("q", 2, ir::WireInit::Input);
  const auto t = nl.alloc_ancilla(ir::WireInit::Zero);
  nl.append(ir::Gate::logical_and(q[0], q[1], t));
  nl.append(ir::Gate::uncompute_and(q[0], q[1], t));
  const auto text = io::to_qasm(ir::expand(nl));
  EXPECT_EQ(text.rfind("OPENQASM 3.0;\n", 0), 0U);
  EXPECT_NE(text.find("qubit[3] q;"), std::string::npos);
  EXPECT_NE(text.find("bit[1] c;"), std::string::npos);
  EXPECT_NE(text.find("c[0] = measure q[2];"), std::string::npos);
  EXPECT_NE(text.find("if (c[0]) cz q[0], q[1];"), std::string::npos);
  std::size_t tdg = 0;
  for (auto pos = text.find("tdg q"); pos != std::string::npos; pos = text.find("tdg q", pos + 1)) {
    ++tdg;
  }
  EXPECT_EQ(tdg, 2U);
}

TEST(Files, ReadWriteAndFailure) {
  const auto p = scratch("rw.txt");
  io::write_file(p, "hello\n");
  EXPECT_EQ(io::read_file(p), "hello\n");
  EXPECT_THROW((void)io::read_file(scratch("missing.txt")), std::runtime_error);
  EXPECT_THROW(io::write_file("/nonexistent-dir/x/y.txt", "x"), std::runtime_error);
}

TEST(Cli, GridRowStartsWithFirstProduct) {
  const auto r = invoke({"synth", "6", "--format", "grid"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string row0, row1;
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_EQ(row1.rfind("a0a1", 0), 0U);
}

TEST(Cli, ExpandedJsonHasNoMacros) {
  const auto r = invoke({"synth", "5", "--format", "json", "--expanded"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* macro : {"\"and\"", "\"and_dg\"", "\"add\""}) {
    EXPECT_EQ(r.out.find(macro), std::string::npos) << macro;
  }
  EXPECT_NE(r.out.find("\"tdg\""), std::string::npos);
  const auto macro = invoke({"synth", "5", "--format", "json"});
  EXPECT_NE(macro.out.find("\"add\""), std::string::npos);
}

TEST(Cli, SmallWidthIsUsageError) {
  const auto r = invoke({"synth", "4"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("greater than 4"), std::string::npos);
  EXPECT_EQ(invoke({"synth", "six"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "8..5"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"synth", "6", "--format", "png"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
}

TEST(Cli, IoFailureExitsOne) {
  EXPECT_EQ(invoke({"synth", "5", "--out", "/nonexistent-dir/a/b.json"}).code, cli::kExitIo);
}

TEST(Cli, VerifyRangePasses) {
  const auto r = invoke({"verify", "5..8"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("n=8 block: 256 inputs, 0 mismatches"), std::string::npos);
}

TEST(Cli, VerifyStatevectorBlocks) {
  const auto r = invoke({"verify", "6", "--mode", "statevector-blocks"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("logical-and"), std::string::npos);
}

TEST(Cli, MutationIsCaught) {
  const auto report = scratch("mutate.json");
  const auto r = invoke({"verify", "6", "--mutate", "drop-gate:10", "--report", report.string()});
  EXPECT_EQ(r.code, cli::kExitVerify);
  EXPECT_NE(r.err.find("verification failed at n=6"), std::string::npos);
  const auto json = io::read_file(report);
  EXPECT_NE(json.find("\"mismatches\""), std::string::npos);
  EXPECT_EQ(invoke({"verify", "6", "--mutate", "drop-gate:x"}).code, cli::kExitUsage);
}

TEST(Cli, CompareTableAndCsv) {
  const auto csv = scratch("compare.csv");
  const auto r = invoke({"compare", "6..6", "--designs", "proposed,thapliyal", "--csv", csv.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("152"), std::string::npos);
  EXPECT_NE(r.out.find("440"), std::string::npos);
  const auto rows = io::read_file(csv);
  EXPECT_NE(rows.find("6,proposed,t_count,152,144,-8"), std::string::npos);
  EXPECT_NE(rows.find("6,thapliyal,t_count,440,,"), std::string::npos);
}

TEST(Cli, CompareRatios) {
  const auto r = invoke({"compare", "--ratios"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("50.00"), std::string::npos);
  EXPECT_NE(r.out.find("6.25"), std::string::npos);
}

TEST(Cli, CompareOddWidthUsesOddForms) {
  const auto r = invoke({"compare", "5..5", "--designs", "proposed"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("92"), std::string::npos);
  EXPECT_NE(r.out.find("1656"), std::string::npos);
}

TEST(Cli, UnknownDesign) {
  EXPECT_EQ(invoke({"compare", "6", "--designs", "banerjee"}).code, cli::kExitUsage);
}

TEST(Cli, SynthIsByteStable) {
  const auto a = scratch("det_a.json"), b = scratch("det_b.json");
  ASSERT_EQ(invoke({"synth", "8", "--format", "json", "--out", a.string()}).code, cli::kExitOk);
  ASSERT_EQ(invoke({"synth", "8", "--format", "json", "--out", b.string()}).code, cli::kExitOk);
  EXPECT_EQ(io::read_file(a), io::read_file(b));
  EXPECT_EQ(io::from_json(io::read_file(a)), synth::synthesize_squarer(8).netlist);
}

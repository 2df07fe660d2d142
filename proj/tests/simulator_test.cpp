#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "qsq/blocks.hpp"
#include "qsq/error.hpp"
#include "qsq/simulator.hpp"

using namespace qsq;
using namespace qsq::sim;
using ir::Gate;
using ir::GateKind;
using ir::Netlist;
using ir::WireId;
using Start = StateVector::Start;

namespace {

struct AndBlock {
  Netlist netlist;
  std::vector<WireId> in;
  WireId target;
};

AndBlock and_block(bool with_uncompute) {
  AndBlock b;
  b.in = b.netlist.alloc_register("in", 2, ir::WireInit::Input);
  b.target = blocks::build_logical_and(b.netlist, b.in[0], b.in[1]);
  if (with_uncompute) blocks::build_uncompute_and(b.netlist, b.in[0], b.in[1], b.target);
  return b;
}

// |bits> as an explicit amplitude vector.
std::vector<Amplitude> basis(std::size_t wires, std::size_t index) {
  std::vector<Amplitude> v(std::size_t{1} << wires, 0.0);
  v[index] = 1.0;
  return v;
}

StateVector basis_state(std::size_t wires, std::size_t index) {
  std::vector<Start> s(wires, Start::Zero);
  for (std::size_t w = 0; w < wires; ++w) {
    if ((index >> w) & 1U) s[w] = Start::One;
  }
  return StateVector(s);
}

double distance(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(Statevector, LogicalAndIsExactWithNoPhase) {
  const auto b = and_block(false);
  const Netlist x = ir::expand(b.netlist);
  for (std::size_t v = 0; v < 4; ++v) {
    const std::vector<Start> init{v & 1 ? Start::One : Start::Zero,
                                  v & 2 ? Start::One : Start::Zero, Start::Zero};
    const auto out = run_statevector(x, init);
    ASSERT_EQ(out.size(), 1U);
    const std::size_t want = v | (((v & 1) & (v >> 1)) << 2);
    EXPECT_LT(distance(out[0].state.amplitudes(), basis(3, want)), kTolerance) << v;
  }
}

TEST(Statevector, LogicalAndFromMagicState) {
  // The gates after the |T> preparation, applied to |x,y> (x) |T>.
  const auto seq = blocks::logical_and_sequence(WireId{0}, WireId{1}, WireId{2});
  Netlist tail;
  tail.alloc_register("q", 3, ir::WireInit::Input);
  for (std::size_t i = 2; i < seq.size(); ++i) tail.append(seq[i]);
  for (std::size_t v = 0; v < 4; ++v) {
    const std::vector<Start> init{v & 1 ? Start::One : Start::Zero,
                                  v & 2 ? Start::One : Start::Zero, Start::MagicT};
    const auto out = run_statevector(tail, init);
    const std::size_t want = v | (((v & 1) & (v >> 1)) << 2);
    EXPECT_TRUE(equal_up_to_global_phase(out[0].state, basis_state(3, want))) << v;
  }
}

TEST(Statevector, UncomputeRestoresOnBothBranches) {
  const auto b = and_block(true);
  const Netlist x = ir::expand(b.netlist);
  for (std::size_t v = 0; v < 4; ++v) {
    const std::vector<Start> init{v & 1 ? Start::One : Start::Zero,
                                  v & 2 ? Start::One : Start::Zero, Start::Zero};
    const auto out = run_statevector(x, init, BranchPolicy::Both);
    ASSERT_EQ(out.size(), 2U) << v;
    EXPECT_NEAR(out[0].probability, 0.5, 1e-12);
    EXPECT_EQ(out[0].cbits[0], 0);
    EXPECT_EQ(out[1].cbits[0], 1);
    for (const auto& br : out) {
      EXPECT_TRUE(equal_up_to_global_phase(br.state, basis_state(3, v))) << v;
    }
    EXPECT_TRUE(equal_up_to_global_phase(out[0].state, out[1].state));
  }
}

TEST(Statevector, UncomputeOnSuperpositionKeepsRelativePhase) {
  // Inputs in |+>|+>: only the right CZ correction restores the product state.
  const auto b = and_block(true);
  Netlist x = ir::expand(b.netlist);
  Netlist prefixed = x.empty_like();
  prefixed.append(Gate::single(GateKind::H, b.in[0]));
  prefixed.append(Gate::single(GateKind::H, b.in[1]));
  for (const auto& g : x.gates()) prefixed.append(g);
  const std::vector<Start> zero(3, Start::Zero);
  const auto out = run_statevector(prefixed, zero);
  Netlist ref = x.empty_like();
  ref.append(Gate::single(GateKind::H, b.in[0]));
  ref.append(Gate::single(GateKind::H, b.in[1]));
  const auto want = run_statevector(ref, zero);
  ASSERT_EQ(out.size(), 2U);
  for (const auto& br : out) EXPECT_TRUE(equal_up_to_global_phase(br.state, want[0].state));
}

TEST(Statevector, ForcedBranches) {
  const auto b = and_block(true);
  const Netlist x = ir::expand(b.netlist);
  const std::vector<Start> init{Start::One, Start::One, Start::Zero};
  for (auto policy : {BranchPolicy::Forced0, BranchPolicy::Forced1}) {
    const auto out = run_statevector(x, init, policy);
    ASSERT_EQ(out.size(), 1U);
    EXPECT_EQ(out[0].cbits[0], policy == BranchPolicy::Forced1 ? 1 : 0);
    EXPECT_TRUE(equal_up_to_global_phase(out[0].state, basis_state(3, 3)));
  }
}

TEST(Statevector, ForcedImpossibleOutcomeThrows) {
  Netlist nl;
  const auto q = nl.alloc_register("q", 1, ir::WireInit::Zero);
  nl.append(Gate::single(GateKind::H, q[0]));  // |+>: X outcome is always 0
  const auto c = nl.alloc_cbit();
  nl.append(Gate::measure_x(q[0], c));
  const std::vector<Start> init{Start::Zero};
  EXPECT_EQ(run_statevector(nl, init, BranchPolicy::Both).size(), 1U);
  EXPECT_THROW((void)run_statevector(nl, init, BranchPolicy::Forced1), Error);
}

TEST(Statevector, TwoBitAdder) {
  Netlist nl;
  const auto a = nl.alloc_register("a", 2, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", 2, ir::WireInit::Input);
  blocks::build_adder_in_place(nl, a, b, false);
  const Netlist x = ir::expand(nl);
  std::vector<std::uint8_t> bits(x.wire_count(), 0);
  bits[a[0].value] = 1;
  bits[b[0].value] = 1;
  for (const auto& br : run_statevector(x, initial_from(x, bits))) {
    // a=1, b=2 afterwards: wires a0=1, b1=1.
    const std::size_t want = (std::size_t{1} << a[0].value) | (std::size_t{1} << b[1].value);
    EXPECT_TRUE(equal_up_to_global_phase(br.state, basis_state(x.wire_count(), want)));
  }
}

TEST(Statevector, RejectsWideNetlists) {
  Netlist nl;
  nl.alloc_register("q", 13, ir::WireInit::Zero);
  const std::vector<Start> init(13, Start::Zero);
  try {
    (void)run_statevector(nl, init);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyWires);
  }
}

TEST(Statevector, RejectsMacros) {
  const auto b = and_block(false);
  const std::vector<Start> init(3, Start::Zero);
  EXPECT_THROW((void)run_statevector(b.netlist, init), Error);
}

TEST(Statevector, GatesAreUnitary) {
  Netlist nl;
  const auto q = nl.alloc_register("q", 3, ir::WireInit::Zero);
  for (int rep = 0; rep < 20; ++rep) {
    nl.append(Gate::single(GateKind::H, q[rep % 3]));
    nl.append(Gate::single(GateKind::T, q[(rep + 1) % 3]));
    nl.append(Gate::cnot(q[rep % 3], q[(rep + 2) % 3]));
    nl.append(Gate::single(GateKind::Sdg, q[(rep + 2) % 3]));
    nl.append(Gate::cz(q[0], q[1]));
  }
  const auto out = run_statevector(nl, std::vector<Start>(3, Start::MagicT));
  EXPECT_NEAR(out[0].state.norm(), 1.0, kTolerance);
}

TEST(GlobalPhase, Comparison) {
  const StateVector a(std::vector<Start>{Start::MagicT, Start::One});
  Netlist nl;
  const auto q = nl.alloc_register("q", 2, ir::WireInit::Input);
  nl.append(Gate::single(GateKind::Z, q[1]));  // global -1 on |.1>
  const auto b = run_statevector(nl, std::vector<Start>{Start::MagicT, Start::One});
  EXPECT_TRUE(equal_up_to_global_phase(a, b[0].state));
  Netlist nl2 = nl.empty_like();
  nl2.append(Gate::single(GateKind::Z, q[0]));  // relative phase
  const auto c = run_statevector(nl2, std::vector<Start>{Start::MagicT, Start::One});
  EXPECT_FALSE(equal_up_to_global_phase(a, c[0].state));
}

TEST(Basis, RejectsCliffordT) {
  Netlist nl;
  const auto q = nl.alloc_register("q", 1, ir::WireInit::Input);
  nl.append(Gate::single(GateKind::H, q[0]));
  try {
    (void)run_basis(nl, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonClassicalGate);
  }
}

TEST(Basis, DetectsUncomputeMisuse) {
  Netlist nl;
  const auto q = nl.alloc_register("q", 3, ir::WireInit::Input);
  blocks::build_uncompute_and(nl, q[0], q[1], q[2]);
  BasisAssignment in;
  in.wires = {1, 1, 0};  // target should hold 1
  try {
    (void)run_basis(nl, in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UncomputeMisuse);
  }
  in.wires = {1, 0, 0};
  EXPECT_NO_THROW((void)run_basis(nl, in));
}

TEST(Basis, DetectsDirtyAndTarget) {
  Netlist nl;
  const auto q = nl.alloc_register("q", 3, ir::WireInit::Input);
  nl.append(Gate::logical_and(q[0], q[1], q[2]));
  BasisAssignment in;
  in.wires = {0, 0, 1};
  try {
    (void)run_basis(nl, in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AndTargetNotClean);
  }
}

TEST(Basis, RecordsCarryLessOverflow) {
  Netlist nl;
  const auto a = nl.alloc_register("a", 2, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", 2, ir::WireInit::Input);
  blocks::build_adder_in_place(nl, a, b, false);
  BasisAssignment in;
  in.wires.assign(nl.wire_count(), 0);
  write_value(in, a, 3);
  write_value(in, b, 2);
  const auto r = run_basis(nl, in);
  EXPECT_EQ(read_value(r.state, b), 1U);
  EXPECT_EQ(r.overflowing_adders.size(), 1U);
}

namespace {

EquivalenceSpec adder_spec(const std::vector<WireId>& a, const std::vector<WireId>& b,
                           std::optional<WireId> carry, std::size_t m) {
  EquivalenceSpec contract;
  contract.inputs = {a, b};
  std::vector<WireId> sum = b;
  if (carry) sum.push_back(*carry);
  contract.outputs = {sum};
  const std::uint64_t mask = carry ? (std::uint64_t{2} << m) - 1 : (std::uint64_t{1} << m) - 1;
  contract.reference = [mask](std::span<const std::uint64_t> v) {
    return std::vector<std::uint64_t>{(v[0] + v[1]) & mask};
  };
  return contract;
}

}  // namespace

TEST(Equivalence, AndBlock) {
  const auto b = and_block(false);
  EquivalenceSpec contract;
  contract.inputs = {b.in};
  contract.outputs = {{b.in[0], b.in[1], b.target}};
  contract.reference = [](std::span<const std::uint64_t> v) {
    return std::vector<std::uint64_t>{v[0] | ((v[0] & (v[0] >> 1) & 1U) << 2)};
  };
  const auto r = verify_equivalence(ir::expand(b.netlist), contract, Engine::Statevector);
  EXPECT_EQ(r.inputs_checked, 4U);
  EXPECT_TRUE(r.mismatches.empty());
  EXPECT_TRUE(verify_equivalence(b.netlist, contract, Engine::Basis).mismatches.empty());
}

TEST(Equivalence, ThreeBitAdderBothEngines) {
  Netlist nl;
  const auto a = nl.alloc_register("a", 3, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", 3, ir::WireInit::Input);
  const auto carry = blocks::build_adder_in_place(nl, a, b, true);
  const auto contract = adder_spec(a, b, carry, 3);
  const auto sv = verify_equivalence(ir::expand(nl), contract, Engine::Statevector);
  EXPECT_EQ(sv.inputs_checked, 64U);
  EXPECT_TRUE(sv.mismatches.empty());
  const auto basis = verify_equivalence(ir::lower_adders(nl), contract, Engine::Basis);
  EXPECT_TRUE(basis.mismatches.empty());
}

TEST(Equivalence, CorruptedAdderIsCaught) {
  Netlist nl;
  const auto a = nl.alloc_register("a", 3, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", 3, ir::WireInit::Input);
  const auto carry = blocks::build_adder_in_place(nl, a, b, true);
  const Netlist x = ir::expand(nl);
  std::size_t cx = 0;
  while (x.gates()[cx].kind != GateKind::CNOT) ++cx;
  const auto r = verify_equivalence(ir::without_gate(x, cx), adder_spec(a, b, carry, 3),
                                    Engine::Statevector);
  EXPECT_GE(r.mismatches.size(), 1U);
  EXPECT_FALSE(r.ok());
}

TEST(Equivalence, EnginesAgreeOnEveryBasisInput) {
  for (std::size_t m : {2, 3}) {
    for (bool with_carry : {true, false}) {
      Netlist nl;
      const auto a = nl.alloc_register("a", m, ir::WireInit::Input);
      const auto b = nl.alloc_register("b", m, ir::WireInit::Input);
      blocks::build_adder_in_place(nl, a, b, with_carry);
      const Netlist x = ir::expand(nl);
      const Netlist lowered = ir::lower_adders(nl);
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << (2 * m)); ++v) {
        BasisAssignment in;
        in.wires.assign(nl.wire_count(), 0);
        write_value(in, a, v & ((1U << m) - 1));
        write_value(in, b, v >> m);
        const auto classical = run_basis(lowered, in).state;
        std::size_t index = 0;
        for (std::size_t w = 0; w < classical.wires.size(); ++w) {
          index |= std::size_t{classical.wires[w]} << w;
        }
        const auto expect = basis_state(nl.wire_count(), index);
        for (const auto& br : run_statevector(x, initial_from(x, in.wires))) {
          EXPECT_TRUE(equal_up_to_global_phase(br.state, expect)) << m << " " << v;
        }
      }
    }
  }
}

TEST(Equivalence, BudgetEnforced) {
  Netlist nl;
  const auto a = nl.alloc_register("a", 4, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", 4, ir::WireInit::Input);
  const auto carry = blocks::build_adder_in_place(nl, a, b, false);
  EXPECT_THROW((void)verify_equivalence(ir::expand(nl), adder_spec(a, b, carry, 4),
                                        Engine::Statevector, 8),
               Error);
}

TEST(Equivalence, ThreadCountDoesNotChangeReport) {
  Netlist nl;
  const auto a = nl.alloc_register("a", 4, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", 4, ir::WireInit::Input);
  const auto carry = blocks::build_adder_in_place(nl, a, b, false);
  const Netlist broken = ir::without_gate(ir::lower_adders(nl), 12);
  const auto contract = adder_spec(a, b, carry, 4);
  ::setenv("QSQ_THREADS", "1", 1);
  const auto one = verify_equivalence(broken, contract, Engine::Basis);
  ::setenv("QSQ_THREADS", "3", 1);
  EXPECT_EQ(sweep_threads(), 3U);
  const auto three = verify_equivalence(broken, contract, Engine::Basis);
  ::unsetenv("QSQ_THREADS");
  EXPECT_EQ(one.to_json(), three.to_json());
  EXPECT_FALSE(one.mismatches.empty());
}

TEST(Equivalence, ReportJsonShape) {
  EquivalenceReport r;
  r.inputs_checked = 4;
  r.mismatches.push_back({{3}, {9}, {8}, ""});
  const auto text = r.to_json();
  EXPECT_NE(text.find("\"inputs_checked\": 4"), std::string::npos);
  EXPECT_NE(text.find("\"input\": 3"), std::string::npos);
  EXPECT_NE(text.find("\"expected\": 9"), std::string::npos);
  EXPECT_NE(text.find("\"got\": 8"), std::string::npos);
}

#include "qsq/blocks.hpp"

#include <set>

#include "qsq/error.hpp"

namespace qsq::blocks {

using ir::Gate;
using ir::GateKind;
using ir::Netlist;
using ir::WireId;

BlockBudget operator-(const BlockBudget& lhs, const BlockBudget& rhs) {
  return {lhs.t_count - rhs.t_count, lhs.t_depth - rhs.t_depth, lhs.cnot_count - rhs.cnot_count,
          lhs.cnot_depth - rhs.cnot_depth, lhs.ancillae - rhs.ancillae};
}

std::vector<Gate> logical_and_sequence(WireId x, WireId y, WireId target) {
  return {
      Gate::single(GateKind::H, target),
      Gate::single(GateKind::T, target),
      Gate::cnot(x, target),
      Gate::cnot(y, target),
      Gate::cnot(target, x),
      Gate::cnot(target, y),
      Gate::single(GateKind::Tdg, x),
      Gate::single(GateKind::Tdg, y),
      Gate::single(GateKind::T, target),
      Gate::cnot(target, x),
      Gate::cnot(target, y),
      Gate::single(GateKind::H, target),
      Gate::single(GateKind::S, target),
  };
}

std::vector<Gate> uncompute_and_sequence(WireId x, WireId y, WireId target, std::uint32_t cbit) {
  return {Gate::measure_x(target, cbit), Gate::classical_cz(cbit, x, y)};
}

std::vector<Gate> adder_sequence(const Gate& add) {
  const auto a = add.adder_a();
  const auto b = add.adder_b();
  const auto anc = add.adder_ancillae();
  const std::size_t m = add.width;
  // carry(i) holds c_i for i in 1..m; c_m only exists with a carry-out.
  auto carry = [&](std::size_t i) { return i < m ? anc[i - 1] : *add.adder_carry(); };

  std::vector<Gate> out;
  out.push_back(Gate::logical_and(a[0], b[0], carry(1)));

  const std::size_t top = add.carry_out ? m - 1 : m - 2;
  for (std::size_t i = 1; i <= top; ++i) {
    out.push_back(Gate::cnot(carry(i), a[i]));
    out.push_back(Gate::cnot(carry(i), b[i]));
    out.push_back(Gate::logical_and(a[i], b[i], carry(i + 1)));
    out.push_back(Gate::cnot(carry(i), carry(i + 1)));
  }

  if (add.carry_out) {
    out.push_back(Gate::cnot(carry(m - 1), a[m - 1]));
    out.push_back(Gate::cnot(a[m - 1], b[m - 1]));
  } else {
    out.push_back(Gate::cnot(carry(m - 1), b[m - 1]));
    out.push_back(Gate::cnot(a[m - 1], b[m - 1]));
  }

  for (std::size_t i = m - 2; i >= 1; --i) {
    out.push_back(Gate::cnot(carry(i), carry(i + 1)));
    out.push_back(Gate::uncompute_and(a[i], b[i], carry(i + 1)));
    out.push_back(Gate::cnot(carry(i), a[i]));
    out.push_back(Gate::cnot(a[i], b[i]));
  }

  out.push_back(Gate::uncompute_and(a[0], b[0], carry(1)));
  out.push_back(Gate::cnot(a[0], b[0]));
  return out;
}

std::int64_t adder_and_count(std::int64_t m, bool with_carry_out) {
  return with_carry_out ? m : m - 1;
}

WireId build_logical_and(Netlist& netlist, WireId x, WireId y) {
  if (x == y) {
    throw Error(ErrorCode::SameWire, "logical-AND needs two distinct inputs");
  }
  if (x.value >= netlist.wire_count() || y.value >= netlist.wire_count()) {
    throw Error(ErrorCode::UnallocatedWire, "logical-AND input is not allocated");
  }
  const WireId target = netlist.alloc_ancilla();
  netlist.append(Gate::logical_and(x, y, target));
  return target;
}

void build_uncompute_and(Netlist& netlist, WireId x, WireId y, WireId target) {
  if (x == y) {
    throw Error(ErrorCode::SameWire, "uncompute-AND needs two distinct inputs");
  }
  netlist.append(Gate::uncompute_and(x, y, target));
}

std::optional<WireId> build_adder_in_place(Netlist& netlist, std::span<const WireId> a,
                                           std::span<const WireId> b, bool with_carry_out) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::WidthMismatch, "adder operands have different widths");
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::WidthMismatch, "adder width must be at least 2");
  }
  std::set<WireId> seen(a.begin(), a.end());
  seen.insert(b.begin(), b.end());
  if (seen.size() != 2 * a.size()) {
    throw Error(ErrorCode::OverlappingOperands, "adder operand wires overlap");
  }
  std::vector<WireId> ancillae;
  ancillae.reserve(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) ancillae.push_back(netlist.alloc_ancilla());
  std::optional<WireId> carry;
  if (with_carry_out) carry = netlist.alloc_ancilla();
  netlist.append(Gate::add_in_place(a, b, ancillae, carry));
  return carry;
}

namespace {

BlockBudget measure(const Netlist& macro_netlist, std::int64_t ancillae) {
  const Netlist expanded = ir::expand(macro_netlist);
  return {static_cast<std::int64_t>(ir::count(expanded, ir::CountClass::T)),
          static_cast<std::int64_t>(ir::schedule_asap(expanded, ir::DepthClass::T)),
          static_cast<std::int64_t>(ir::count(expanded, ir::CountClass::Cnot)),
          static_cast<std::int64_t>(ir::schedule_asap(expanded, ir::DepthClass::Cnot)),
          ancillae};
}

}  // namespace

BlockBudget measure_logical_and() {
  Netlist nl;
  const auto in = nl.alloc_register("in", 2, ir::WireInit::Input);
  build_logical_and(nl, in[0], in[1]);
  return measure(nl, 1);
}

BlockBudget measure_adder(std::int64_t m, bool with_carry_out) {
  Netlist nl;
  const auto a = nl.alloc_register("a", static_cast<std::size_t>(m), ir::WireInit::Input);
  const auto b = nl.alloc_register("b", static_cast<std::size_t>(m), ir::WireInit::Input);
  build_adder_in_place(nl, a, b, with_carry_out);
  return measure(nl, m - 1 + (with_carry_out ? 1 : 0));
}

BlockBudget adder_budget_m_ands(std::int64_t m) {
  return {4 * m, 2 * m, 12 * m - 9, 8 * m - 6, m};
}

BlockBudget adder_budget_m_minus_1_ands(std::int64_t m) {
  return {4 * (m - 1), 2 * (m - 1), 12 * m - 9, 8 * m - 6, m - 1};
}

AdderBudgetReport adder_budget_report(std::int64_t m, bool with_carry_out) {
  AdderBudgetReport r;
  r.m = m;
  r.carry_out = with_carry_out;
  r.and_count = adder_and_count(m, with_carry_out);
  r.measured = measure_adder(m, with_carry_out);
  r.budget_m_ands = adder_budget_m_ands(m);
  r.budget_m_minus_1_ands = adder_budget_m_minus_1_ands(m);
  r.delta_m_ands = r.measured - r.budget_m_ands;
  r.delta_m_minus_1_ands = r.measured - r.budget_m_minus_1_ands;
  return r;
}

}  // namespace qsq::blocks

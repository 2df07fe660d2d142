#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsq/circuit.hpp"

namespace qsq::blocks {

struct BlockBudget {
  std::int64_t t_count = 0;
  std::int64_t t_depth = 0;
  std::int64_t cnot_count = 0;
  std::int64_t cnot_depth = 0;
  std::int64_t ancillae = 0;

  friend bool operator==(const BlockBudget&, const BlockBudget&) = default;
};

BlockBudget operator-(const BlockBudget& lhs, const BlockBudget& rhs);

// Expansion sequences used by ir::expand / ir::lower_adders.

/// Temporary logical-AND onto a |0> target: the target is turned into |T>
/// with H, T and then a CNOT/T/H/S network writes x AND y.
std::vector<ir::Gate> logical_and_sequence(ir::WireId x, ir::WireId y, ir::WireId target);

/// X-basis measurement of the target, then CZ(x, y) when the result is 1.
std::vector<ir::Gate> uncompute_and_sequence(ir::WireId x, ir::WireId y, ir::WireId target,
                                             std::uint32_t cbit);

/// Ripple-carry lowering of one AddInPlace record into CNOTs and AND macros.
/// Carry c_{i+1} lives on ancilla i (or on the carry-out wire for the top
/// stage); every internal carry is uncomputed again.
std::vector<ir::Gate> adder_sequence(const ir::Gate& add);

/// Number of logical-ANDs in an m-bit adder: m with carry-out, m-1 without.
[[nodiscard]] std::int64_t adder_and_count(std::int64_t m, bool with_carry_out);

/// Appends a LogicalAnd onto a fresh ancilla and returns it.
ir::WireId build_logical_and(ir::Netlist& netlist, ir::WireId x, ir::WireId y);

/// Appends an UncomputeAnd. The caller guarantees target == x AND y; the basis
/// simulator checks it.
void build_uncompute_and(ir::Netlist& netlist, ir::WireId x, ir::WireId y, ir::WireId target);

/// b += a (mod 2^m), a restored. Allocates m-1 carry ancillae and, when
/// requested, a fresh carry-out wire which is returned.
std::optional<ir::WireId> build_adder_in_place(ir::Netlist& netlist, std::span<const ir::WireId> a,
                                               std::span<const ir::WireId> b,
                                               bool with_carry_out);

/// Measured budget of an isolated, fully expanded block.
BlockBudget measure_logical_and();
BlockBudget measure_adder(std::int64_t m, bool with_carry_out);

/// Reference adder budgets under the two AND conventions: m ANDs per m-bit
/// adder, or m-1 ANDs (4(m-1) T gates).
BlockBudget adder_budget_m_ands(std::int64_t m);
BlockBudget adder_budget_m_minus_1_ands(std::int64_t m);

struct AdderBudgetReport {
  std::int64_t m = 0;
  bool carry_out = false;
  std::int64_t and_count = 0;
  BlockBudget measured;
  BlockBudget budget_m_ands;
  BlockBudget budget_m_minus_1_ands;
  BlockBudget delta_m_ands;          // measured - budget_m_ands
  BlockBudget delta_m_minus_1_ands;  // measured - budget_m_minus_1_ands
};

AdderBudgetReport adder_budget_report(std::int64_t m, bool with_carry_out);

}  // namespace qsq::blocks

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsq/circuit.hpp"
#include "qsq/layout.hpp"

namespace qsq::synth {

/// One adder of the cascade. `b` holds the sum afterwards; for stage 0 the
/// carry-out wire is the sum's top bit.
struct AdderStage {
  int width = 0;
  bool carry_out = false;
  std::vector<ir::WireId> a;
  std::vector<ir::WireId> b;
  std::optional<ir::WireId> carry;
  std::vector<ir::WireId> sum;  // b followed by carry when present
  int and_count = 0;
};

/// Which index case of the uncomputation schedule produced a target.
enum class UncomputeRule {
  OddLowLeading,
  OddLowInner,
  EvenLowLeading,
  EvenLowInner,
  OddHighInner,
  EvenHighLeading,
  EvenHighInner,
  Fallback,  // cell missed by the schedule, uncomputed afterwards
};

enum class UncomputeOutcome {
  Uncomputed,
  SkippedNotProduct,  // target cell is a pad or a copy
  SkippedRepeat,      // target already uncomputed
  SkippedOutsideGrid,
};

struct UncomputeEvent {
  int row = 0;
  int col = 0;
  UncomputeRule rule = UncomputeRule::Fallback;
  UncomputeOutcome outcome = UncomputeOutcome::Uncomputed;
};

[[nodiscard]] std::string_view to_string(UncomputeRule rule);
[[nodiscard]] std::string_view to_string(UncomputeOutcome outcome);

struct SquarerCircuit {
  int n = 0;
  ir::Netlist netlist;
  layout::OperandGrid grid;
  std::vector<std::vector<ir::WireId>> cell_wires;  // parallel to grid.rows
  std::vector<ir::WireId> output;                   // P_0..P_{2n-1}
  std::vector<AdderStage> stages;
  std::vector<UncomputeEvent> uncompute_log;
  int product_and_count = 0;  // ANDs generating partial products

  [[nodiscard]] const std::vector<ir::WireId>& input() const {
    return netlist.registers().at("A");
  }
  [[nodiscard]] int adder_and_count() const;
  [[nodiscard]] int total_and_count() const { return product_and_count + adder_and_count(); }
  [[nodiscard]] int carry_less_stage_count() const;
  /// Schedule entries that did not uncompute anything, plus fallback uses.
  [[nodiscard]] std::vector<UncomputeEvent> uncompute_discrepancies() const;
};

/// Builds the garbage-free squarer for an n-bit input, n > 4. Registers:
///   A    input, n wires
///   P    output, 2n positions (P_0 aliases A_0, P_1 is the "P1" zero wire)
///   T    grid cells, row-major
///   V<k> sum positions passed from stage k to stage k+1 (aliases)
///   anc  products, copies, pads and adder carries
[[nodiscard]] SquarerCircuit synthesize_squarer(int n);

/// Position -> wire for P_0..P_{2n-1}.
[[nodiscard]] std::vector<ir::WireId> output_bit_map(const SquarerCircuit& circuit);

/// Raw target list of the uncomputation schedule, before validation.
[[nodiscard]] std::vector<UncomputeEvent> uncompute_schedule(int n);

}  // namespace qsq::synth

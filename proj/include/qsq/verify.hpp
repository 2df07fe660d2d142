#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsq/simulator.hpp"
#include "qsq/synth.hpp"

namespace qsq::verify {

/// Input A, output P, reference a*a.
[[nodiscard]] sim::EquivalenceSpec squaring_spec(const synth::SquarerCircuit& circuit);

/// Copy without the k-th non-preparation gate. Throws std::out_of_range.
[[nodiscard]] ir::Netlist drop_operation(const ir::Netlist& netlist, std::size_t k);

struct Check {
  int n = 0;                // 0 for block checks
  std::string level;        // "macro", "block", or a block name
  sim::EquivalenceReport report;
};

/// Exhaustive basis runs of the squarer: once on the macro netlist and once
/// with adders lowered to AND/CNOT blocks. `drop` mutates the lowered one.
[[nodiscard]] std::vector<Check> verify_squarer(const synth::SquarerCircuit& circuit,
                                                std::optional<std::size_t> drop = std::nullopt);

/// Statevector checks of the expanded blocks: logical-AND, AND followed by
/// its uncompute, and small adders with and without carry-out.
[[nodiscard]] std::vector<Check> verify_blocks_statevector();

/// {"inputs_checked": N, "mismatches": [...]} over all checks, each mismatch
/// tagged with its "n" and "level".
[[nodiscard]] std::string report_json(const std::vector<Check>& checks);

}  // namespace qsq::verify

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsq/circuit.hpp"

namespace qsq::sim {

/// Wire and classical-bit values for the basis engine.
struct BasisAssignment {
  std::vector<std::uint8_t> wires;
  std::vector<std::uint8_t> cbits;
};

struct BasisRun {
  BasisAssignment state;
  /// Indices of carry-less AddInPlace gates whose sum exceeded their width.
  std::vector<std::size_t> overflowing_adders;
};

/// Classical simulation of a macro or partially lowered netlist. X/CNOT flip
/// bits, Z/CZ are ignored (diagonal), PrepZero clears the wire, LogicalAnd
/// writes x AND y onto a clean target, UncomputeAnd clears a target equal to
/// x AND y, AddInPlace adds. Anything else throws NonClassicalGate; a dirty
/// AND target throws AndTargetNotClean; a wrong uncompute target throws
/// UncomputeMisuse.
BasisRun run_basis(const ir::Netlist& netlist, BasisAssignment input);

/// Little-endian value of `wires`.
std::uint64_t read_value(const BasisAssignment& state, std::span<const ir::WireId> wires);
void write_value(BasisAssignment& state, std::span<const ir::WireId> wires, std::uint64_t value);

inline constexpr std::uint32_t kMaxStatevectorWires = 12;
inline constexpr double kTolerance = 1e-9;

using Amplitude = std::complex<double>;

/// Amplitudes over 2^w basis states; bit k of the index is wire k.
class StateVector {
 public:
  enum class Start : std::uint8_t { Zero, One, MagicT };

  explicit StateVector(std::span<const Start> wires);

  [[nodiscard]] std::uint32_t wire_count() const noexcept { return wires_; }
  [[nodiscard]] const std::vector<Amplitude>& amplitudes() const noexcept { return amp_; }
  [[nodiscard]] double norm() const;

  void apply(const ir::Gate& gate);
  /// H-basis projection of `wire` onto `outcome`, renormalized, then reset to
  /// |0>. Returns the outcome probability before renormalization.
  double measure_x(ir::WireId wire, int outcome);

  void check_norm() const;

 private:
  void single(std::uint32_t w, const std::array<Amplitude, 4>& u);

  std::uint32_t wires_ = 0;
  std::vector<Amplitude> amp_;
};

enum class BranchPolicy { Forced0, Forced1, Both };

struct Branch {
  StateVector state;
  std::vector<std::uint8_t> cbits;
  double probability = 1.0;
};

/// Runs an expanded netlist (<= 12 wires). Preparation gates are no-ops:
/// `initial` already describes each wire. With Both, every MeasureX splits
/// the run; zero-probability branches are dropped.
std::vector<Branch> run_statevector(const ir::Netlist& netlist,
                                    std::span<const StateVector::Start> initial,
                                    BranchPolicy policy = BranchPolicy::Both);

/// Start states implied by the netlist's preparations, with `bits` giving the
/// value of every other wire.
std::vector<StateVector::Start> initial_from(const ir::Netlist& netlist,
                                             const std::vector<std::uint8_t>& bits);

/// Amplitude-wise equality after fixing the phase on the first nonzero
/// amplitude of `lhs`.
bool equal_up_to_global_phase(const StateVector& lhs, const StateVector& rhs,
                              double tol = kTolerance);

enum class Engine { Basis, Statevector };

/// Exhaustive check over every value of the input registers. Output
/// registers must match `reference`, input wires not listed as outputs must
/// be restored, and every other wire must end at 0.
struct EquivalenceSpec {
  std::vector<std::vector<ir::WireId>> inputs;
  std::vector<std::vector<ir::WireId>> outputs;
  std::function<std::vector<std::uint64_t>(std::span<const std::uint64_t>)> reference;
};

struct Mismatch {
  std::vector<std::uint64_t> input;
  std::vector<std::uint64_t> expected;
  std::vector<std::uint64_t> got;
  std::string detail;
};

struct EquivalenceReport {
  std::size_t inputs_checked = 0;
  std::vector<Mismatch> mismatches;
  /// Inputs for which some carry-less adder overflowed (basis engine only).
  std::vector<std::vector<std::uint64_t>> overflows;

  [[nodiscard]] bool ok() const { return mismatches.empty() && overflows.empty(); }
  /// {"inputs_checked": N, "mismatches": [{"input", "expected", "got"}...]}
  [[nodiscard]] std::string to_json() const;
};

/// Worker count for sweeps: QSQ_THREADS if set and positive, else 1.
unsigned sweep_threads();

EquivalenceReport verify_equivalence(const ir::Netlist& netlist, const EquivalenceSpec& contract,
                                     Engine engine,
                                     std::uint32_t wire_budget = kMaxStatevectorWires);

}  // namespace qsq::sim

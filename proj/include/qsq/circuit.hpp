#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsq::ir {

/// Dense wire index within one Netlist.
struct WireId {
  std::uint32_t value = 0;

  friend auto operator<=>(const WireId&, const WireId&) = default;
};

enum class GateKind : std::uint8_t {
  H,
  S,
  Sdg,
  T,
  Tdg,
  X,
  Z,
  CNOT,
  CZ,
  PrepZero,
  PrepMagicT,
  MeasureX,
  ClassicalCZ,
  // Macros. Removed by expand().
  LogicalAnd,
  UncomputeAnd,
  AddInPlace,
};

[[nodiscard]] bool is_macro(GateKind kind) noexcept;
[[nodiscard]] bool is_pseudo(GateKind kind) noexcept;

/// Kind string used by the JSON netlist format ("h", "cx", "prep0", ...).
[[nodiscard]] std::string_view kind_name(GateKind kind) noexcept;
[[nodiscard]] std::optional<GateKind> kind_from_name(std::string_view name) noexcept;

/// One gate record. Operand order per kind:
///   single-wire gates: [target]
///   CNOT / CZ: [control, target]
///   MeasureX: [target], cbit = result bit
///   ClassicalCZ: [c, t], cbit = condition
///   LogicalAnd / UncomputeAnd: [x, y, target]
///   AddInPlace: [a_0..a_{m-1}, b_0..b_{m-1}, anc_1..anc_{m-1}, carry?]
///               with width = m and carry_out telling whether the last wire is present.
struct Gate {
  GateKind kind = GateKind::X;
  std::vector<WireId> wires;
  std::optional<std::uint32_t> cbit;
  std::uint32_t width = 0;
  bool carry_out = false;

  static Gate single(GateKind kind, WireId target);
  static Gate cnot(WireId control, WireId target);
  static Gate cz(WireId control, WireId target);
  static Gate measure_x(WireId target, std::uint32_t cbit);
  static Gate classical_cz(std::uint32_t cbit, WireId control, WireId target);
  static Gate logical_and(WireId x, WireId y, WireId target);
  static Gate uncompute_and(WireId x, WireId y, WireId target);
  static Gate add_in_place(std::span<const WireId> a, std::span<const WireId> b,
                           std::span<const WireId> ancillae, std::optional<WireId> carry);

  [[nodiscard]] std::span<const WireId> adder_a() const;
  [[nodiscard]] std::span<const WireId> adder_b() const;
  [[nodiscard]] std::span<const WireId> adder_ancillae() const;
  [[nodiscard]] std::optional<WireId> adder_carry() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

enum class WireInit { Zero, Input, MagicT };

inline constexpr std::string_view kAncillaPool = "anc";

/// Named wire lists. A name may alias wires owned by another register
/// (the output register P shares wires with A and with adder sums).
class RegisterMap {
 public:
  using Map = std::map<std::string, std::vector<WireId>, std::less<>>;

  void add(std::string name, std::vector<WireId> wires);
  void append(std::string_view name, WireId wire);

  [[nodiscard]] bool contains(std::string_view name) const;
  [[nodiscard]] const std::vector<WireId>& at(std::string_view name) const;
  [[nodiscard]] const Map& entries() const noexcept { return map_; }

  friend bool operator==(const RegisterMap&, const RegisterMap&) = default;

 private:
  Map map_;
};

/// Ordered gate list over dense wires. Gate records are never modified after
/// append; passes (expand, relabel, ...) build new netlists.
class Netlist {
 public:
  Netlist() = default;

  /// Appends `width` fresh wires under `name`. init=Zero emits PrepZero,
  /// init=MagicT emits PrepMagicT, init=Input emits nothing.
  std::vector<WireId> alloc_register(std::string name, std::size_t width, WireInit init);

  /// Fresh wire added to the ancilla pool register.
  WireId alloc_ancilla(WireInit init = WireInit::Zero);

  /// Names existing wires without allocating.
  void alias_register(std::string name, std::vector<WireId> wires);

  std::uint32_t alloc_cbit() { return cbit_count_++; }

  void append(Gate gate);

  [[nodiscard]] std::uint32_t wire_count() const noexcept { return wire_count_; }
  [[nodiscard]] std::uint32_t cbit_count() const noexcept { return cbit_count_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
  [[nodiscard]] const RegisterMap& registers() const noexcept { return registers_; }
  [[nodiscard]] bool is_expanded() const;

  /// Shell with the same wires, cbits and registers but no gates.
  [[nodiscard]] Netlist empty_like() const;

  /// Used by the JSON loader: declare sizes up front, then append.
  static Netlist with_layout(std::uint32_t wires, std::uint32_t cbits, RegisterMap registers);

  friend bool operator==(const Netlist&, const Netlist&) = default;

 private:
  void check_wire(WireId w) const;

  std::uint32_t wire_count_ = 0;
  std::uint32_t cbit_count_ = 0;
  std::vector<Gate> gates_;
  RegisterMap registers_;
};

/// Replaces every AddInPlace by its CNOT / LogicalAnd / UncomputeAnd sequence.
[[nodiscard]] Netlist lower_adders(const Netlist& netlist);

/// Full expansion to Clifford+T primitives, measurement and classical control.
[[nodiscard]] Netlist expand(const Netlist& netlist);

/// Bijective wire renaming; `mapping[old] = new`.
[[nodiscard]] Netlist relabel(const Netlist& netlist, std::span<const WireId> mapping);

/// Copy with gate `index` removed (mutation testing).
[[nodiscard]] Netlist without_gate(const Netlist& netlist, std::size_t index);

enum class CountClass { T, Cnot, TotalGates, Measurements };
enum class DepthClass { T, Cnot };

/// T counts T and Tdg; Cnot counts CNOT only. Both require an expanded netlist.
[[nodiscard]] std::size_t count(const Netlist& netlist, CountClass cls);
[[nodiscard]] std::size_t count_kind(const Netlist& netlist, GateKind kind);

struct Schedule {
  std::vector<std::int64_t> layer;  // per gate; -1 for pseudo-gates
  std::int64_t layer_count = 0;
};

/// Per-wire program-order ASAP layering. Preparations occupy no layer.
/// Consecutive CNOTs sharing a control with no other gate on that control in
/// between form one fan-out layer when their targets are free.
[[nodiscard]] Schedule asap_layers(const Netlist& netlist);

/// Number of layers containing at least one gate of the class.
[[nodiscard]] std::size_t schedule_asap(const Netlist& netlist, DepthClass cls);

}  // namespace qsq::ir

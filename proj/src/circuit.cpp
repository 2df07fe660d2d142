#include "qsq/circuit.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "qsq/blocks.hpp"
#include "qsq/error.hpp"

namespace qsq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateRegister: return "duplicate-register";
    case ErrorCode::ZeroWidth: return "zero-width";
    case ErrorCode::UnallocatedWire: return "unallocated-wire";
    case ErrorCode::SameWire: return "same-wire";
    case ErrorCode::WidthMismatch: return "width-mismatch";
    case ErrorCode::OverlappingOperands: return "overlapping-operands";
    case ErrorCode::UnsupportedWidth: return "unsupported-width";
    case ErrorCode::Unexpanded: return "unexpanded";
    case ErrorCode::UncomputeMisuse: return "uncompute-misuse";
    case ErrorCode::AndTargetNotClean: return "and-target-not-clean";
    case ErrorCode::NonClassicalGate: return "non-classical gate in basis mode";
    case ErrorCode::TooManyWires: return "too-many-wires";
    case ErrorCode::NormDrift: return "norm-drift";
    case ErrorCode::UnknownDesign: return "unknown-design";
    case ErrorCode::ParityMismatch: return "parity-mismatch";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace qsq

namespace qsq::ir {

namespace {

struct KindName {
  GateKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 16> kKindNames{{
    {GateKind::H, "h"},
    {GateKind::S, "s"},
    {GateKind::Sdg, "sdg"},
    {GateKind::T, "t"},
    {GateKind::Tdg, "tdg"},
    {GateKind::X, "x"},
    {GateKind::Z, "z"},
    {GateKind::CNOT, "cx"},
    {GateKind::CZ, "cz"},
    {GateKind::PrepZero, "prep0"},
    {GateKind::PrepMagicT, "prepT"},
    {GateKind::MeasureX, "mx"},
    {GateKind::ClassicalCZ, "ccz_classical"},
    {GateKind::LogicalAnd, "and"},
    {GateKind::UncomputeAnd, "and_dg"},
    {GateKind::AddInPlace, "add"},
}};

bool is_single(GateKind kind) {
  switch (kind) {
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::X:
    case GateKind::Z:
    case GateKind::PrepZero:
    case GateKind::PrepMagicT:
      return true;
    default:
      return false;
  }
}

std::size_t expected_arity(const Gate& g) {
  if (is_single(g.kind) || g.kind == GateKind::MeasureX) return 1;
  switch (g.kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::ClassicalCZ:
      return 2;
    case GateKind::LogicalAnd:
    case GateKind::UncomputeAnd:
      return 3;
    case GateKind::AddInPlace:
      return 3 * static_cast<std::size_t>(g.width) - 1 + (g.carry_out ? 1 : 0);
    default:
      return 0;
  }
}

}  // namespace

bool is_macro(GateKind kind) noexcept {
  return kind == GateKind::LogicalAnd || kind == GateKind::UncomputeAnd ||
         kind == GateKind::AddInPlace;
}

bool is_pseudo(GateKind kind) noexcept {
  return kind == GateKind::PrepZero || kind == GateKind::PrepMagicT;
}

std::string_view kind_name(GateKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<GateKind> kind_from_name(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Gate Gate::single(GateKind kind, WireId target) {
  Gate g;
  g.kind = kind;
  g.wires = {target};
  return g;
}

Gate Gate::cnot(WireId control, WireId target) {
  Gate g;
  g.kind = GateKind::CNOT;
  g.wires = {control, target};
  return g;
}

Gate Gate::cz(WireId control, WireId target) {
  Gate g;
  g.kind = GateKind::CZ;
  g.wires = {control, target};
  return g;
}

Gate Gate::measure_x(WireId target, std::uint32_t cbit) {
  Gate g;
  g.kind = GateKind::MeasureX;
  g.wires = {target};
  g.cbit = cbit;
  return g;
}

Gate Gate::classical_cz(std::uint32_t cbit, WireId control, WireId target) {
  Gate g;
  g.kind = GateKind::ClassicalCZ;
  g.wires = {control, target};
  g.cbit = cbit;
  return g;
}

Gate Gate::logical_and(WireId x, WireId y, WireId target) {
  Gate g;
  g.kind = GateKind::LogicalAnd;
  g.wires = {x, y, target};
  return g;
}

Gate Gate::uncompute_and(WireId x, WireId y, WireId target) {
  Gate g;
  g.kind = GateKind::UncomputeAnd;
  g.wires = {x, y, target};
  return g;
}

Gate Gate::add_in_place(std::span<const WireId> a, std::span<const WireId> b,
                        std::span<const WireId> ancillae, std::optional<WireId> carry) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::WidthMismatch, "adder operands have widths " +
                                              std::to_string(a.size()) + " and " +
                                              std::to_string(b.size()));
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::WidthMismatch, "adder width must be at least 2");
  }
  if (ancillae.size() != a.size() - 1) {
    throw Error(ErrorCode::WidthMismatch, "adder needs width-1 carry ancillae");
  }
  Gate g;
  g.kind = GateKind::AddInPlace;
  g.width = static_cast<std::uint32_t>(a.size());
  g.carry_out = carry.has_value();
  g.wires.reserve(3 * a.size());
  g.wires.insert(g.wires.end(), a.begin(), a.end());
  g.wires.insert(g.wires.end(), b.begin(), b.end());
  g.wires.insert(g.wires.end(), ancillae.begin(), ancillae.end());
  if (carry) g.wires.push_back(*carry);
  return g;
}

std::span<const WireId> Gate::adder_a() const {
  return std::span<const WireId>(wires).subspan(0, width);
}

std::span<const WireId> Gate::adder_b() const {
  return std::span<const WireId>(wires).subspan(width, width);
}

std::span<const WireId> Gate::adder_ancillae() const {
  return std::span<const WireId>(wires).subspan(2 * width, width - 1);
}

std::optional<WireId> Gate::adder_carry() const {
  if (!carry_out) return std::nullopt;
  return wires.back();
}

void RegisterMap::add(std::string name, std::vector<WireId> wires) {
  if (map_.contains(name)) {
    throw Error(ErrorCode::DuplicateRegister, "register '" + name + "' already exists");
  }
  map_.emplace(std::move(name), std::move(wires));
}

void RegisterMap::append(std::string_view name, WireId wire) {
  auto it = map_.find(name);
  if (it == map_.end()) {
    it = map_.emplace(std::string(name), std::vector<WireId>{}).first;
  }
  it->second.push_back(wire);
}

bool RegisterMap::contains(std::string_view name) const { return map_.find(name) != map_.end(); }

const std::vector<WireId>& RegisterMap::at(std::string_view name) const {
  auto it = map_.find(name);
  if (it == map_.end()) {
    throw std::out_of_range("no register named '" + std::string(name) + "'");
  }
  return it->second;
}

std::vector<WireId> Netlist::alloc_register(std::string name, std::size_t width, WireInit init) {
  if (width == 0) {
    throw Error(ErrorCode::ZeroWidth, "register '" + name + "' has zero width");
  }
  if (registers_.contains(name)) {
    throw Error(ErrorCode::DuplicateRegister, "register '" + name + "' already exists");
  }
  std::vector<WireId> wires;
  wires.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    wires.push_back(WireId{wire_count_++});
  }
  for (WireId w : wires) {
    if (init == WireInit::Zero) append(Gate::single(GateKind::PrepZero, w));
    if (init == WireInit::MagicT) append(Gate::single(GateKind::PrepMagicT, w));
  }
  registers_.add(std::move(name), wires);
  return wires;
}

WireId Netlist::alloc_ancilla(WireInit init) {
  const WireId w{wire_count_++};
  registers_.append(kAncillaPool, w);
  if (init == WireInit::Zero) append(Gate::single(GateKind::PrepZero, w));
  if (init == WireInit::MagicT) append(Gate::single(GateKind::PrepMagicT, w));
  return w;
}

void Netlist::alias_register(std::string name, std::vector<WireId> wires) {
  for (WireId w : wires) check_wire(w);
  registers_.add(std::move(name), std::move(wires));
}

void Netlist::check_wire(WireId w) const {
  if (w.value >= wire_count_) {
    throw Error(ErrorCode::UnallocatedWire, "wire " + std::to_string(w.value) +
                                                " is not allocated (wire count " +
                                                std::to_string(wire_count_) + ")");
  }
}

void Netlist::append(Gate gate) {
  if (gate.wires.size() != expected_arity(gate)) {
    throw Error(ErrorCode::WidthMismatch, "gate '" + std::string(kind_name(gate.kind)) +
                                              "' has " + std::to_string(gate.wires.size()) +
                                              " operands");
  }
  for (WireId w : gate.wires) check_wire(w);
  std::set<WireId> seen(gate.wires.begin(), gate.wires.end());
  if (seen.size() != gate.wires.size()) {
    const auto code = gate.kind == GateKind::AddInPlace ? ErrorCode::OverlappingOperands
                                                        : ErrorCode::SameWire;
    throw Error(code, "gate '" + std::string(kind_name(gate.kind)) + "' repeats a wire");
  }
  const bool needs_cbit = gate.kind == GateKind::MeasureX || gate.kind == GateKind::ClassicalCZ;
  if (needs_cbit != gate.cbit.has_value()) {
    throw Error(ErrorCode::Parse, "gate '" + std::string(kind_name(gate.kind)) +
                                      "' classical bit mismatch");
  }
  if (gate.cbit && *gate.cbit >= cbit_count_) {
    throw Error(ErrorCode::UnallocatedWire,
                "classical bit " + std::to_string(*gate.cbit) + " is not allocated");
  }
  gates_.push_back(std::move(gate));
}

bool Netlist::is_expanded() const {
  return std::none_of(gates_.begin(), gates_.end(),
                      [](const Gate& g) { return is_macro(g.kind); });
}

Netlist Netlist::empty_like() const {
  Netlist out;
  out.wire_count_ = wire_count_;
  out.cbit_count_ = cbit_count_;
  out.registers_ = registers_;
  return out;
}

Netlist Netlist::with_layout(std::uint32_t wires, std::uint32_t cbits, RegisterMap registers) {
  Netlist out;
  out.wire_count_ = wires;
  out.cbit_count_ = cbits;
  for (const auto& [name, ws] : registers.entries()) {
    for (WireId w : ws) out.check_wire(w);
  }
  out.registers_ = std::move(registers);
  return out;
}

Netlist lower_adders(const Netlist& netlist) {
  Netlist out = netlist.empty_like();
  for (const Gate& g : netlist.gates()) {
    if (g.kind != GateKind::AddInPlace) {
      out.append(g);
      continue;
    }
    for (Gate& sub : blocks::adder_sequence(g)) out.append(std::move(sub));
  }
  return out;
}

Netlist expand(const Netlist& netlist) {
  const Netlist lowered = lower_adders(netlist);
  Netlist out = lowered.empty_like();
  for (const Gate& g : lowered.gates()) {
    switch (g.kind) {
      case GateKind::LogicalAnd:
        for (Gate& sub : blocks::logical_and_sequence(g.wires[0], g.wires[1], g.wires[2])) {
          out.append(std::move(sub));
        }
        break;
      case GateKind::UncomputeAnd: {
        const std::uint32_t cbit = out.alloc_cbit();
        for (Gate& sub :
             blocks::uncompute_and_sequence(g.wires[0], g.wires[1], g.wires[2], cbit)) {
          out.append(std::move(sub));
        }
        break;
      }
      default:
        out.append(g);
    }
  }
  return out;
}

Netlist relabel(const Netlist& netlist, std::span<const WireId> mapping) {
  if (mapping.size() != netlist.wire_count()) {
    throw Error(ErrorCode::WidthMismatch, "relabel mapping must cover every wire");
  }
  std::set<WireId> image(mapping.begin(), mapping.end());
  if (image.size() != mapping.size() ||
      (!image.empty() && image.rbegin()->value >= netlist.wire_count())) {
    throw Error(ErrorCode::WidthMismatch, "relabel mapping is not a bijection");
  }
  RegisterMap regs;
  for (const auto& [name, wires] : netlist.registers().entries()) {
    std::vector<WireId> renamed;
    renamed.reserve(wires.size());
    for (WireId w : wires) renamed.push_back(mapping[w.value]);
    regs.add(name, std::move(renamed));
  }
  Netlist out = Netlist::with_layout(netlist.wire_count(), netlist.cbit_count(), std::move(regs));
  for (Gate g : netlist.gates()) {
    for (WireId& w : g.wires) w = mapping[w.value];
    out.append(std::move(g));
  }
  return out;
}

Netlist without_gate(const Netlist& netlist, std::size_t index) {
  if (index >= netlist.gates().size()) {
    throw std::out_of_range("gate index " + std::to_string(index) + " out of range");
  }
  Netlist out = netlist.empty_like();
  for (std::size_t i = 0; i < netlist.gates().size(); ++i) {
    if (i != index) out.append(netlist.gates()[i]);
  }
  return out;
}

std::size_t count_kind(const Netlist& netlist, GateKind kind) {
  return static_cast<std::size_t>(
      std::count_if(netlist.gates().begin(), netlist.gates().end(),
                    [kind](const Gate& g) { return g.kind == kind; }));
}

std::size_t count(const Netlist& netlist, CountClass cls) {
  if ((cls == CountClass::T || cls == CountClass::Cnot) && !netlist.is_expanded()) {
    throw Error(ErrorCode::Unexpanded, "T/CNOT counts need an expanded netlist");
  }
  switch (cls) {
    case CountClass::T:
      return count_kind(netlist, GateKind::T) + count_kind(netlist, GateKind::Tdg);
    case CountClass::Cnot:
      return count_kind(netlist, GateKind::CNOT);
    case CountClass::Measurements:
      return count_kind(netlist, GateKind::MeasureX);
    case CountClass::TotalGates:
      return static_cast<std::size_t>(
          std::count_if(netlist.gates().begin(), netlist.gates().end(),
                        [](const Gate& g) { return !is_pseudo(g.kind); }));
  }
  return 0;
}

Schedule asap_layers(const Netlist& netlist) {
  if (!netlist.is_expanded()) {
    throw Error(ErrorCode::Unexpanded, "scheduling needs an expanded netlist");
  }
  std::vector<std::int64_t> level(netlist.wire_count(), 0);
  // Layer of the open fan-out on a wire whose last gate was a CNOT control; -1 otherwise.
  std::vector<std::int64_t> fanout(netlist.wire_count(), -1);
  std::vector<std::int64_t> cbit_level(netlist.cbit_count(), 0);

  Schedule s;
  s.layer.reserve(netlist.gates().size());
  for (const Gate& g : netlist.gates()) {
    std::int64_t layer = -1;
    if (is_pseudo(g.kind)) {
      s.layer.push_back(layer);
      continue;
    }
    switch (g.kind) {
      case GateKind::CNOT: {
        const auto c = g.wires[0].value;
        const auto t = g.wires[1].value;
        if (fanout[c] >= 0 && level[t] < fanout[c]) {
          layer = fanout[c];
        } else {
          layer = std::max(level[c], level[t]) + 1;
        }
        level[c] = level[t] = layer;
        fanout[c] = layer;
        fanout[t] = -1;
        break;
      }
      case GateKind::CZ: {
        const auto c = g.wires[0].value;
        const auto t = g.wires[1].value;
        layer = std::max(level[c], level[t]) + 1;
        level[c] = level[t] = layer;
        fanout[c] = fanout[t] = -1;
        break;
      }
      case GateKind::MeasureX: {
        const auto t = g.wires[0].value;
        layer = level[t] + 1;
        level[t] = layer;
        fanout[t] = -1;
        cbit_level[*g.cbit] = layer;
        break;
      }
      case GateKind::ClassicalCZ: {
        const auto c = g.wires[0].value;
        const auto t = g.wires[1].value;
        layer = std::max({level[c], level[t], cbit_level[*g.cbit]}) + 1;
        level[c] = level[t] = layer;
        fanout[c] = fanout[t] = -1;
        break;
      }
      default: {
        const auto t = g.wires[0].value;
        layer = level[t] + 1;
        level[t] = layer;
        fanout[t] = -1;
      }
    }
    s.layer.push_back(layer);
    s.layer_count = std::max(s.layer_count, layer);
  }
  return s;
}

std::size_t schedule_asap(const Netlist& netlist, DepthClass cls) {
  const Schedule s = asap_layers(netlist);
  std::set<std::int64_t> layers;
  for (std::size_t i = 0; i < netlist.gates().size(); ++i) {
    const GateKind k = netlist.gates()[i].kind;
    const bool in_class = cls == DepthClass::T ? (k == GateKind::T || k == GateKind::Tdg)
                                               : k == GateKind::CNOT;
    if (in_class) layers.insert(s.layer[i]);
  }
  return layers.size();
}

}  // namespace qsq::ir

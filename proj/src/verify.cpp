#include "qsq/verify.hpp"

#include <stdexcept>

#include "json.hpp"

#include "qsq/blocks.hpp"

namespace qsq::verify {

using ir::Netlist;
using ir::WireId;

sim::EquivalenceSpec squaring_spec(const synth::SquarerCircuit& circuit) {
  sim::EquivalenceSpec contract;
  contract.inputs = {circuit.input()};
  contract.outputs = {circuit.output};
  contract.reference = [](std::span<const std::uint64_t> in) {
    return std::vector<std::uint64_t>{in[0] * in[0]};
  };
  return contract;
}

Netlist drop_operation(const Netlist& netlist, std::size_t k) {
  std::size_t seen = 0;
  const auto& gates = netlist.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (ir::is_pseudo(gates[i].kind)) continue;
    if (seen++ == k) return ir::without_gate(netlist, i);
  }
  throw std::out_of_range("netlist has only " + std::to_string(seen) + " operations, cannot drop " +
                          std::to_string(k));
}

std::vector<Check> verify_squarer(const synth::SquarerCircuit& circuit,
                                  std::optional<std::size_t> drop) {
  const auto contract = squaring_spec(circuit);
  std::vector<Check> out;
  out.push_back({circuit.n, "macro",
                 sim::verify_equivalence(circuit.netlist, contract, sim::Engine::Basis)});
  Netlist lowered = ir::lower_adders(circuit.netlist);
  if (drop) lowered = drop_operation(lowered, *drop);
  out.push_back({circuit.n, "block", sim::verify_equivalence(lowered, contract, sim::Engine::Basis)});
  return out;
}

namespace {

Check and_block(bool with_uncompute) {
  Netlist nl;
  const auto in = nl.alloc_register("in", 2, ir::WireInit::Input);
  const WireId t = blocks::build_logical_and(nl, in[0], in[1]);
  if (with_uncompute) blocks::build_uncompute_and(nl, in[0], in[1], t);

  sim::EquivalenceSpec contract;
  contract.inputs = {in};
  contract.outputs = {{in[0], in[1], t}};
  contract.reference = [with_uncompute](std::span<const std::uint64_t> v) {
    const std::uint64_t x = v[0] & 1U;
    const std::uint64_t y = (v[0] >> 1) & 1U;
    return std::vector<std::uint64_t>{v[0] | (with_uncompute ? 0 : (x & y) << 2)};
  };
  return {0, with_uncompute ? "and-uncompute" : "logical-and",
          sim::verify_equivalence(ir::expand(nl), contract, sim::Engine::Statevector)};
}

Check adder_block(std::size_t m, bool carry_out) {
  Netlist nl;
  const auto a = nl.alloc_register("a", m, ir::WireInit::Input);
  const auto b = nl.alloc_register("b", m, ir::WireInit::Input);
  const auto carry = blocks::build_adder_in_place(nl, a, b, carry_out);

  sim::EquivalenceSpec contract;
  contract.inputs = {a, b};
  std::vector<WireId> sum = b;
  if (carry) sum.push_back(*carry);
  contract.outputs = {sum};
  const std::uint64_t mask = carry_out ? (std::uint64_t{2} << m) - 1 : (std::uint64_t{1} << m) - 1;
  contract.reference = [mask](std::span<const std::uint64_t> v) {
    return std::vector<std::uint64_t>{(v[0] + v[1]) & mask};
  };
  const std::string name =
      "adder-m" + std::to_string(m) + (carry_out ? "-carry" : "-nocarry");
  return {0, name, sim::verify_equivalence(ir::expand(nl), contract, sim::Engine::Statevector)};
}

}  // namespace

std::vector<Check> verify_blocks_statevector() {
  std::vector<Check> out;
  out.push_back(and_block(false));
  out.push_back(and_block(true));
  for (std::size_t m : {2, 3}) {
    out.push_back(adder_block(m, true));
    out.push_back(adder_block(m, false));
  }
  return out;
}

std::string report_json(const std::vector<Check>& checks) {
  using nlohmann::json;
  json j;
  std::size_t total = 0;
  j["mismatches"] = json::array();
  for (const auto& c : checks) {
    total += c.report.inputs_checked;
    const json part = json::parse(c.report.to_json());
    for (auto m : part["mismatches"]) {
      m["n"] = c.n;
      m["level"] = c.level;
      j["mismatches"].push_back(std::move(m));
    }
    if (part.contains("adder_overflows")) {
      for (auto o : part["adder_overflows"]) {
        j["mismatches"].push_back(json{{"n", c.n},
                                       {"level", c.level},
                                       {"input", o},
                                       {"detail", "carry-less adder overflow"}});
      }
    }
  }
  j["inputs_checked"] = total;
  return j.dump(2) + "\n";
}

}  // namespace qsq::verify

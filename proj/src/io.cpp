#include "qsq/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qsq/error.hpp"

namespace qsq::io {

using ir::Gate;
using ir::GateKind;
using ir::WireId;
using nlohmann::json;

std::string to_json(const ir::Netlist& netlist) {
  json j;
  j["wires"] = netlist.wire_count();
  j["cbits"] = netlist.cbit_count();
  json regs = json::object();
  for (const auto& [name, wires] : netlist.registers().entries()) {
    json list = json::array();
    for (WireId w : wires) list.push_back(w.value);
    regs[name] = std::move(list);
  }
  j["registers"] = std::move(regs);
  json gates = json::array();
  for (const Gate& g : netlist.gates()) {
    json e;
    e["kind"] = std::string(ir::kind_name(g.kind));
    json wires = json::array();
    for (WireId w : g.wires) wires.push_back(w.value);
    e["wires"] = std::move(wires);
    if (g.cbit) e["cbit"] = *g.cbit;
    if (g.kind == GateKind::AddInPlace) {
      e["width"] = g.width;
      e["carry_out"] = g.carry_out;
    }
    gates.push_back(std::move(e));
  }
  // One gate per line keeps large netlists diffable.
  std::string out = "{\n \"cbits\": " + j["cbits"].dump() + ",\n \"gates\": [";
  for (std::size_t i = 0; i < gates.size(); ++i) {
    out += (i == 0 ? "\n  " : ",\n  ") + gates[i].dump();
  }
  out += gates.empty() ? "]" : "\n ]";
  out += ",\n \"registers\": " + j["registers"].dump() + ",\n \"wires\": " + j["wires"].dump() +
         "\n}\n";
  return out;
}

namespace {

std::vector<WireId> wire_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, what + " must be an array of wire indices");
  std::vector<WireId> out;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw Error(ErrorCode::Parse, what + " holds a non-index value");
    out.push_back(WireId{v.get<std::uint32_t>()});
  }
  return out;
}

}  // namespace

ir::Netlist from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  try {
    if (!j.is_object() || !j.contains("wires") || !j.contains("gates")) {
      throw Error(ErrorCode::Parse, "netlist needs \"wires\" and \"gates\"");
    }
    ir::RegisterMap regs;
    if (j.contains("registers")) {
      for (const auto& [name, wires] : j.at("registers").items()) {
        regs.add(name, wire_list(wires, "register '" + name + "'"));
      }
    }
    auto nl = ir::Netlist::with_layout(j.at("wires").get<std::uint32_t>(),
                                       j.value("cbits", std::uint32_t{0}), std::move(regs));
    std::size_t index = 0;
    for (const auto& e : j.at("gates")) {
      const auto name = e.at("kind").get<std::string>();
      const auto kind = ir::kind_from_name(name);
      if (!kind) {
        throw Error(ErrorCode::Parse,
                    "gate " + std::to_string(index) + " has unknown kind '" + name + "'");
      }
      Gate g;
      g.kind = *kind;
      g.wires = wire_list(e.at("wires"), "gate " + std::to_string(index) + " wires");
      if (e.contains("cbit")) g.cbit = e.at("cbit").get<std::uint32_t>();
      if (g.kind == GateKind::AddInPlace) {
        g.width = e.at("width").get<std::uint32_t>();
        g.carry_out = e.at("carry_out").get<bool>();
      }
      nl.append(std::move(g));
      ++index;
    }
    return nl;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

std::string to_qasm(const ir::Netlist& netlist) {
  std::ostringstream out;
  out << "OPENQASM 3.0;\n";
  out << "include \"stdgates.inc\";\n";
  out << "qubit[" << netlist.wire_count() << "] q;\n";
  if (netlist.cbit_count() > 0) out << "bit[" << netlist.cbit_count() << "] c;\n";
  auto q = [](WireId w) { return "q[" + std::to_string(w.value) + "]"; };
  for (const Gate& g : netlist.gates()) {
    const auto& w = g.wires;
    switch (g.kind) {
      case GateKind::H:
      case GateKind::S:
      case GateKind::Sdg:
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::X:
      case GateKind::Z:
        out << ir::kind_name(g.kind) << ' ' << q(w[0]) << ";\n";
        break;
      case GateKind::CNOT:
      case GateKind::CZ:
        out << ir::kind_name(g.kind) << ' ' << q(w[0]) << ", " << q(w[1]) << ";\n";
        break;
      case GateKind::PrepZero:
        out << "reset " << q(w[0]) << ";\n";
        break;
      case GateKind::PrepMagicT:
        out << "reset " << q(w[0]) << ";\nh " << q(w[0]) << ";\nt " << q(w[0]) << ";\n";
        break;
      case GateKind::MeasureX:
        out << "h " << q(w[0]) << ";\nc[" << *g.cbit << "] = measure " << q(w[0])
            << ";\nreset " << q(w[0]) << ";\n";
        break;
      case GateKind::ClassicalCZ:
        out << "if (c[" << *g.cbit << "]) cz " << q(w[0]) << ", " << q(w[1]) << ";\n";
        break;
      default:
        throw Error(ErrorCode::Unexpanded, "QASM export needs an expanded netlist, found '" +
                                               std::string(ir::kind_name(g.kind)) + "'");
    }
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace qsq::io

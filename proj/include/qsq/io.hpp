#pragma once

#include <filesystem>
#include <string>

#include "qsq/circuit.hpp"

namespace qsq::io {

/// {"wires": W, "cbits": C, "registers": {name: [wire, ...]},
///  "gates": [{"kind": "cx", "wires": [c, t]}, ...]}
/// Gates carry "cbit" when measured/conditioned; adders carry "width" and
/// "carry_out". Keys are emitted sorted so output is byte-stable.
[[nodiscard]] std::string to_json(const ir::Netlist& netlist);

/// Throws Error(Parse) on malformed input and the netlist's own errors on
/// invalid gates.
[[nodiscard]] ir::Netlist from_json(const std::string& text);

/// OpenQASM 3 text, one statement per line. mx becomes h; measure; reset.
/// Throws Unexpanded when macros remain.
[[nodiscard]] std::string to_qasm(const ir::Netlist& netlist);

/// Throws std::runtime_error when the file cannot be read or written.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace qsq::io

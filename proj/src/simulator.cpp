#include "qsq/simulator.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <thread>

#include "json.hpp"

#include "qsq/error.hpp"

namespace qsq::sim {

using ir::Gate;
using ir::GateKind;
using ir::WireId;

namespace {

std::uint8_t& bit(BasisAssignment& s, WireId w) { return s.wires[w.value]; }

}  // namespace

std::uint64_t read_value(const BasisAssignment& state, std::span<const WireId> wires) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < wires.size(); ++k) {
    v |= static_cast<std::uint64_t>(state.wires[wires[k].value] & 1U) << k;
  }
  return v;
}

void write_value(BasisAssignment& state, std::span<const WireId> wires, std::uint64_t value) {
  for (std::size_t k = 0; k < wires.size(); ++k) {
    state.wires[wires[k].value] = static_cast<std::uint8_t>((value >> k) & 1U);
  }
}

BasisRun run_basis(const ir::Netlist& netlist, BasisAssignment input) {
  BasisRun run;
  run.state = std::move(input);
  run.state.wires.resize(netlist.wire_count(), 0);
  run.state.cbits.resize(netlist.cbit_count(), 0);
  auto& s = run.state;

  const auto& gates = netlist.gates();
  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    const Gate& g = gates[gi];
    const auto& w = g.wires;
    switch (g.kind) {
      case GateKind::X: bit(s, w[0]) ^= 1U; break;
      case GateKind::CNOT: bit(s, w[1]) ^= bit(s, w[0]); break;
      case GateKind::Z:
      case GateKind::CZ: break;
      case GateKind::PrepZero: bit(s, w[0]) = 0; break;
      case GateKind::LogicalAnd:
        if (bit(s, w[2]) != 0) {
          throw Error(ErrorCode::AndTargetNotClean,
                      "gate " + std::to_string(gi) + ": AND target wire " +
                          std::to_string(w[2].value) + " is not 0");
        }
        bit(s, w[2]) = bit(s, w[0]) & bit(s, w[1]);
        break;
      case GateKind::UncomputeAnd:
        if (bit(s, w[2]) != (bit(s, w[0]) & bit(s, w[1]))) {
          throw Error(ErrorCode::UncomputeMisuse,
                      "gate " + std::to_string(gi) + ": wire " + std::to_string(w[2].value) +
                          " does not hold the AND of its controls");
        }
        bit(s, w[2]) = 0;
        break;
      case GateKind::AddInPlace: {
        const auto a = g.adder_a();
        const auto b = g.adder_b();
        for (WireId anc : g.adder_ancillae()) {
          if (bit(s, anc) != 0) {
            throw Error(ErrorCode::AndTargetNotClean,
                        "gate " + std::to_string(gi) + ": adder carry wire " +
                            std::to_string(anc.value) + " is not 0");
          }
        }
        const std::uint64_t sum = read_value(s, a) + read_value(s, b);
        write_value(s, b, sum);
        const bool high = (sum >> g.width) & 1U;
        if (auto carry = g.adder_carry()) {
          bit(s, *carry) ^= static_cast<std::uint8_t>(high);
        } else if (high) {
          run.overflowing_adders.push_back(gi);
        }
        break;
      }
      default:
        throw Error(ErrorCode::NonClassicalGate,
                    "gate " + std::to_string(gi) + " (" + std::string(ir::kind_name(g.kind)) +
                        ") has no basis-state semantics");
    }
  }
  return run;
}

// ---- statevector ---------------------------------------------------------

StateVector::StateVector(std::span<const Start> wires)
    : wires_(static_cast<std::uint32_t>(wires.size())) {
  if (wires_ > kMaxStatevectorWires) {
    throw Error(ErrorCode::TooManyWires, std::to_string(wires_) + " wires exceed the limit of " +
                                             std::to_string(kMaxStatevectorWires));
  }
  amp_.assign(std::size_t{1} << wires_, Amplitude{0.0, 0.0});
  amp_[0] = 1.0;
  const double r = 1.0 / std::numbers::sqrt2;
  const Amplitude phase = std::polar(1.0, std::numbers::pi / 4);
  // Build the product state wire by wire.
  for (std::uint32_t k = 0; k < wires_; ++k) {
    const std::size_t mask = std::size_t{1} << k;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & mask) continue;
      const Amplitude v = amp_[i];
      switch (wires[k]) {
        case Start::Zero: break;
        case Start::One:
          amp_[i] = 0.0;
          amp_[i | mask] = v;
          break;
        case Start::MagicT:
          amp_[i] = v * r;
          amp_[i | mask] = v * r * phase;
          break;
      }
    }
  }
}

double StateVector::norm() const {
  double total = 0.0;
  for (const auto& a : amp_) total += std::norm(a);
  return std::sqrt(total);
}

void StateVector::check_norm() const {
  const double drift = std::abs(norm() - 1.0);
  if (drift > kTolerance) {
    throw Error(ErrorCode::NormDrift, "state norm drifted by " + std::to_string(drift));
  }
}

void StateVector::single(std::uint32_t w, const std::array<Amplitude, 4>& u) {
  const std::size_t mask = std::size_t{1} << w;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amp_[i];
    const Amplitude a1 = amp_[i | mask];
    amp_[i] = u[0] * a0 + u[1] * a1;
    amp_[i | mask] = u[2] * a0 + u[3] * a1;
  }
}

void StateVector::apply(const Gate& g) {
  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  const Amplitude t = std::polar(1.0, std::numbers::pi / 4);
  const auto w0 = g.wires.empty() ? 0U : g.wires[0].value;
  switch (g.kind) {
    case GateKind::H: single(w0, {r, r, r, -r}); break;
    case GateKind::S: single(w0, {1.0, 0.0, 0.0, 1i}); break;
    case GateKind::Sdg: single(w0, {1.0, 0.0, 0.0, -1i}); break;
    case GateKind::T: single(w0, {1.0, 0.0, 0.0, t}); break;
    case GateKind::Tdg: single(w0, {1.0, 0.0, 0.0, std::conj(t)}); break;
    case GateKind::X: single(w0, {0.0, 1.0, 1.0, 0.0}); break;
    case GateKind::Z: single(w0, {1.0, 0.0, 0.0, -1.0}); break;
    case GateKind::CNOT:
    case GateKind::CZ: {
      const std::size_t c = std::size_t{1} << g.wires[0].value;
      const std::size_t tm = std::size_t{1} << g.wires[1].value;
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (!(i & c)) continue;
        if (g.kind == GateKind::CZ) {
          if (i & tm) amp_[i] = -amp_[i];
        } else if (!(i & tm)) {
          std::swap(amp_[i], amp_[i | tm]);
        }
      }
      break;
    }
    case GateKind::PrepZero:
    case GateKind::PrepMagicT: break;
    case GateKind::MeasureX:
    case GateKind::ClassicalCZ:
      throw std::logic_error("measurement gates are handled by run_statevector");
    default:
      throw Error(ErrorCode::Unexpanded, "statevector engine needs an expanded netlist, found " +
                                             std::string(ir::kind_name(g.kind)));
  }
  check_norm();
}

double StateVector::measure_x(WireId wire, int outcome) {
  const double r = 1.0 / std::numbers::sqrt2;
  single(wire.value, {r, r, r, -r});
  const std::size_t mask = std::size_t{1} << wire.value;
  double prob = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    const bool one = (i & mask) != 0;
    if (one != (outcome == 1)) {
      amp_[i] = 0.0;
    } else {
      prob += std::norm(amp_[i]);
    }
  }
  if (prob < 1e-15) return 0.0;
  const double scale = 1.0 / std::sqrt(prob);
  for (auto& a : amp_) a *= scale;
  if (outcome == 1) {
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      if (i & mask) std::swap(amp_[i], amp_[i & ~mask]);
    }
  }
  check_norm();
  return prob;
}

std::vector<Branch> run_statevector(const ir::Netlist& netlist,
                                    std::span<const StateVector::Start> initial,
                                    BranchPolicy policy) {
  if (netlist.wire_count() > kMaxStatevectorWires) {
    throw Error(ErrorCode::TooManyWires, std::to_string(netlist.wire_count()) +
                                             " wires exceed the limit of " +
                                             std::to_string(kMaxStatevectorWires));
  }
  if (initial.size() != netlist.wire_count()) {
    throw std::invalid_argument("initial state must list every wire");
  }
  std::vector<Branch> live;
  live.push_back({StateVector(initial), std::vector<std::uint8_t>(netlist.cbit_count(), 0), 1.0});

  for (const Gate& g : netlist.gates()) {
    if (g.kind == GateKind::MeasureX) {
      std::vector<Branch> next;
      for (auto& br : live) {
        for (int outcome : {0, 1}) {
          if (policy == BranchPolicy::Forced0 && outcome == 1) continue;
          if (policy == BranchPolicy::Forced1 && outcome == 0) continue;
          Branch child = br;
          const double p = child.state.measure_x(g.wires[0], outcome);
          if (p < 1e-12) {
            if (policy != BranchPolicy::Both) {
              throw Error(ErrorCode::NormDrift, "forced measurement outcome " +
                                                    std::to_string(outcome) +
                                                    " has zero probability");
            }
            continue;
          }
          child.cbits[*g.cbit] = static_cast<std::uint8_t>(outcome);
          child.probability *= p;
          next.push_back(std::move(child));
        }
      }
      live = std::move(next);
    } else if (g.kind == GateKind::ClassicalCZ) {
      for (auto& br : live) {
        if (br.cbits[*g.cbit]) br.state.apply(Gate::cz(g.wires[0], g.wires[1]));
      }
    } else {
      for (auto& br : live) br.state.apply(g);
    }
  }
  return live;
}

std::vector<StateVector::Start> initial_from(const ir::Netlist& netlist,
                                             const std::vector<std::uint8_t>& bits) {
  std::vector<StateVector::Start> out(netlist.wire_count(), StateVector::Start::Zero);
  std::set<std::uint32_t> prepared;
  for (const Gate& g : netlist.gates()) {
    if (g.kind == GateKind::PrepZero || g.kind == GateKind::PrepMagicT) {
      if (prepared.insert(g.wires[0].value).second) {
        out[g.wires[0].value] = g.kind == GateKind::PrepMagicT ? StateVector::Start::MagicT
                                                               : StateVector::Start::Zero;
      }
    }
  }
  for (std::uint32_t w = 0; w < out.size() && w < bits.size(); ++w) {
    if (!prepared.contains(w) && bits[w]) out[w] = StateVector::Start::One;
  }
  return out;
}

bool equal_up_to_global_phase(const StateVector& lhs, const StateVector& rhs, double tol) {
  const auto& a = lhs.amplitudes();
  const auto& b = rhs.amplitudes();
  if (a.size() != b.size()) return false;
  std::size_t pivot = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > tol) {
      pivot = i;
      break;
    }
  }
  if (pivot == a.size()) {
    for (const auto& v : b) {
      if (std::abs(v) > tol) return false;
    }
    return true;
  }
  if (std::abs(b[pivot]) <= tol) return false;
  const Amplitude phase = (b[pivot] / std::abs(b[pivot])) / (a[pivot] / std::abs(a[pivot]));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] * phase - b[i]) > tol) return false;
  }
  return true;
}

// ---- equivalence ---------------------------------------------------------

std::string EquivalenceReport::to_json() const {
  using nlohmann::json;
  auto scalar_or_list = [](const std::vector<std::uint64_t>& v) {
    return v.size() == 1 ? json(v.front()) : json(v);
  };
  json j;
  j["inputs_checked"] = inputs_checked;
  j["mismatches"] = json::array();
  for (const auto& m : mismatches) {
    json e{{"input", scalar_or_list(m.input)},
           {"expected", scalar_or_list(m.expected)},
           {"got", scalar_or_list(m.got)}};
    if (!m.detail.empty()) e["detail"] = m.detail;
    j["mismatches"].push_back(std::move(e));
  }
  if (!overflows.empty()) {
    j["adder_overflows"] = json::array();
    for (const auto& o : overflows) j["adder_overflows"].push_back(scalar_or_list(o));
  }
  return j.dump(2);
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("QSQ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

struct Layout {
  std::vector<std::uint8_t> role;  // 0 other, 1 input-only, 2 output
};

// Compares a final basis state against the reference; returns an empty
// detail when everything matches.
std::string check_final(const BasisAssignment& fin, const EquivalenceSpec& contract,
                        const std::vector<std::uint64_t>& input,
                        const std::vector<std::uint64_t>& expected,
                        std::vector<std::uint64_t>& got, const Layout& layout) {
  got.clear();
  for (const auto& reg : contract.outputs) got.push_back(read_value(fin, reg));
  if (got != expected) return "output mismatch";
  for (std::size_t r = 0; r < contract.inputs.size(); ++r) {
    const auto& reg = contract.inputs[r];
    for (std::size_t k = 0; k < reg.size(); ++k) {
      const auto w = reg[k].value;
      if (layout.role[w] == 1 && fin.wires[w] != ((input[r] >> k) & 1U)) {
        return "input wire " + std::to_string(w) + " not restored";
      }
    }
  }
  for (std::size_t w = 0; w < fin.wires.size(); ++w) {
    if (layout.role[w] == 0 && fin.wires[w] != 0) {
      return "garbage on wire " + std::to_string(w);
    }
  }
  return {};
}

}  // namespace

EquivalenceReport verify_equivalence(const ir::Netlist& netlist, const EquivalenceSpec& contract,
                                     Engine engine, std::uint32_t wire_budget) {
  if (engine == Engine::Statevector &&
      netlist.wire_count() > std::min(wire_budget, kMaxStatevectorWires)) {
    throw Error(ErrorCode::TooManyWires, std::to_string(netlist.wire_count()) +
                                             " wires exceed the statevector budget");
  }
  Layout layout;
  layout.role.assign(netlist.wire_count(), 0);
  std::size_t input_bits = 0;
  for (const auto& reg : contract.inputs) {
    input_bits += reg.size();
    for (WireId w : reg) layout.role[w.value] = 1;
  }
  for (const auto& reg : contract.outputs) {
    for (WireId w : reg) layout.role[w.value] = 2;
  }
  if (input_bits >= 40) throw std::invalid_argument("input space too large for exhaustive check");
  const std::uint64_t total = std::uint64_t{1} << input_bits;

  auto check_one = [&](std::uint64_t index, EquivalenceReport& out) {
    std::vector<std::uint64_t> input;
    BasisAssignment start;
    start.wires.assign(netlist.wire_count(), 0);
    std::uint64_t rest = index;
    for (const auto& reg : contract.inputs) {
      const std::uint64_t v = rest & ((std::uint64_t{1} << reg.size()) - 1);
      rest >>= reg.size();
      input.push_back(v);
      write_value(start, reg, v);
    }
    const auto expected = contract.reference(input);
    std::vector<std::uint64_t> got;
    try {
      if (engine == Engine::Basis) {
        auto run = run_basis(netlist, start);
        if (!run.overflowing_adders.empty()) out.overflows.push_back(input);
        auto detail = check_final(run.state, contract, input, expected, got, layout);
        if (!detail.empty()) out.mismatches.push_back({input, expected, got, detail});
        return;
      }
      const auto init = initial_from(netlist, start.wires);
      const auto branches = run_statevector(netlist, init, BranchPolicy::Both);
      for (const auto& br : branches) {
        const auto& amp = br.state.amplitudes();
        std::size_t best = 0;
        for (std::size_t i = 1; i < amp.size(); ++i) {
          if (std::abs(amp[i]) > std::abs(amp[best])) best = i;
        }
        if (std::abs(std::abs(amp[best]) - 1.0) > kTolerance) {
          out.mismatches.push_back({input, expected, {}, "branch is not a basis state"});
          return;
        }
        BasisAssignment fin;
        fin.wires.resize(netlist.wire_count());
        for (std::uint32_t w = 0; w < netlist.wire_count(); ++w) {
          fin.wires[w] = static_cast<std::uint8_t>((best >> w) & 1U);
        }
        auto detail = check_final(fin, contract, input, expected, got, layout);
        if (!detail.empty()) {
          out.mismatches.push_back({input, expected, got, detail});
          return;
        }
      }
    } catch (const Error& e) {
      out.mismatches.push_back({input, expected, got, e.what()});
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(sweep_threads(), std::max<std::uint64_t>(total, 1)));
  std::vector<EquivalenceReport> parts(workers);
  auto sweep = [&](unsigned part) {
    const std::uint64_t lo = total * part / workers;
    const std::uint64_t hi = total * (part + 1) / workers;
    for (std::uint64_t i = lo; i < hi; ++i) check_one(i, parts[part]);
    parts[part].inputs_checked = hi - lo;
  };
  if (workers == 1) {
    sweep(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned p = 0; p < workers; ++p) pool.emplace_back(sweep, p);
    for (auto& t : pool) t.join();
  }

  EquivalenceReport report;
  for (auto& p : parts) {
    report.inputs_checked += p.inputs_checked;
    for (auto& m : p.mismatches) report.mismatches.push_back(std::move(m));
    for (auto& o : p.overflows) report.overflows.push_back(std::move(o));
  }
  return report;
}

}  // namespace qsq::sim

#include "qsq/synth.hpp"

#include <map>
#include <set>

#include "qsq/blocks.hpp"
#include "qsq/error.hpp"

namespace qsq::synth {

using ir::Gate;
using ir::GateKind;
using ir::WireId;
using layout::GridEntry;

std::string_view to_string(UncomputeRule rule) {
  switch (rule) {
    case UncomputeRule::OddLowLeading: return "odd-low-leading";
    case UncomputeRule::OddLowInner: return "odd-low-inner";
    case UncomputeRule::EvenLowLeading: return "even-low-leading";
    case UncomputeRule::EvenLowInner: return "even-low-inner";
    case UncomputeRule::OddHighInner: return "odd-high-inner";
    case UncomputeRule::EvenHighLeading: return "even-high-leading";
    case UncomputeRule::EvenHighInner: return "even-high-inner";
    case UncomputeRule::Fallback: return "fallback";
  }
  return "?";
}

std::string_view to_string(UncomputeOutcome outcome) {
  switch (outcome) {
    case UncomputeOutcome::Uncomputed: return "uncomputed";
    case UncomputeOutcome::SkippedNotProduct: return "skipped-not-product";
    case UncomputeOutcome::SkippedRepeat: return "skipped-repeat";
    case UncomputeOutcome::SkippedOutsideGrid: return "skipped-outside-grid";
  }
  return "?";
}

int SquarerCircuit::adder_and_count() const {
  int total = 0;
  for (const auto& s : stages) total += s.and_count;
  return total;
}

int SquarerCircuit::carry_less_stage_count() const {
  int total = 0;
  for (const auto& s : stages) total += s.carry_out ? 0 : 1;
  return total;
}

std::vector<UncomputeEvent> SquarerCircuit::uncompute_discrepancies() const {
  std::vector<UncomputeEvent> out;
  for (const auto& e : uncompute_log) {
    if (e.outcome != UncomputeOutcome::Uncomputed || e.rule == UncomputeRule::Fallback) {
      out.push_back(e);
    }
  }
  return out;
}

std::vector<UncomputeEvent> uncompute_schedule(int n) {
  std::vector<UncomputeEvent> out;
  auto target = [&](int row, int col, UncomputeRule rule) {
    out.push_back({row, col, rule, UncomputeOutcome::Uncomputed});
  };
  for (int i = 3; i <= 2 * n - 3; ++i) {
    const bool odd = i % 2 != 0;
    if (i <= n - 1) {
      if (odd) {
        target(2, i - 3, UncomputeRule::OddLowLeading);
        if (i > 3) {
          for (int k = 1; k <= (i + 1) / 2 - 2; ++k) {
            target(k + 2, i - 3 - 2 * k, UncomputeRule::OddLowInner);
          }
        }
      } else {
        target(0, i - 1, UncomputeRule::EvenLowLeading);
        if (i > 4) {
          for (int k = 1; k <= i / 2 - 2; ++k) {
            target(k + 1, i - 1 - 2 * k, UncomputeRule::EvenLowInner);
          }
        }
      }
    } else if (odd) {
      if (i != 2 * n - 3) {
        for (int k = 1; k <= (2 * n - i - 3) / 2; ++k) {
          target(k + 1, i - 1 - 2 * k, UncomputeRule::OddHighInner);
        }
      }
    } else {
      target(0, i - 1, UncomputeRule::EvenHighLeading);
      if (i != 2 * n - 4 && i != 2 * n - 6) {
        for (int k = 2; k <= (2 * n - i - 4) / 2; ++k) {
          target(k + 1, i - 2 * k + 1, UncomputeRule::EvenHighInner);
        }
      }
    }
  }
  return out;
}

SquarerCircuit synthesize_squarer(int n) {
  SquarerCircuit sq;
  sq.n = n;
  sq.grid = layout::arrange(n);  // throws UnsupportedWidth for n <= 4
  ir::Netlist& nl = sq.netlist;

  const auto a = nl.alloc_register("A", static_cast<std::size_t>(n), ir::WireInit::Input);

  // Partial products and input copies, in generation order.
  std::map<GridEntry, WireId> source;
  std::vector<GridEntry> product_order;
  std::vector<std::pair<WireId, WireId>> copies;  // (a_i, copy wire)
  for (int i = 1; i <= n - 1; ++i) {
    for (int j = i; j <= n - 1; ++j) {
      const WireId t = blocks::build_logical_and(nl, a[i - 1], a[j]);
      source.emplace(GridEntry::product(i - 1, j), t);
      product_order.push_back(GridEntry::product(i - 1, j));
      ++sq.product_and_count;
    }
    const WireId c = nl.alloc_ancilla();
    nl.append(Gate::cnot(a[i], c));
    source.emplace(GridEntry::copy(i), c);
    copies.emplace_back(a[i], c);
  }
  const WireId p1 = nl.alloc_register("P1", 1, ir::WireInit::Zero).front();

  // Bind grid cells to wires; each zero pad gets a fresh wire.
  std::vector<WireId> grid_wires;
  for (const auto& row : sq.grid.rows) {
    auto& bound = sq.cell_wires.emplace_back();
    for (const auto& cell : row) {
      const WireId w = cell.kind == GridEntry::Kind::Zero ? nl.alloc_ancilla() : source.at(cell);
      bound.push_back(w);
      grid_wires.push_back(w);
    }
  }
  nl.alias_register("T", grid_wires);

  // Adder cascade.
  std::vector<WireId> p{a[0], p1};
  std::vector<WireId> carried;
  const int rows = sq.grid.row_count();
  for (int k = 0; k + 1 < rows; ++k) {
    AdderStage st;
    st.carry_out = k == 0;
    st.a = sq.cell_wires[k == 0 ? 0 : k + 1];
    st.b = k == 0 ? sq.cell_wires[1] : carried;
    st.width = static_cast<int>(st.a.size());
    st.carry = blocks::build_adder_in_place(nl, st.a, st.b, st.carry_out);
    st.and_count = static_cast<int>(blocks::adder_and_count(st.width, st.carry_out));
    st.sum = st.b;
    if (st.carry) st.sum.push_back(*st.carry);

    const bool last = k + 2 == rows;
    if (last) {
      p.insert(p.end(), st.sum.begin(), st.sum.end());
    } else {
      p.push_back(st.sum[0]);
      p.push_back(st.sum[1]);
      carried.assign(st.sum.begin() + 2, st.sum.end());
      nl.alias_register("V" + std::to_string(k), carried);
    }
    sq.stages.push_back(std::move(st));
  }
  if (static_cast<int>(p.size()) != 2 * n) {
    throw std::logic_error("output register has " + std::to_string(p.size()) + " positions for n=" +
                           std::to_string(n));
  }
  nl.alias_register("P", p);
  sq.output = p;

  // Restore the input copies.
  for (const auto& [bit, copy] : copies) nl.append(Gate::cnot(bit, copy));

  // Uncompute partial products left in the adder a-operands. Row 1
  // has become the first sum and is not touched.
  std::set<std::pair<int, int>> done;
  auto uncompute_cell = [&](int row, int col) {
    const GridEntry& e = sq.grid.rows[row][col];
    blocks::build_uncompute_and(nl, a[e.i], a[e.j], sq.cell_wires[row][col]);
    done.emplace(row, col);
  };
  for (UncomputeEvent ev : uncompute_schedule(n)) {
    if (ev.row < 0 || ev.row >= rows || ev.col < 0 ||
        ev.col >= static_cast<int>(sq.grid.rows[ev.row].size())) {
      ev.outcome = UncomputeOutcome::SkippedOutsideGrid;
    } else if (sq.grid.rows[ev.row][ev.col].kind != GridEntry::Kind::PartialProduct ||
               ev.row == 1) {
      ev.outcome = UncomputeOutcome::SkippedNotProduct;
    } else if (done.contains({ev.row, ev.col})) {
      ev.outcome = UncomputeOutcome::SkippedRepeat;
    } else {
      uncompute_cell(ev.row, ev.col);
    }
    sq.uncompute_log.push_back(ev);
  }

  std::map<GridEntry, std::pair<int, int>> position;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < static_cast<int>(sq.grid.rows[r].size()); ++c) {
      position.emplace(sq.grid.rows[r][c], std::pair{r, c});
    }
  }
  for (auto it = product_order.rbegin(); it != product_order.rend(); ++it) {
    const auto [r, c] = position.at(*it);
    if (r == 1 || done.contains({r, c})) continue;
    uncompute_cell(r, c);
    sq.uncompute_log.push_back({r, c, UncomputeRule::Fallback, UncomputeOutcome::Uncomputed});
  }
  return sq;
}

std::vector<WireId> output_bit_map(const SquarerCircuit& circuit) { return circuit.output; }

}  // namespace qsq::synth

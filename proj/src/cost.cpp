#include "qsq/cost.hpp"

#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsq/circuit.hpp"
#include "qsq/error.hpp"
#include "qsq/synth.hpp"

namespace qsq::cost {

std::int64_t Polynomial::operator()(std::int64_t n) const {
  std::int64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * n + *it;
  if (acc % denominator != 0) {
    throw std::domain_error("polynomial value " + std::to_string(acc) + " not divisible by " +
                            std::to_string(denominator) + " at n=" + std::to_string(n));
  }
  return acc / denominator;
}

std::pair<std::int64_t, std::int64_t> Polynomial::leading() const {
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (*it != 0) return {*it, denominator};
  }
  return {0, denominator};
}

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::TCount: return "t_count";
    case Metric::TDepth: return "t_depth";
    case Metric::CnotCount: return "cnot_count";
    case Metric::CnotDepth: return "cnot_depth";
    case Metric::Qubits: return "qubits";
    case Metric::KqT: return "kq_t";
  }
  return "?";
}

std::string_view metric_title(Metric m) {
  switch (m) {
    case Metric::TCount: return "T-count";
    case Metric::TDepth: return "T-depth";
    case Metric::CnotCount: return "CNOT-count";
    case Metric::CnotDepth: return "CNOT-depth";
    case Metric::Qubits: return "Qubits";
    case Metric::KqT: return "KQ_T";
  }
  return "?";
}

std::string_view design_name(Design d) {
  switch (d) {
    case Design::Proposed: return "proposed";
    case Design::Thapliyal: return "thapliyal";
    case Design::NagamaniOsu: return "nagamani-osu";
  }
  return "?";
}

Design design_from_name(std::string_view name) {
  for (Design d : {Design::Proposed, Design::Thapliyal, Design::NagamaniOsu}) {
    if (design_name(d) == name) return d;
  }
  throw Error(ErrorCode::UnknownDesign, "unknown design '" + std::string(name) +
                                            "' (expected proposed, thapliyal or nagamani-osu)");
}

std::string_view cause_name(DeltaCause c) {
  switch (c) {
    case DeltaCause::AdderAndConvention: return "adder-and-convention";
    case DeltaCause::SequentialVsAsapDepth: return "sequential-vs-asap-depth";
    case DeltaCause::AncillaCensus: return "ancilla-census";
    case DeltaCause::AdderCnotBudget: return "adder-cnot-budget";
  }
  return "?";
}

namespace {

using Table = std::array<Polynomial, 6>;

// Order: t_count, t_depth, cnot_count, cnot_depth, qubits, kq_t.
const Table kProposedEven{{
    {{-4, -4, 5}, 1},
    {{-4, -4, 5}, 2},
    {{-28, -23, 24}, 2},
    {{-10, -7, 8}, 1},
    {{-4, 2, 3}, 2},
    {{16, 8, -40, -2, 15}, 4},
}};

const Table kProposedOdd{{
    {{-3, -6, 5}, 1},
    {{-3, -6, 5}, 2},
    {{-13, -35, 24}, 2},
    {{-5, -11, 8}, 1},
    {{-3, 0, 3}, 2},
    {{9, 18, -24, -18, 15}, 4},
}};

const Table kThapliyal{{
    {{2, -17, 15}, 1},
    {{-2, -3, 5}, 1},
    {{8, -23, 17}, 1},
    {{2, -14, 14}, 1},
    {{1, 2, 1}, 1},
    {{-2, -7, -3, 7, 5}, 1},
}};

// Garbage-free variant (Bennett-adjusted).
const Table kNagamaniOsu{{
    {{-12, -24, 22}, 1},
    {{-8, -6, 8}, 1},
    {{-6, -52, 24}, 1},
    {{-12, -21, 21}, 1},
    {{4, 5, 1}, 2},
    {{-16, -32, -3, 17, 4}, 1},
}};

const Table& table_for(Design design, Parity parity) {
  switch (design) {
    case Design::Proposed: return parity == Parity::Even ? kProposedEven : kProposedOdd;
    case Design::Thapliyal: return kThapliyal;
    case Design::NagamaniOsu: return kNagamaniOsu;
  }
  throw Error(ErrorCode::UnknownDesign, "unknown design");
}

CostReport evaluate(Design design, int n) {
  CostReport r;
  r.n = n;
  r.parity = parity_of(n);
  r.design = design;
  const Table& t = table_for(design, r.parity);
  for (std::size_t k = 0; k < t.size(); ++k) r.metrics[k].closed_form = t[k](n);
  return r;
}

std::string percent_string(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t x = 10000 * num;
  const std::int64_t hundredths = x >= 0 ? (2 * x + den) / (2 * den) : -((-2 * x + den) / (2 * den));
  const std::int64_t mag = hundredths < 0 ? -hundredths : hundredths;
  std::ostringstream out;
  if (hundredths < 0) out << '-';
  out << mag / 100 << '.' << std::setw(2) << std::setfill('0') << mag % 100;
  return out.str();
}

}  // namespace

const Polynomial& polynomial(Design design, Metric metric, Parity parity) {
  return table_for(design, parity)[static_cast<std::size_t>(metric)];
}

std::int64_t adder_and_count_closed_form(int n) {
  const std::int64_t m = n;
  return n % 2 == 0 ? (3 * m * m - 2 * m - 4) / 4 : (3 * m * m - 4 * m - 3) / 4;
}

CostReport proposed_costs(int n) {
  if (n <= 4) {
    throw Error(ErrorCode::UnsupportedWidth,
                "input width must satisfy n > 4 (got " + std::to_string(n) + ")");
  }
  CostReport r = evaluate(Design::Proposed, n);
  r.and_count.step1 = static_cast<std::int64_t>(n) * (n - 1) / 2;
  r.and_count.adders_closed_form = adder_and_count_closed_form(n);
  return r;
}

CostReport baseline_costs(Design design, int n) {
  if (design == Design::Proposed) return proposed_costs(n);
  if (n < 2) throw std::invalid_argument("baseline cost needs n >= 2");
  return evaluate(design, n);
}

std::vector<ReductionRatio> reduction_ratios() {
  std::vector<ReductionRatio> out;
  for (Design base : {Design::Thapliyal, Design::NagamaniOsu}) {
    for (Metric m : kMetrics) {
      const auto [pn, pd] = polynomial(Design::Proposed, m, Parity::Even).leading();
      const auto [bn, bd] = polynomial(base, m, Parity::Even).leading();
      // 1 - (pn/pd) / (bn/bd) = (pd*bn - pn*bd) / (pd*bn)
      const std::int64_t num = pd * bn - pn * bd;
      const std::int64_t den = pd * bn;
      out.push_back({m, base, num, den, percent_string(num, den)});
    }
  }
  return out;
}

MeasuredCosts measure(const synth::SquarerCircuit& circuit) {
  const ir::Netlist expanded = ir::expand(circuit.netlist);
  MeasuredCosts m;
  m.n = circuit.n;
  auto set = [&](Metric k, std::int64_t v) { m.values[static_cast<std::size_t>(k)] = v; };
  set(Metric::TCount, static_cast<std::int64_t>(ir::count(expanded, ir::CountClass::T)));
  set(Metric::TDepth, static_cast<std::int64_t>(ir::schedule_asap(expanded, ir::DepthClass::T)));
  set(Metric::CnotCount, static_cast<std::int64_t>(ir::count(expanded, ir::CountClass::Cnot)));
  set(Metric::CnotDepth,
      static_cast<std::int64_t>(ir::schedule_asap(expanded, ir::DepthClass::Cnot)));
  set(Metric::Qubits, expanded.wire_count());
  set(Metric::KqT, m.at(Metric::Qubits) * m.at(Metric::TDepth));
  m.and_macro_count = circuit.total_and_count();
  m.adder_and_count = circuit.adder_and_count();
  m.carry_less_stages = circuit.carry_less_stage_count();
  return m;
}

CostReport reconcile(const MeasuredCosts& measured, int n) {
  if (measured.n != n) {
    const bool parity = parity_of(measured.n) != parity_of(n);
    throw Error(ErrorCode::ParityMismatch,
                "measured side is for n=" + std::to_string(measured.n) + ", closed form for n=" +
                    std::to_string(n) + (parity ? " (different parity)" : ""));
  }
  CostReport r = proposed_costs(n);
  r.and_count.adders_measured = measured.adder_and_count;
  r.predicted_t_delta = -4 * static_cast<std::int64_t>(measured.carry_less_stages);

  const std::map<Metric, std::vector<DeltaCause>> causes{
      {Metric::TCount, {DeltaCause::AdderAndConvention}},
      {Metric::TDepth, {DeltaCause::SequentialVsAsapDepth, DeltaCause::AdderAndConvention}},
      {Metric::CnotCount, {DeltaCause::AdderCnotBudget}},
      {Metric::CnotDepth, {DeltaCause::SequentialVsAsapDepth, DeltaCause::AdderCnotBudget}},
      {Metric::Qubits, {DeltaCause::AncillaCensus}},
  };
  for (Metric m : kMetrics) {
    auto& e = r.at(m);
    e.measured = measured.at(m);
    e.delta = *e.measured - e.closed_form;
    if (*e.delta == 0) continue;
    if (m == Metric::KqT) {
      // Product metric: inherits from its factors.
      std::set<DeltaCause> merged;
      for (Metric f : {Metric::Qubits, Metric::TDepth}) {
        if (r.at(f).delta.value_or(0) != 0) merged.insert(causes.at(f).begin(), causes.at(f).end());
      }
      e.causes.assign(merged.begin(), merged.end());
    } else {
      e.causes = causes.at(m);
    }
  }
  return r;
}

std::string to_csv(const std::vector<CostReport>& reports) {
  std::ostringstream out;
  out << "n,design,metric,closed_form,measured,delta\n";
  for (const auto& r : reports) {
    for (Metric m : kMetrics) {
      const auto& e = r.at(m);
      out << r.n << ',' << design_name(r.design) << ',' << metric_name(m) << ',' << e.closed_form
          << ',';
      if (e.measured) out << *e.measured;
      out << ',';
      if (e.delta) out << *e.delta;
      out << '\n';
    }
  }
  return out.str();
}

std::string to_table(const std::vector<CostReport>& reports) {
  std::map<int, std::vector<const CostReport*>> by_n;
  for (const auto& r : reports) by_n[r.n].push_back(&r);

  std::ostringstream out;
  for (const auto& [n, group] : by_n) {
    std::vector<std::string> header{"n=" + std::to_string(n)};
    for (const auto* r : group) {
      header.emplace_back(design_name(r->design));
      if (r->at(Metric::TCount).measured) {
        header.push_back(std::string(design_name(r->design)) + " measured");
      }
    }
    std::vector<std::vector<std::string>> rows{header};
    for (Metric m : kMetrics) {
      std::vector<std::string> row{std::string(metric_title(m))};
      for (const auto* r : group) {
        const auto& e = r->at(m);
        row.push_back(std::to_string(e.closed_form));
        if (r->at(Metric::TCount).measured) {
          std::string cell = e.measured ? std::to_string(*e.measured) : "";
          if (e.delta && *e.delta != 0) {
            cell += " (" + std::string(*e.delta > 0 ? "+" : "") + std::to_string(*e.delta);
            for (auto c : e.causes) cell += std::string(" ") + std::string(cause_name(c));
            cell += ")";
          }
          row.push_back(cell);
        }
      }
      rows.push_back(std::move(row));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c != 0) out << "  ";
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      }
      out << '\n';
    }
    out << '\n';
  }
  std::string s = out.str();
  // Trailing spaces from column padding.
  std::string clean;
  std::istringstream lines(s);
  for (std::string line; std::getline(lines, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    clean += line + '\n';
  }
  return clean;
}

std::string ratios_table(const std::vector<ReductionRatio>& ratios) {
  std::ostringstream out;
  out << "asymptotic reduction of proposed vs baseline (leading coefficients, even n)\n";
  for (const auto& r : ratios) {
    out << std::left << std::setw(14) << design_name(r.baseline) << std::setw(12)
        << metric_title(r.metric) << r.percent << "%\n";
  }
  return out.str();
}

}  // namespace qsq::cost

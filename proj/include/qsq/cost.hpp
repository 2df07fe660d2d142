#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsq::synth {
struct SquarerCircuit;
}

namespace qsq::cost {

/// Integer-coefficient polynomial over a common positive denominator,
/// coefficients lowest degree first.
struct Polynomial {
  std::vector<std::int64_t> coeffs;
  std::int64_t denominator = 1;

  /// Exact value; throws std::domain_error when the division is inexact.
  [[nodiscard]] std::int64_t operator()(std::int64_t n) const;
  /// Leading coefficient as (numerator, denominator).
  [[nodiscard]] std::pair<std::int64_t, std::int64_t> leading() const;
};

enum class Metric { TCount, TDepth, CnotCount, CnotDepth, Qubits, KqT };
inline constexpr std::array<Metric, 6> kMetrics{Metric::TCount,    Metric::TDepth,
                                               Metric::CnotCount, Metric::CnotDepth,
                                               Metric::Qubits,    Metric::KqT};
[[nodiscard]] std::string_view metric_name(Metric m);  // "t_count", ...
[[nodiscard]] std::string_view metric_title(Metric m);  // "T-count", ...

enum class Design { Proposed, Thapliyal, NagamaniOsu };
[[nodiscard]] std::string_view design_name(Design d);  // "proposed", "thapliyal", "nagamani-osu"
/// Throws UnknownDesign.
[[nodiscard]] Design design_from_name(std::string_view name);

enum class Parity { Even, Odd };
[[nodiscard]] inline Parity parity_of(int n) { return n % 2 == 0 ? Parity::Even : Parity::Odd; }

/// Closed-form polynomial of `metric` for a design. Proposed polynomials
/// depend on parity; baselines ignore it.
[[nodiscard]] const Polynomial& polynomial(Design design, Metric metric, Parity parity);

/// Logical-AND count inside the adder cascade, m ANDs per m-bit adder.
[[nodiscard]] std::int64_t adder_and_count_closed_form(int n);

/// Why a measured value departs from its closed form.
enum class DeltaCause {
  AdderAndConvention,     // m-1 ANDs in carry-less adders vs m counted
  SequentialVsAsapDepth,  // closed forms add block depths; measurement layers ASAP
  AncillaCensus,          // copy wires, carry wires and P_1 counted differently
  AdderCnotBudget,        // realized adder CNOTs vs 12m-9
};
[[nodiscard]] std::string_view cause_name(DeltaCause c);

struct MetricEntry {
  std::int64_t closed_form = 0;
  std::optional<std::int64_t> measured;
  std::optional<std::int64_t> delta;  // measured - closed_form
  std::vector<DeltaCause> causes;     // non-empty whenever delta != 0
};

struct AndCounts {
  std::int64_t step1 = 0;  // C(n,2)
  std::int64_t adders_closed_form = 0;
  std::optional<std::int64_t> adders_measured;
};

struct CostReport {
  int n = 0;
  Parity parity = Parity::Even;
  Design design = Design::Proposed;
  std::array<MetricEntry, 6> metrics;
  AndCounts and_count;
  /// Proposed design with measurement only: -4 per carry-less adder stage.
  std::optional<std::int64_t> predicted_t_delta;

  [[nodiscard]] const MetricEntry& at(Metric m) const {
    return metrics[static_cast<std::size_t>(m)];
  }
  MetricEntry& at(Metric m) { return metrics[static_cast<std::size_t>(m)]; }
};

/// Throws UnsupportedWidth for n <= 4.
[[nodiscard]] CostReport proposed_costs(int n);
/// Throws std::invalid_argument for n < 2.
[[nodiscard]] CostReport baseline_costs(Design design, int n);

struct ReductionRatio {
  Metric metric;
  Design baseline;
  std::int64_t numerator;  // exact 1 - lead(proposed)/lead(baseline)
  std::int64_t denominator;
  std::string percent;  // two decimals, e.g. "66.67"
};

/// Every metric against both baselines, from the even-n leading coefficients.
[[nodiscard]] std::vector<ReductionRatio> reduction_ratios();

struct MeasuredCosts {
  int n = 0;
  std::array<std::int64_t, 6> values{};
  std::int64_t and_macro_count = 0;
  std::int64_t adder_and_count = 0;
  int carry_less_stages = 0;

  [[nodiscard]] std::int64_t at(Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

/// Expands the circuit and measures it: counts, ASAP depths, wire count.
[[nodiscard]] MeasuredCosts measure(const synth::SquarerCircuit& circuit);

/// Closed forms at n with measured values, deltas and causes filled in.
/// Throws ParityMismatch when `measured` was taken at a different n.
[[nodiscard]] CostReport reconcile(const MeasuredCosts& measured, int n);

/// Columns n,design,metric,closed_form,measured,delta.
[[nodiscard]] std::string to_csv(const std::vector<CostReport>& reports);
/// Metric rows, one column per design, grouped by n.
[[nodiscard]] std::string to_table(const std::vector<CostReport>& reports);
[[nodiscard]] std::string ratios_table(const std::vector<ReductionRatio>& ratios);

}  // namespace qsq::cost

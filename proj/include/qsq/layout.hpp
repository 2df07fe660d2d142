#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsq::layout {

/// One cell of the operand grid: a partial product a_i*a_j (i < j), a copy of
/// input bit a_i, or a zero pad.
struct GridEntry {
  enum class Kind : std::uint8_t { Zero, PartialProduct, Copy };

  Kind kind = Kind::Zero;
  int i = 0;
  int j = 0;

  static GridEntry zero() { return {}; }
  static GridEntry product(int lo, int hi) { return {Kind::PartialProduct, lo, hi}; }
  static GridEntry copy(int bit) { return {Kind::Copy, bit, bit}; }

  [[nodiscard]] std::string label() const;  // "a{i}a{j}", "a{i}", "0"
  [[nodiscard]] int value(std::uint64_t a) const;

  friend auto operator<=>(const GridEntry&, const GridEntry&) = default;
};

/// Which rule of the arrangement placed a zero pad.
enum class PadPhase : std::uint8_t { None, Interior, Left };

/// Rows T_0..T_R, least-significant column first. Rows 0 and 1 have width
/// 2n-3, row k >= 2 has width 2n-2k.
struct OperandGrid {
  int n = 0;
  std::vector<std::vector<GridEntry>> rows;
  std::vector<std::vector<PadPhase>> pads;

  [[nodiscard]] int row_count() const { return static_cast<int>(rows.size()); }
  [[nodiscard]] int adder_count() const { return row_count() - 1; }
  [[nodiscard]] int pad_count(PadPhase phase) const;
};

/// Number of adders / last row index R: n/2 for even n, (n-1)/2 for odd n.
[[nodiscard]] int row_limit(int n);

/// Every PP(i,j), 0 <= i < j < n, in generation order (i outer), followed by
/// Copy(1..n-1). Throws UnsupportedWidth for n <= 4.
[[nodiscard]] std::vector<GridEntry> partial_product_set(int n);

/// Places partial products, copies and zero pads into the operand grid.
/// Every cell is written exactly once; a second write or an unfilled cell
/// throws.
[[nodiscard]] OperandGrid arrange(int n);

/// bit0(a) + 4*(T_0 + T_1) + sum_{k>=2} 4^k * T_k, each row read as a
/// little-endian integer of its entry values.
[[nodiscard]] std::uint64_t grid_value(const OperandGrid& grid, std::uint64_t a);

/// Operand widths of the adder cascade: 2n-3, then 2n-4-2i.
[[nodiscard]] std::vector<int> adder_widths(int n);

/// One row per line, cells comma-separated.
[[nodiscard]] std::string dump(const OperandGrid& grid);

}  // namespace qsq::layout

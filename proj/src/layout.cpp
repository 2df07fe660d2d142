#include "qsq/layout.hpp"

#include <sstream>

#include "qsq/error.hpp"

namespace qsq::layout {

namespace {

void require_width(int n) {
  if (n <= 4) {
    throw Error(ErrorCode::UnsupportedWidth,
                "input width must satisfy n > 4 (got " + std::to_string(n) + ")");
  }
}

bool odd(int v) { return v % 2 != 0; }

// Assert-on-write grid under construction.
class GridWriter {
 public:
  explicit GridWriter(int n) {
    grid_.n = n;
    const int limit = row_limit(n);
    for (int k = 0; k <= limit; ++k) {
      const int width = k <= 1 ? 2 * n - 3 : 2 * n - 2 * k;
      grid_.rows.emplace_back(static_cast<std::size_t>(width));
      grid_.pads.emplace_back(static_cast<std::size_t>(width), PadPhase::None);
      filled_.emplace_back(static_cast<std::size_t>(width), false);
    }
  }

  void place(int row, int col, GridEntry entry, PadPhase phase = PadPhase::None) {
    if (row < 0 || row >= grid_.row_count() || col < 0 ||
        col >= static_cast<int>(grid_.rows[row].size())) {
      throw std::logic_error("arrangement writes outside the grid at T(" + std::to_string(row) +
                             "," + std::to_string(col) + ") for n=" + std::to_string(grid_.n));
    }
    if (filled_[row][col]) {
      throw std::logic_error("arrangement writes T(" + std::to_string(row) + "," +
                             std::to_string(col) + ") twice for n=" + std::to_string(grid_.n));
    }
    filled_[row][col] = true;
    grid_.rows[row][col] = entry;
    grid_.pads[row][col] = phase;
  }

  void pad(int row, int col, PadPhase phase) { place(row, col, GridEntry::zero(), phase); }

  OperandGrid finish() && {
    for (int r = 0; r < grid_.row_count(); ++r) {
      for (std::size_t c = 0; c < filled_[r].size(); ++c) {
        if (!filled_[r][c]) {
          throw std::logic_error("arrangement leaves T(" + std::to_string(r) + "," +
                                 std::to_string(c) + ") empty for n=" + std::to_string(grid_.n));
        }
      }
    }
    return std::move(grid_);
  }

 private:
  OperandGrid grid_;
  std::vector<std::vector<bool>> filled_;
};

GridEntry pp(int i, int j) { return i < j ? GridEntry::product(i, j) : GridEntry::product(j, i); }

}  // namespace

std::string GridEntry::label() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Copy: return "a" + std::to_string(i);
    case Kind::PartialProduct: return "a" + std::to_string(i) + "a" + std::to_string(j);
  }
  return "?";
}

int GridEntry::value(std::uint64_t a) const {
  const auto bit = [a](int k) { return static_cast<int>((a >> k) & 1U); };
  switch (kind) {
    case Kind::Zero: return 0;
    case Kind::Copy: return bit(i);
    case Kind::PartialProduct: return bit(i) & bit(j);
  }
  return 0;
}

int OperandGrid::pad_count(PadPhase phase) const {
  int total = 0;
  for (const auto& row : pads) {
    for (PadPhase p : row) total += p == phase ? 1 : 0;
  }
  return total;
}

int row_limit(int n) { return odd(n) ? (n - 1) / 2 : n / 2; }

std::vector<GridEntry> partial_product_set(int n) {
  require_width(n);
  std::vector<GridEntry> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.push_back(GridEntry::product(i, j));
  }
  for (int i = 1; i < n; ++i) out.push_back(GridEntry::copy(i));
  return out;
}

OperandGrid arrange(int n) {
  require_width(n);
  GridWriter w(n);

  for (int i = 1; i <= 2 * n - 3; ++i) {
    const bool low = i <= n - 1;
    if (low && odd(i)) {
      w.place(0, i - 1, GridEntry::copy((i + 1) / 2));
      w.place(1, i - 1, pp(0, i));
      for (int j = 2; j <= (i + 1) / 2; ++j) w.place(j, i - 2 * j + 1, pp(j - 1, i - j + 1));
    } else if (low) {
      for (int j = 1; j <= i / 2; ++j) {
        const int col = j <= 2 ? i - 1 : i - 2 * j + 3;
        w.place(j - 1, col, pp(j - 1, i - j + 1));
      }
      // Applied for every even i <= n-1.
      w.pad(i / 2, 1, PadPhase::Interior);
    } else if (odd(i)) {
      w.place(0, i - 1, GridEntry::copy((i + 1) / 2));
      w.place(1, i - 1, pp(i - n + 1, n - 1));
      if (i != 2 * n - 3) {
        for (int j = 2; j <= (2 * n - i - 1) / 2; ++j) {
          w.place(j, i - 2 * j + 1, pp(i - n + j, n - j));
        }
      }
    } else {
      for (int j = 1; j <= (2 * n - i - 2) / 2; ++j) {
        const int col = j <= 2 ? i - 1 : i - 2 * j + 3;
        w.place(j - 1, col, pp(i - n + j, n - j));
      }
      const int upper = (2 * n - i - 2) / 2;
      const int lower = (2 * n - i) / 2;
      if (i == 2 * n - 4) {
        w.pad(upper, i - 1, PadPhase::Interior);
        w.pad(lower, i - 3, PadPhase::Interior);
      } else if (!odd(n) && i == n) {
        w.pad(upper, 3, PadPhase::Interior);
        w.pad(lower, 1, PadPhase::Interior);
      } else {
        w.pad(upper, 2 * (i - n) + 3, PadPhase::Interior);
        w.pad(lower, 2 * (i - n) + 1, PadPhase::Interior);
      }
    }
  }

  // Left padding of rows T_2..T_R up to their operand width.
  const int left_rows = odd(n) ? (n - 3) / 2 : (n - 2) / 2;
  for (int i = 1; i <= left_rows; ++i) {
    for (int j = 1; j <= 2 * i; ++j) w.pad(i + 1, 2 * n - 3 - 4 * i + j, PadPhase::Left);
  }
  return std::move(w).finish();
}

std::uint64_t grid_value(const OperandGrid& grid, std::uint64_t a) {
  auto row_value = [&](int k) {
    std::uint64_t v = 0;
    const auto& row = grid.rows[static_cast<std::size_t>(k)];
    for (std::size_t c = 0; c < row.size(); ++c) {
      v |= static_cast<std::uint64_t>(row[c].value(a)) << c;
    }
    return v;
  };
  std::uint64_t total = (a & 1U) + 4 * (row_value(0) + row_value(1));
  for (int k = 2; k < grid.row_count(); ++k) total += row_value(k) << (2 * k);
  return total;
}

std::vector<int> adder_widths(int n) {
  require_width(n);
  std::vector<int> widths{2 * n - 3};
  for (int k = 2; k <= row_limit(n); ++k) widths.push_back(2 * n - 2 * k);
  return widths;
}

std::string dump(const OperandGrid& grid) {
  std::ostringstream out;
  for (const auto& row : grid.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out << ',';
      out << row[c].label();
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qsq::layout

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace cellgroup {

// Dense rows x cols cost table for the linear assignment solver. Entries can
// be marked forbidden; a forbidden entry is never part of a returned solution.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, std::int64_t cost);
  void forbid(std::size_t r, std::size_t c);
  bool forbidden(std::size_t r, std::size_t c) const { return forbidden_[r * cols_ + c] != 0; }
  std::int64_t cost(std::size_t r, std::size_t c) const { return costs_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> costs_;
  std::vector<std::uint8_t> forbidden_;
};

struct Assignment {
  std::int64_t cost = 0;
  std::vector<std::size_t> column_of_row;
};

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// Hungarian method with potentials, O(rows^2 * cols). Returns nullopt when
// the forbidden entries leave no complete assignment.
std::optional<Assignment> solve_assignment(const CostMatrix& costs);

}  // namespace cellgroup

#include "cellgroup/assignment.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace cellgroup {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), costs_(rows * cols, fill), forbidden_(rows * cols, 0) {}

void CostMatrix::set(std::size_t r, std::size_t c, std::int64_t cost) {
  costs_[r * cols_ + c] = cost;
  forbidden_[r * cols_ + c] = 0;
}

void CostMatrix::forbid(std::size_t r, std::size_t c) { forbidden_[r * cols_ + c] = 1; }

std::optional<Assignment> solve_assignment(const CostMatrix& costs) {
  const std::size_t n = costs.rows();
  const std::size_t m = costs.cols();
  if (n > m) throw std::invalid_argument("solve_assignment: more rows than columns");
  if (n == 0) return Assignment{};

  // Forbidden entries get a cost larger than any complete assignment of
  // allowed entries, so an optimum touching one proves infeasibility.
  std::int64_t span = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (!costs.forbidden(r, c)) span = std::max(span, std::abs(costs.cost(r, c)));
    }
  }
  const std::int64_t blocked = (span + 1) * static_cast<std::int64_t>(2 * n + 1);
  auto at = [&](std::size_t r, std::size_t c) { return costs.forbidden(r, c) ? blocked : costs.cost(r, c); };

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based arrays; column 0 is the virtual start.
  std::vector<std::int64_t> u(n + 1, 0), v(m + 1, 0);
  std::vector<std::size_t> row_of_col(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Assignment result;
  result.column_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (row_of_col[j] != 0) result.column_of_row[row_of_col[j] - 1] = j - 1;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t c = result.column_of_row[r];
    if (costs.forbidden(r, c)) return std::nullopt;
    result.cost += costs.cost(r, c);
  }
  return result;
}

}  // namespace cellgroup

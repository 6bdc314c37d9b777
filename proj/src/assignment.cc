#include "atrig/assignment.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "atrig/error.h"

namespace atrig {

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()), data_() {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DataError("cost matrix must be square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

namespace {

struct Potentials {
  std::vector<double> row, col;
};

// Shortest augmenting path Hungarian method; rows/cols are 1-based inside,
// index 0 is the virtual source.
Potentials hungarian(const CostMatrix& m, std::vector<std::size_t>& column_of_row) {
  const std::size_t n = m.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = m(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0 || !std::isfinite(delta)) {
        throw DataError("assignment problem has no finite perfect matching");
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  column_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) column_of_row[p[j] - 1] = j - 1;
  return {std::vector<double>(u.begin() + 1, u.end()), std::vector<double>(v.begin() + 1, v.end())};
}

// Rewrites an optimal matching into the lexicographically smallest one that
// uses only zero-reduced-cost edges. Every such perfect matching is optimal
// for the given dual potentials.
void lexicographic_refine(const CostMatrix& m, const Potentials& pot,
                          std::vector<std::size_t>& column_of_row) {
  const std::size_t n = m.size();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::isfinite(m(i, j))) scale = std::max(scale, std::abs(m(i, j)));
  const double tol = 1e-9 * scale;
  auto tight = [&](std::size_t i, std::size_t j) {
    const double c = m(i, j);
    return std::isfinite(c) && c - pot.row[i] - pot.col[j] <= tol;
  };

  std::vector<std::size_t> row_of_col(n);
  for (std::size_t i = 0; i < n; ++i) row_of_col[column_of_row[i]] = i;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == column_of_row[i]) break;
      if (row_of_col[j] < i || !tight(i, j)) continue;

      // Row `start` gives up column j; look for an alternating path that ends
      // at row i's current column, through rows that are not yet fixed.
      const std::size_t start = row_of_col[j];
      const std::size_t target = column_of_row[i];
      std::vector<std::size_t> came_from_row(n, n);  // per column
      std::vector<char> seen_row(n, 0);
      std::deque<std::size_t> queue{start};
      seen_row[start] = 1;
      std::size_t found = n;
      while (!queue.empty() && found == n) {
        const std::size_t x = queue.front();
        queue.pop_front();
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j || came_from_row[c] != n || !tight(x, c)) continue;
          if (c == target) {
            came_from_row[c] = x;
            found = c;
            break;
          }
          const std::size_t owner = row_of_col[c];
          if (owner <= i || seen_row[owner]) continue;
          came_from_row[c] = x;
          seen_row[owner] = 1;
          queue.push_back(owner);
        }
      }
      if (found == n) continue;

      for (std::size_t c = found;;) {
        const std::size_t x = came_from_row[c];
        const std::size_t previous = column_of_row[x];
        column_of_row[x] = c;
        row_of_col[c] = x;
        if (x == start) break;
        c = previous;
      }
      column_of_row[i] = j;
      row_of_col[j] = i;
      break;
    }
  }
}

}  // namespace

Assignment solve_assignment(const CostMatrix& m) {
  Assignment result;
  if (m.size() == 0) return result;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) < 0 || std::isnan(m(i, j))) throw DataError("cost matrix entries must be >= 0");

  auto pot = hungarian(m, result.column_of_row);
  lexicographic_refine(m, pot, result.column_of_row);
  for (std::size_t i = 0; i < m.size(); ++i) result.total_cost += m(i, result.column_of_row[i]);
  return result;
}

}  // namespace atrig

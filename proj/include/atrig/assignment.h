#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace atrig {

// Square, row-major. Forbidden entries hold kForbidden.
class CostMatrix {
 public:
  static constexpr double kForbidden = std::numeric_limits<double>::infinity();

  CostMatrix() = default;
  explicit CostMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::size_t> column_of_row;
  double total_cost = 0.0;  // summed in row order
};

// Minimum-cost perfect matching (Hungarian method with potentials). Among
// optimal matchings the lexicographically smallest `column_of_row` is
// returned. Throws DataError when no finite assignment exists.
Assignment solve_assignment(const CostMatrix& m);

}  // namespace atrig

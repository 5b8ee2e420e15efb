#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lipcore::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded, kFailed };

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct Result {
  Status status = Status::kFailed;
  double objective = 0.0;
  std::vector<double> x;
};

/// minimize c.x subject to A x <= b with every variable free in sign.
/// Dense two-phase tableau simplex; switches from Dantzig's rule to Bland's
/// rule after a bounded number of pivots, and gives up with kFailed once the
/// iteration cap is hit.
Result minimize(const Matrix& a, std::span<const double> b, std::span<const double> c,
                std::size_t max_pivots = 20000);

/// Solves min s subject to a_i.x - w_i s <= b_i and s >= -s_floor. The
/// optimum is the smallest uniform violation of the system; a value <= tol
/// means the system is feasible at tolerance tol. x has a.cols entries
/// followed by s.
Result min_violation(const Matrix& a, std::span<const double> b, std::span<const double> weights,
                     double s_floor = 1.0);

}  // namespace lipcore::lp

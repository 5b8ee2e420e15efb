#include "lipcore/lp.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace lipcore::lp {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr std::size_t kBlandAfter = 200;

// Tableau for: maximize obj.y s.t. A y <= b, y >= 0. Column n is the
// phase-one artificial variable, column n+1 the right-hand side.
class Tableau {
 public:
  Tableau(const Matrix& a, std::span<const double> b, std::span<const double> obj)
      : m_(a.rows), n_(a.cols), width_(n_ + 2), d_((m_ + 2) * width_, 0.0), basis_(m_), nonbasis_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = a(i, j);
      basis_[i] = static_cast<long>(n_ + i);
      at(i, n_) = -1.0;
      at(i, n_ + 1) = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      at(m_, j) = -obj[j];
    }
    nonbasis_[n_] = -1;
    at(m_ + 1, n_) = 1.0;
  }

  Status solve(std::vector<double>& y, double& value, std::size_t max_pivots) {
    budget_ = max_pivots;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    if (m_ > 0 && at(r, n_ + 1) < -kPivotEps) {
      pivot(r, n_);
      Status s = run(1);
      if (s == Status::kFailed) return s;
      if (s != Status::kOptimal || at(m_ + 1, n_ + 1) < -1e-9) return Status::kInfeasible;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s_col = 0;
        for (std::size_t j = 1; j <= n_; ++j)
          if (at(i, j) < at(i, s_col) || (at(i, j) == at(i, s_col) && nonbasis_[j] < nonbasis_[s_col])) s_col = j;
        pivot(i, s_col);
      }
    }
    Status s = run(2);
    if (s != Status::kOptimal) return s;
    y.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < static_cast<long>(n_)) y[basis_[i]] = at(i, n_ + 1);
    value = at(m_, n_ + 1);
    return Status::kOptimal;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return d_[i * width_ + j]; }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / at(r, s);
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = at(i, s) * inv;
      if (f == 0.0) continue;
      double* row = &d_[i * width_];
      const double* prow = &d_[r * width_];
      for (std::size_t j = 0; j < width_; ++j)
        if (j != s) row[j] -= prow[j] * f;
    }
    for (std::size_t j = 0; j < width_; ++j)
      if (j != s) at(r, j) *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i)
      if (i != r) at(i, s) *= -inv;
    at(r, s) = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  Status run(int phase) {
    const std::size_t obj_row = phase == 1 ? m_ + 1 : m_;
    std::size_t pivots = 0;
    while (true) {
      if (budget_ == 0) return Status::kFailed;
      const bool bland = pivots >= kBlandAfter;
      long s = -1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        const double v = at(obj_row, j);
        if (bland) {
          if (v < -kPivotEps && (s < 0 || nonbasis_[j] < nonbasis_[s])) s = static_cast<long>(j);
        } else if (s < 0 || v < at(obj_row, s) || (v == at(obj_row, s) && nonbasis_[j] < nonbasis_[s])) {
          s = static_cast<long>(j);
        }
      }
      if (s < 0 || at(obj_row, s) > -kPivotEps) return Status::kOptimal;
      long r = -1;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, s) < kPivotEps) continue;
        if (r < 0) {
          r = static_cast<long>(i);
          continue;
        }
        const double lhs = at(i, n_ + 1) / at(i, s);
        const double rhs = at(r, n_ + 1) / at(r, s);
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = static_cast<long>(i);
      }
      if (r < 0) return Status::kUnbounded;
      pivot(static_cast<std::size_t>(r), static_cast<std::size_t>(s));
      ++pivots;
      --budget_;
    }
  }

  std::size_t m_, n_, width_;
  std::vector<double> d_;
  std::vector<long> basis_;
  std::vector<long> nonbasis_;
  std::size_t budget_ = 0;
};

}  // namespace

Result minimize(const Matrix& a, std::span<const double> b, std::span<const double> c, std::size_t max_pivots) {
  // Free variables x = y+ - y-.
  const std::size_t n = a.cols;
  Matrix split(a.rows, 2 * n);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      split(i, j) = a(i, j);
      split(i, n + j) = -a(i, j);
    }
  std::vector<double> obj(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    obj[j] = -c[j];
    obj[n + j] = c[j];
  }
  Tableau t(split, b, obj);
  Result res;
  std::vector<double> y;
  double value = 0.0;
  res.status = t.solve(y, value, max_pivots);
  if (res.status != Status::kOptimal) return res;
  res.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) res.x[j] = y[j] - y[n + j];
  res.objective = -value;
  return res;
}

Result min_violation(const Matrix& a, std::span<const double> b, std::span<const double> weights, double s_floor) {
  const std::size_t n = a.cols;
  Matrix ext(a.rows + 1, n + 1);
  std::vector<double> rhs(a.rows + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = a(i, j);
    ext(i, n) = -weights[i];
    rhs[i] = b[i];
  }
  ext(a.rows, n) = -1.0;
  rhs[a.rows] = s_floor;
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  return minimize(ext, rhs, c);
}

}  // namespace lipcore::lp

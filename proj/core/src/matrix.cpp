// Copyright 2026 The wlra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wlra/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wlra/error.hpp"

namespace wlra {
namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_shape(const Matrix& a, std::size_t rows, std::size_t cols,
                        const char* what) {
  if (a.rows() != rows || a.cols() != cols) {
    fail(ErrorKind::kDimension, std::string(what) + ": expected " +
                                    shape(rows, cols) + ", got " +
                                    shape(a.rows(), a.cols()));
  }
}

bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : Matrix(rows, cols, std::vector<double>(rows * cols, fill)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    fail(ErrorKind::kDimension, "matrix dimensions must be positive, got " +
                                    shape(rows, cols));
  }
  if (data_.size() != rows * cols) {
    fail(ErrorKind::kDimension, "matrix " + shape(rows, cols) + " needs " +
                                    std::to_string(rows * cols) +
                                    " entries, got " +
                                    std::to_string(data_.size()));
  }
  for (double x : data_) {
    if (!std::isfinite(x)) fail(ErrorKind::kParameter, "matrix entries must be finite");
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) fail(ErrorKind::kDimension, "ragged row in matrix literal");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::identity(std::size_t n) {
  return generate(n, n, [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.0; });
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Vector Matrix::column_values(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transposed() const {
  return generate(cols_, rows_, [this](std::size_t i, std::size_t j) { return (*this)(j, i); });
}

Matrix Matrix::scaled(double factor) const {
  std::vector<double> data(data_);
  for (double& x : data) x *= factor;
  return Matrix(rows_, cols_, std::move(data));
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(b, a.rows(), a.cols(), "matrix difference");
  std::vector<double> data(a.size());
  for (std::size_t k = 0; k < data.size(); ++k) data[k] = a.data()[k] - b.data()[k];
  return Matrix(a.rows(), a.cols(), std::move(data));
}

// --- WeightMatrix -----------------------------------------------------------

WeightMatrix::WeightMatrix(Matrix values) : values_(std::move(values)) {
  double best = -1.0;
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    for (std::size_t j = 0; j < values_.cols(); ++j) {
      const double w = values_(i, j);
      if (w < 0.0) {
        fail(ErrorKind::kParameter, "weights must be nonnegative, entry (" +
                                        std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ") is negative");
      }
      binary_ = binary_ && (w == 0.0 || w == 1.0);
      positive_ = positive_ && w > 0.0;
      zero_ = zero_ && w == 0.0;
      if (w > best) {
        best = w;
        pivot_row_ = i;
        pivot_col_ = j;
      }
    }
  }
  // Rank <= 1 iff every 2x2 minor through the largest entry vanishes.
  rank_one_ = true;
  if (!zero_) {
    const double wpq = values_(pivot_row_, pivot_col_);
    for (std::size_t i = 0; i < values_.rows() && rank_one_; ++i) {
      for (std::size_t j = 0; j < values_.cols(); ++j) {
        const double lhs = values_(i, j) * wpq;
        const double rhs = values_(i, pivot_col_) * values_(pivot_row_, j);
        if (!close_relative(lhs, rhs, 1e-12)) {
          rank_one_ = false;
          break;
        }
      }
    }
  }
}

WeightMatrix WeightMatrix::ones(std::size_t rows, std::size_t cols) {
  return WeightMatrix(Matrix(rows, cols, 1.0));
}

std::optional<std::pair<Vector, Vector>> WeightMatrix::rank_one_factors() const {
  if (!rank_one_) return std::nullopt;
  Vector s(rows(), 0.0);
  Vector t(cols(), 0.0);
  if (zero_) return std::make_pair(s, t);
  const double wpq = values_(pivot_row_, pivot_col_);
  for (std::size_t i = 0; i < rows(); ++i) s[i] = values_(i, pivot_col_);
  for (std::size_t j = 0; j < cols(); ++j) t[j] = values_(pivot_row_, j) / wpq;
  return std::make_pair(std::move(s), std::move(t));
}

WeightMatrix WeightMatrix::transposed() const { return WeightMatrix(values_.transposed()); }

WeightMatrix WeightMatrix::scaled(double factor) const {
  return WeightMatrix(values_.scaled(factor));
}

// --- MaskedMatrix -----------------------------------------------------------

MaskedMatrix::MaskedMatrix(Matrix values, std::vector<bool> known)
    : known_(std::move(known)) {
  if (known_.size() != values.size()) {
    fail(ErrorKind::kDimension, "mask size does not match matrix " +
                                    shape(values.rows(), values.cols()));
  }
  values_ = Matrix::generate(values.rows(), values.cols(), [&](std::size_t i, std::size_t j) {
    return known_[i * values.cols() + j] ? values(i, j) : 0.0;
  });
}

MaskedMatrix::MaskedMatrix(Matrix values)
    : values_(std::move(values)), known_(values_.size(), true) {}

std::size_t MaskedMatrix::known_count() const noexcept {
  return static_cast<std::size_t>(std::count(known_.begin(), known_.end(), true));
}

WeightMatrix MaskedMatrix::weights() const {
  return WeightMatrix(Matrix::generate(rows(), cols(), [this](std::size_t i, std::size_t j) {
    return known(i, j) ? 1.0 : 0.0;
  }));
}

// --- FactorPair -------------------------------------------------------------

FactorPair::FactorPair(Matrix u, Matrix v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.cols() != v_.cols()) {
    fail(ErrorKind::kDimension, "factor ranks differ: U has " + std::to_string(u_.cols()) +
                                    " columns, V has " + std::to_string(v_.cols()));
  }
}

FactorPair FactorPair::rank_one(std::span<const double> u, std::span<const double> v) {
  return FactorPair(Matrix::column(u), Matrix::column(v));
}

Matrix FactorPair::product() const {
  return Matrix::generate(u_.rows(), v_.rows(), [this](std::size_t i, std::size_t j) {
    double x = 0.0;
    for (std::size_t k = 0; k < rank(); ++k) x += u_(i, k) * v_(j, k);
    return x;
  });
}

// --- objectives -------------------------------------------------------------

double weighted_sq_norm(const Matrix& a, const WeightMatrix& w) {
  require_same_shape(a, w.rows(), w.cols(), "weighted norm");
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = a.data()[k];
    total += w.values().data()[k] * x * x;
  }
  return total;
}

double wlra_objective(const Matrix& m, const WeightMatrix& w, const FactorPair& f) {
  require_same_shape(m, w.rows(), w.cols(), "objective weights");
  if (f.u().rows() != m.rows() || f.v().rows() != m.cols()) {
    fail(ErrorKind::kDimension, "factors " + shape(f.u().rows(), f.rank()) + " and " +
                                    shape(f.v().rows(), f.rank()) +
                                    " do not match data " + shape(m.rows(), m.cols()));
  }
  const std::size_t r = f.rank();
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double wij = w(i, j);
      if (wij == 0.0) continue;
      double x = 0.0;
      for (std::size_t k = 0; k < r; ++k) x += f.u()(i, k) * f.v()(j, k);
      const double e = m(i, j) - x;
      total += wij * e * e;
    }
  }
  return total;
}

double wlra_objective(const Matrix& m, const WeightMatrix& w, std::span<const double> u,
                      std::span<const double> v) {
  require_same_shape(m, w.rows(), w.cols(), "objective weights");
  if (u.size() != m.rows() || v.size() != m.cols()) {
    fail(ErrorKind::kDimension, "factor lengths " + std::to_string(u.size()) + "/" +
                                    std::to_string(v.size()) + " do not match data " +
                                    shape(m.rows(), m.cols()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double wij = w(i, j);
      if (wij == 0.0) continue;
      const double e = m(i, j) - u[i] * v[j];
      total += wij * e * e;
    }
  }
  return total;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double e : x) s += e * e;
  return std::sqrt(s);
}

// --- rank-one completion ----------------------------------------------------

CompletionResult rank_one_completion_check(const MaskedMatrix& m) {
  if (m.known_count() == 0) {
    fail(ErrorKind::kParameter, "rank-one completion needs at least one known entry");
  }
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const Matrix& x = m.values();
  auto known_nonzero = [&](std::size_t i, std::size_t j) {
    return m.known(i, j) && x(i, j) != 0.0;
  };

  std::vector<std::size_t> nnz(cols, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (known_nonzero(i, j)) ++nnz[j];

  Vector u(rows, 0.0);
  Vector v(cols, 0.0);
  std::vector<bool> row_set(rows, false);
  std::vector<bool> col_set(cols, false);

  for (;;) {
    std::size_t pivot = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (col_set[j] || nnz[j] == 0) continue;
      if (pivot == cols || nnz[j] > nnz[pivot]) pivot = j;
    }
    if (pivot == cols) break;

    // Breadth-first propagation over the bipartite graph of known nonzeros.
    std::vector<std::size_t> col_queue{pivot};
    v[pivot] = 1.0;
    col_set[pivot] = true;
    while (!col_queue.empty()) {
      std::vector<std::size_t> row_queue;
      for (std::size_t j : col_queue) {
        for (std::size_t i = 0; i < rows; ++i) {
          if (!row_set[i] && known_nonzero(i, j)) {
            u[i] = x(i, j) / v[j];
            row_set[i] = true;
            row_queue.push_back(i);
          }
        }
      }
      col_queue.clear();
      for (std::size_t i : row_queue) {
        for (std::size_t j = 0; j < cols; ++j) {
          if (!col_set[j] && known_nonzero(i, j)) {
            v[j] = x(i, j) / u[i];
            col_set[j] = true;
            col_queue.push_back(j);
          }
        }
      }
    }
  }

  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!m.known(i, j)) continue;
      const double target = x(i, j);
      const double got = u[i] * v[j];
      const bool ok = target == 0.0 ? got == 0.0 : close_relative(got, target, 1e-12);
      if (!ok) return CompletionResult{false, std::nullopt};
    }
  }
  return CompletionResult{true, FactorPair::rank_one(u, v)};
}

// --- unweighted rank one ----------------------------------------------------

namespace {

// Cyclic Jacobi on a symmetric matrix stored densely; returns the eigenvector
// of the largest eigenvalue.
Vector leading_eigenvector(std::vector<double> a, std::size_t n) {
  std::vector<double> q(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;
  auto at = [n](std::vector<double>& mat, std::size_t i, std::size_t j) -> double& {
    return mat[i * n + j];
  };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += at(a, i, i) * at(a, i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += at(a, i, j) * at(a, i, j);
    }
    if (off <= 1e-32 * diag || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apr = at(a, p, r);
        if (apr == 0.0) continue;
        const double theta = (at(a, r, r) - at(a, p, p)) / (2.0 * apr);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(a, k, p);
          const double akr = at(a, k, r);
          at(a, k, p) = c * akp - s * akr;
          at(a, k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(a, p, k);
          const double ark = at(a, r, k);
          at(a, p, k) = c * apk - s * ark;
          at(a, r, k) = s * apk + c * ark;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double qkp = at(q, k, p);
          const double qkr = at(q, k, r);
          at(q, k, p) = c * qkp - s * qkr;
          at(q, k, r) = s * qkp + c * qkr;
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (at(a, i, i) > at(a, best, best)) best = i;
  Vector e(n);
  for (std::size_t k = 0; k < n; ++k) e[k] = at(q, k, best);
  return e;
}

}  // namespace

FactorPair best_rank_one_unweighted(const Matrix& m) {
  const bool use_cols = m.cols() <= m.rows();
  const std::size_t n = use_cols ? m.cols() : m.rows();
  std::vector<double> gram(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      if (use_cols) {
        for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, a) * m(i, b);
      } else {
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(a, j) * m(b, j);
      }
      gram[a * n + b] = gram[b * n + a] = s;
    }
  }
  const Vector e = leading_eigenvector(std::move(gram), n);
  if (use_cols) {
    Vector u(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) u[i] += m(i, j) * e[j];
    return FactorPair::rank_one(u, e);
  }
  Vector v(m.cols(), 0.0);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v[j] += m(i, j) * e[i];
  return FactorPair::rank_one(e, v);
}

}  // namespace wlra

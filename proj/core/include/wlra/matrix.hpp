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

// Dense real matrices, weight and masked matrices, rank-r factor pairs and
// the weighted Frobenius objective shared by every other module.

#ifndef WLRA_MATRIX_HPP_
#define WLRA_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wlra {

using Vector = std::vector<double>;

// Row-major dense matrix with finite entries. Immutable once built; use
// generate() or the vector constructor to produce new values.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);
  static Matrix column(std::span<const double> values);

  template <typename F>
  static Matrix generate(std::size_t rows, std::size_t cols, F&& entry) {
    std::vector<double> data;
    data.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) data.push_back(entry(i, j));
    return Matrix(rows, cols, std::move(data));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }
  Vector column_values(std::size_t j) const;

  Matrix transposed() const;
  Matrix scaled(double factor) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator-(const Matrix& a, const Matrix& b);

// Nonnegative weights with structural flags computed once at construction.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(Matrix values);

  static WeightMatrix ones(std::size_t rows, std::size_t cols);

  const Matrix& values() const noexcept { return values_; }
  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }

  bool is_binary() const noexcept { return binary_; }
  bool is_positive() const noexcept { return positive_; }
  bool is_rank_one() const noexcept { return rank_one_; }
  bool is_zero() const noexcept { return zero_; }

  // Nonnegative (s, t) with W = s t^T when is_rank_one().
  std::optional<std::pair<Vector, Vector>> rank_one_factors() const;

  WeightMatrix transposed() const;
  WeightMatrix scaled(double factor) const;

  friend bool operator==(const WeightMatrix& a, const WeightMatrix& b) {
    return a.values_ == b.values_;
  }

 private:
  Matrix values_;
  bool binary_ = true;
  bool positive_ = true;
  bool rank_one_ = true;
  bool zero_ = true;
  std::size_t pivot_row_ = 0;
  std::size_t pivot_col_ = 0;
};

// Matrix with missing entries. Unknown values are stored as 0 so that two
// masked matrices compare equal iff their known data agree.
class MaskedMatrix {
 public:
  MaskedMatrix() = default;
  MaskedMatrix(Matrix values, std::vector<bool> known);
  explicit MaskedMatrix(Matrix values);  // fully known

  const Matrix& values() const noexcept { return values_; }
  std::size_t rows() const noexcept { return values_.rows(); }
  std::size_t cols() const noexcept { return values_.cols(); }
  bool known(std::size_t i, std::size_t j) const noexcept {
    return known_[i * values_.cols() + j];
  }
  std::size_t known_count() const noexcept;

  // Binary weights: 1 on known entries, 0 elsewhere.
  WeightMatrix weights() const;

  friend bool operator==(const MaskedMatrix&, const MaskedMatrix&) = default;

 private:
  Matrix values_;
  std::vector<bool> known_;
};

// U (m x r) and V (n x r); the approximation is U V^T.
class FactorPair {
 public:
  FactorPair() = default;
  FactorPair(Matrix u, Matrix v);

  static FactorPair rank_one(std::span<const double> u, std::span<const double> v);

  const Matrix& u() const noexcept { return u_; }
  const Matrix& v() const noexcept { return v_; }
  std::size_t rank() const noexcept { return u_.cols(); }

  // Column k of U / V as vectors (the rank-one case uses k = 0).
  Vector u_column(std::size_t k = 0) const { return u_.column_values(k); }
  Vector v_column(std::size_t k = 0) const { return v_.column_values(k); }

  Matrix product() const;

 private:
  Matrix u_;
  Matrix v_;
};

// sum_ij W_ij A_ij^2.
double weighted_sq_norm(const Matrix& a, const WeightMatrix& w);

// ||M - U V^T||_W^2, evaluated without materialising the product.
double wlra_objective(const Matrix& m, const WeightMatrix& w, const FactorPair& f);
double wlra_objective(const Matrix& m, const WeightMatrix& w,
                      std::span<const double> u, std::span<const double> v);

struct CompletionResult {
  bool feasible = false;
  std::optional<FactorPair> witness;
};

// Decides whether a rank <= 1 matrix agrees with every known entry. Each
// connected block of known nonzeros is seeded from the column with the most
// known nonzeros (lowest index on ties): u is that column, and multiples are
// propagated through shared known rows.
CompletionResult rank_one_completion_check(const MaskedMatrix& m);

// Best unweighted rank-one approximation (leading singular pair), computed by
// a cyclic Jacobi eigensolver on the smaller Gram matrix.
FactorPair best_rank_one_unweighted(const Matrix& m);

double norm2(std::span<const double> x);

}  // namespace wlra

#endif  // WLRA_MATRIX_HPP_

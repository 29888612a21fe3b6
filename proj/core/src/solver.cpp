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

#include "wlra/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <thread>

#include "wlra/error.hpp"

namespace wlra {
namespace {

// Relative change of the W-supported product below which it counts as settled.
constexpr double kStableProduct = 1e-2;
// Largest multiplier tried by the log-scale momentum step.
constexpr double kMaxStep = 1024.0;
// Ridge added to singular normal equations in the rank-r update.
constexpr double kRidge = 1e-12;

void check_shapes(const Matrix& m, const WeightMatrix& w) {
  if (m.rows() != w.rows() || m.cols() != w.cols()) {
    fail(ErrorKind::kDimension, "data is " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + " but weights are " +
                                    std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
  }
  if (w.is_zero()) fail(ErrorKind::kDegenerate, "weight matrix is identically zero");
}

// v_j = sum_i W_ij M_ij u_i / sum_i W_ij u_i^2, or 0 for an empty denominator.
void update_v(const Matrix& m, const WeightMatrix& w, std::span<const double> u, Vector& v) {
  const std::size_t cols = m.cols();
  Vector den(cols, 0.0);
  v.assign(cols, 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double ui = u[i];
    if (ui == 0.0) continue;
    const auto mi = m.row(i);
    const auto wi = w.values().row(i);
    for (std::size_t j = 0; j < cols; ++j) {
      v[j] += wi[j] * mi[j] * ui;
      den[j] += wi[j] * ui * ui;
    }
  }
  for (std::size_t j = 0; j < cols; ++j) v[j] = den[j] > 0.0 ? v[j] / den[j] : 0.0;
}

void update_u(const Matrix& m, const WeightMatrix& w, std::span<const double> v, Vector& u) {
  const std::size_t cols = m.cols();
  u.assign(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto mi = m.row(i);
    const auto wi = w.values().row(i);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      num += wi[j] * mi[j] * v[j];
      den += wi[j] * v[j] * v[j];
    }
    u[i] = den > 0.0 ? num / den : 0.0;
  }
}

void balance(Vector& u, Vector& v) {
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0) return;
  const double s = std::sqrt(nv / nu);
  for (double& x : u) x *= s;
  for (double& x : v) x /= s;
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double a) { return std::isfinite(a); });
}

// Tracks the product on W-positive entries between sweeps.
class ProductMonitor {
 public:
  explicit ProductMonitor(const WeightMatrix& w) : w_(w) {}

  // Returns true when the restricted product moved by less than
  // kStableProduct relative to its previous value.
  bool update(const Matrix& product) {
    current_.clear();
    for (std::size_t i = 0; i < product.rows(); ++i)
      for (std::size_t j = 0; j < product.cols(); ++j)
        if (w_(i, j) > 0.0) current_.push_back(product(i, j));
    bool stable = false;
    if (previous_.size() == current_.size()) {
      double diff = 0.0;
      double base = 0.0;
      for (std::size_t k = 0; k < current_.size(); ++k) {
        diff += (current_[k] - previous_[k]) * (current_[k] - previous_[k]);
        base += previous_[k] * previous_[k];
      }
      stable = std::sqrt(diff) <= kStableProduct * std::sqrt(base);
    }
    previous_.swap(current_);
    return stable;
  }

 private:
  const WeightMatrix& w_;
  Vector previous_;
  Vector current_;
};

double frobenius(const Matrix& a) { return norm2(a.data()); }

// Shared bookkeeping for one run.
struct RunState {
  const SolveConfig& cfg;
  SolveResult result;

  void record(double f) {
    if (cfg.record_trajectory) result.trajectory.push_back(f);
  }
};

// Sweep-end checks; returns true when the run should stop.
bool finish_sweep(RunState& st, double f0, double f, double rho, bool product_stable) {
  if (rho > st.cfg.divergence_threshold && f < f0 && product_stable) {
    st.result.diverged = true;
    return true;
  }
  if (f0 - f <= st.cfg.rel_tol * f0) {
    st.result.converged = true;
    return true;
  }
  return false;
}

// Cholesky solve of the r x r system a x = b in place; false if a is not
// numerically positive definite.
bool cholesky_solve(std::vector<double> a, std::span<double> b, std::size_t r) {
  double max_diag = 0.0;
  for (std::size_t k = 0; k < r; ++k) max_diag = std::max(max_diag, a[k * r + k]);
  for (std::size_t k = 0; k < r; ++k) {
    double p = a[k * r + k];
    for (std::size_t q = 0; q < k; ++q) p -= a[k * r + q] * a[k * r + q];
    if (!(p > 1e-14 * max_diag) || !(p > 0.0)) return false;
    const double l = std::sqrt(p);
    a[k * r + k] = l;
    for (std::size_t i = k + 1; i < r; ++i) {
      double x = a[i * r + k];
      for (std::size_t q = 0; q < k; ++q) x -= a[i * r + q] * a[k * r + q];
      a[i * r + k] = x / l;
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    double x = b[i];
    for (std::size_t q = 0; q < i; ++q) x -= a[i * r + q] * b[q];
    b[i] = x / a[i * r + i];
  }
  for (std::size_t i = r; i-- > 0;) {
    double x = b[i];
    for (std::size_t q = i + 1; q < r; ++q) x -= a[q * r + i] * b[q];
    b[i] = x / a[i * r + i];
  }
  return true;
}

// Returns false when the system stays singular after the ridge; `b` is then
// unusable and the caller keeps its previous row.
bool solve_normal(std::vector<double> a, std::span<double> b, std::size_t r) {
  const std::vector<double> rhs(b.begin(), b.end());
  if (cholesky_solve(a, b, r)) return true;
  double max_diag = 0.0;
  for (std::size_t k = 0; k < r; ++k) max_diag = std::max(max_diag, a[k * r + k]);
  const double ridge = kRidge * std::max(max_diag, 1.0);
  for (std::size_t k = 0; k < r; ++k) a[k * r + k] += ridge;
  std::copy(rhs.begin(), rhs.end(), b.begin());
  return cholesky_solve(a, b, r);
}

// Weighted squared residual of column j of m against in * row.
double column_residual(const Matrix& m, const WeightMatrix& w, const Matrix& in,
                       std::size_t j, std::span<const double> row) {
  double total = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double wij = w(i, j);
    if (wij == 0.0) continue;
    double x = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k) x += in(i, k) * row[k];
    total += wij * (m(i, j) - x) * (m(i, j) - x);
  }
  return total;
}

// Least-squares update of every row of `out` (n x r) given `in` (m x r),
// treating m (m x n) and w column by column. A row whose new value would not
// lower its column residual keeps its previous value, so rounding in
// ill-conditioned systems never raises the objective.
void update_factor(const Matrix& m, const WeightMatrix& w, const Matrix& in, Matrix& out) {
  const std::size_t r = in.cols();
  const std::size_t n = m.cols();
  std::vector<double> gram(n * r * r, 0.0);
  std::vector<double> rhs(n * r, 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto ui = in.row(i);
    const auto mi = m.row(i);
    const auto wi = w.values().row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (wi[j] == 0.0) continue;
      double* g = &gram[j * r * r];
      for (std::size_t p = 0; p < r; ++p) {
        rhs[j * r + p] += wi[j] * mi[j] * ui[p];
        for (std::size_t q = 0; q < r; ++q) g[p * r + q] += wi[j] * ui[p] * ui[q];
      }
    }
  }
  const bool has_previous = out.rows() == n && out.cols() == r;
  std::vector<double> values(n * r, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::span<double> x(&values[j * r], r);
    std::copy(&rhs[j * r], &rhs[j * r] + r, x.begin());
    const bool solved =
        solve_normal(std::vector<double>(&gram[j * r * r], &gram[j * r * r] + r * r), x, r);
    if (!has_previous) {
      if (!solved) std::fill(x.begin(), x.end(), 0.0);
      continue;
    }
    const auto previous = out.row(j);
    if (!solved || !(column_residual(m, w, in, j, x) <= column_residual(m, w, in, j, previous))) {
      std::copy(previous.begin(), previous.end(), x.begin());
    }
  }
  out = Matrix(n, r, std::move(values));
}

void balance_columns(Matrix& u, Matrix& v) {
  const std::size_t r = u.cols();
  std::vector<double> su(r), sv(r);
  for (std::size_t k = 0; k < r; ++k) {
    const double nu = norm2(u.column_values(k));
    const double nv = norm2(v.column_values(k));
    const bool ok = nu > 0.0 && nv > 0.0;
    su[k] = ok ? std::sqrt(nv / nu) : 1.0;
    sv[k] = ok ? 1.0 / su[k] : 1.0;
  }
  u = Matrix::generate(u.rows(), r, [&](std::size_t i, std::size_t k) { return u(i, k) * su[k]; });
  v = Matrix::generate(v.rows(), r, [&](std::size_t j, std::size_t k) { return v(j, k) * sv[k]; });
}

Matrix abs_matrix(const Matrix& a) {
  return Matrix::generate(a.rows(), a.cols(),
                          [&](std::size_t i, std::size_t j) { return std::abs(a(i, j)); });
}

template <typename Solve>
MultiStartResult run_starts(const SolveConfig& cfg, Solve solve) {
  cfg.validate();
  std::vector<SolveResult> runs(cfg.starts);
  std::size_t threads = cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads;
  threads = std::clamp<std::size_t>(threads, 1, cfg.starts);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = cfg.starts;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k = next++; k < cfg.starts; k = next++) {
      try {
        runs[k] = solve(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (k < error_index) {
          error_index = k;
          error = std::current_exception();
        }
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  MultiStartResult out;
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].objective < runs[best].objective) best = k;
  }
  out.best = runs[best];
  out.runs = std::move(runs);
  return out;
}

}  // namespace

void SolveConfig::validate() const {
  if (max_sweeps == 0) fail(ErrorKind::kParameter, "max_sweeps must be positive");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    fail(ErrorKind::kParameter, "rel_tol must be positive");
  }
  if (starts == 0) fail(ErrorKind::kParameter, "starts must be at least 1");
  if (!(divergence_threshold > 0.0)) {
    fail(ErrorKind::kParameter, "divergence_threshold must be positive");
  }
}

Vector closed_form_v(const Matrix& m, const WeightMatrix& w, std::span<const double> u) {
  check_shapes(m, w);
  if (u.size() != m.rows()) {
    fail(ErrorKind::kDimension, "u has " + std::to_string(u.size()) + " entries, expected " +
                                    std::to_string(m.rows()));
  }
  if (w.is_positive() && std::all_of(u.begin(), u.end(), [](double x) { return x == 0.0; })) {
    fail(ErrorKind::kDegenerate, "u is zero: the objective does not depend on v");
  }
  Vector v;
  update_v(m, w, u, v);
  return v;
}

Vector closed_form_u(const Matrix& m, const WeightMatrix& w, std::span<const double> v) {
  check_shapes(m, w);
  if (v.size() != m.cols()) {
    fail(ErrorKind::kDimension, "v has " + std::to_string(v.size()) + " entries, expected " +
                                    std::to_string(m.cols()));
  }
  if (w.is_positive() && std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    fail(ErrorKind::kDegenerate, "v is zero: the objective does not depend on u");
  }
  Vector u;
  update_u(m, w, v, u);
  return u;
}

SolveResult solve_rank_one_from(const Matrix& m, const WeightMatrix& w,
                                std::span<const double> u0, std::span<const double> v0,
                                const SolveConfig& cfg, std::size_t start_index,
                                const SweepObserver& observer) {
  cfg.validate();
  check_shapes(m, w);
  if (u0.size() != m.rows() || v0.size() != m.cols()) {
    fail(ErrorKind::kDimension, "start factors do not match the data shape");
  }
  RunState st{cfg, {}};
  st.result.start_index = start_index;
  Vector u(u0.begin(), u0.end());
  Vector v(v0.begin(), v0.end());
  double f = wlra_objective(m, w, u, v);
  st.record(f);

  const double scale = std::sqrt(weighted_sq_norm(m, w));
  ProductMonitor monitor(w);
  Vector prev_hat;
  Vector hat(m.rows());
  Vector uc(m.rows());
  Vector vc;
  std::size_t sweep = 0;
  while (sweep < cfg.max_sweeps) {
    ++sweep;
    const double f0 = f;
    update_v(m, w, u, v);
    f = wlra_objective(m, w, u, v);
    st.record(f);
    update_u(m, w, v, u);
    f = wlra_objective(m, w, u, v);
    st.record(f);
    balance(u, v);

    const double nu = norm2(u);
    if (cfg.extrapolate && nu > 0.0) {
      for (std::size_t i = 0; i < u.size(); ++i) hat[i] = u[i] / nu;
      if (!prev_hat.empty()) {
        double best_f = f;
        Vector best_u, best_v;
        for (double a = 1.0; a <= kMaxStep; a *= 2.0) {
          for (std::size_t i = 0; i < hat.size(); ++i) {
            const bool both = hat[i] != 0.0 && prev_hat[i] != 0.0;
            const double g = both ? std::log(std::abs(hat[i])) - std::log(std::abs(prev_hat[i]))
                                  : 0.0;
            uc[i] = hat[i] * std::exp(a * g);
          }
          if (!all_finite(uc)) break;
          update_v(m, w, uc, vc);
          if (!all_finite(vc)) break;
          const double fc = wlra_objective(m, w, uc, vc);
          if (!(fc < best_f)) break;
          best_f = fc;
          best_u = uc;
          best_v = vc;
        }
        if (!best_u.empty()) {
          u = std::move(best_u);
          v = std::move(best_v);
          balance(u, v);
          f = best_f;
          st.record(f);
        }
      }
      prev_hat = hat;
    }

    if (cfg.nonneg) {
      Vector ua(u), va(v);
      for (double& x : ua) x = std::abs(x);
      for (double& x : va) x = std::abs(x);
      const double fa = wlra_objective(m, w, ua, va);
      if (fa <= f) {
        u = std::move(ua);
        v = std::move(va);
        f = fa;
        st.record(f);
      }
    }
    if (observer) observer(sweep, f);

    const double rho = norm2(u) * norm2(v) / (1.0 + scale);
    const bool stable = monitor.update(FactorPair::rank_one(u, v).product());
    if (finish_sweep(st, f0, f, rho, stable)) break;
  }
  st.result.sweeps_used = sweep;
  st.result.factors = FactorPair::rank_one(u, v);
  st.result.objective = wlra_objective(m, w, st.result.factors);
  return std::move(st.result);
}

Matrix start_factor(std::size_t rows, std::size_t rank, std::uint64_t seed, std::size_t start) {
  if (rows == 0 || rank == 0) fail(ErrorKind::kParameter, "start factor needs positive size");
  if (start == 0) {
    return Matrix::generate(rows, rank, [&](std::size_t i, std::size_t k) {
      return std::pow(static_cast<double>(i + 1) / static_cast<double>(rows),
                      static_cast<double>(k));
    });
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(start >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(rows * rank);
  for (double& x : values) x = dist(rng);
  return Matrix(rows, rank, std::move(values));
}

MultiStartResult solve_rank_one(const Matrix& m, const WeightMatrix& w, const SolveConfig& cfg) {
  check_shapes(m, w);
  return run_starts(cfg, [&](std::size_t k) {
    Vector u = start_factor(m.rows(), 1, cfg.seed, k).column_values(0);
    Vector v;
    update_v(m, w, u, v);
    balance(u, v);
    return solve_rank_one_from(m, w, u, v, cfg, k);
  });
}

SolveResult solve_rank_r_from(const Matrix& m, const WeightMatrix& w, const FactorPair& start,
                              const SolveConfig& cfg, std::size_t start_index) {
  cfg.validate();
  check_shapes(m, w);
  if (start.u().rows() != m.rows() || start.v().rows() != m.cols()) {
    fail(ErrorKind::kDimension, "start factors do not match the data shape");
  }
  RunState st{cfg, {}};
  st.result.start_index = start_index;
  const WeightMatrix wt = w.transposed();
  const Matrix mt = m.transposed();
  Matrix u = start.u();
  Matrix v = start.v();
  double f = wlra_objective(m, w, FactorPair(u, v));
  st.record(f);

  const double scale = std::sqrt(weighted_sq_norm(m, w));
  ProductMonitor monitor(w);
  std::size_t sweep = 0;
  while (sweep < cfg.max_sweeps) {
    ++sweep;
    const double f0 = f;
    update_factor(m, w, u, v);
    f = wlra_objective(m, w, FactorPair(u, v));
    st.record(f);
    update_factor(mt, wt, v, u);
    f = wlra_objective(m, w, FactorPair(u, v));
    st.record(f);
    balance_columns(u, v);

    if (cfg.nonneg) {
      FactorPair abs_pair(abs_matrix(u), abs_matrix(v));
      const double fa = wlra_objective(m, w, abs_pair);
      if (fa <= f) {
        u = abs_pair.u();
        v = abs_pair.v();
        f = fa;
        st.record(f);
      }
    }

    const Matrix product = FactorPair(u, v).product();
    const double rho = frobenius(product) / (1.0 + scale);
    const bool stable = monitor.update(product);
    if (finish_sweep(st, f0, f, rho, stable)) break;
  }
  st.result.sweeps_used = sweep;
  st.result.factors = FactorPair(std::move(u), std::move(v));
  st.result.objective = wlra_objective(m, w, st.result.factors);
  return std::move(st.result);
}

MultiStartResult solve_rank_r(const Matrix& m, const WeightMatrix& w, std::size_t r,
                              const SolveConfig& cfg) {
  check_shapes(m, w);
  if (r == 0 || r > std::min(m.rows(), m.cols())) {
    fail(ErrorKind::kParameter, "rank " + std::to_string(r) + " outside [1, " +
                                    std::to_string(std::min(m.rows(), m.cols())) + "]");
  }
  return run_starts(cfg, [&](std::size_t k) {
    Matrix u = start_factor(m.rows(), r, cfg.seed, k);
    Matrix v;
    update_factor(m, w, u, v);
    balance_columns(u, v);
    return solve_rank_r_from(m, w, FactorPair(std::move(u), std::move(v)), cfg, k);
  });
}

std::vector<LandscapePoint> landscape_grid(const Matrix& m, const WeightMatrix& w,
                                           std::size_t grid_n) {
  check_shapes(m, w);
  if (m.rows() != 3) {
    fail(ErrorKind::kDimension,
         "landscape needs exactly 3 rows, got " + std::to_string(m.rows()));
  }
  if (grid_n < 2) fail(ErrorKind::kParameter, "grid size must be at least 2");
  std::vector<LandscapePoint> points;
  points.reserve(grid_n * grid_n);
  const double step = 1.0 / static_cast<double>(grid_n - 1);
  Vector u(3);
  Vector v;
  for (std::size_t a = 0; a < grid_n; ++a) {
    for (std::size_t b = 0; b < grid_n; ++b) {
      const double x = static_cast<double>(a) * step;
      const double y = static_cast<double>(b) * step;
      const double r2 = x * x + y * y;
      if (r2 > 1.0 + 1e-12) continue;
      u = {x, y, std::sqrt(std::max(0.0, 1.0 - r2))};
      update_v(m, w, u, v);
      points.push_back({a, b, x, y, wlra_objective(m, w, u, v)});
    }
  }
  return points;
}

std::vector<LandscapePoint> grid_local_minima(const std::vector<LandscapePoint>& points,
                                              std::size_t grid_n) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> grid(grid_n * grid_n, nan);
  for (const auto& p : points) {
    if (p.ix >= grid_n || p.iy >= grid_n) fail(ErrorKind::kParameter, "point outside grid");
    grid[p.ix * grid_n + p.iy] = p.objective;
  }
  std::vector<LandscapePoint> minima;
  for (const auto& p : points) {
    const std::size_t idx = p.ix * grid_n + p.iy;
    bool is_min = true;
    for (int da = -1; da <= 1 && is_min; ++da) {
      for (int db = -1; db <= 1 && is_min; ++db) {
        if (da == 0 && db == 0) continue;
        const long a = static_cast<long>(p.ix) + da;
        const long b = static_cast<long>(p.iy) + db;
        if (a < 0 || b < 0 || a >= static_cast<long>(grid_n) || b >= static_cast<long>(grid_n))
          continue;
        const std::size_t q = static_cast<std::size_t>(a) * grid_n + static_cast<std::size_t>(b);
        const double fq = grid[q];
        if (std::isnan(fq)) continue;
        if (fq < p.objective || (fq == p.objective && q < idx)) is_min = false;
      }
    }
    if (is_min) minima.push_back(p);
  }
  return minima;
}

void write_landscape_csv(std::ostream& out, const std::vector<LandscapePoint>& points) {
  out << "x,y,objective\n";
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", p.x, p.y, p.objective);
    out << buf;
  }
}

}  // namespace wlra

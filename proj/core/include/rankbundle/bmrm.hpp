// Copyright 2026 The rankbundle Authors
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

#ifndef RANKBUNDLE_BMRM_HPP_
#define RANKBUNDLE_BMRM_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rankbundle/dataset.hpp"
#include "rankbundle/pairloss.hpp"

namespace rankbundle {

/// Affine minorant <w, a> + b of the empirical risk.
struct CuttingPlane {
  std::vector<double> a;
  double b = 0.0;
};

struct DualSolverOptions {
  // Stop once the duality gap is <= relative_gap * max(1, |objective|).
  double relative_gap = 1e-12;
  std::size_t max_steps = 100000;
};

struct ModelSolution {
  std::vector<double> w;
  // Dual objective at the returned weights; a lower bound on min J_t that
  // matches it up to duality_gap.
  double objective = 0.0;
  double duality_gap = 0.0;
  std::size_t steps = 0;
};

/// Piecewise-linear lower bound R_t(w) = max_i <w, a_i> + b_i together with
/// the Gram matrix of the slopes and the dual weights of the last solve
/// (reused as a warm start).
class CuttingPlaneModel {
 public:
  explicit CuttingPlaneModel(std::size_t dims) : dims_(dims) {}

  /// Appends a plane and extends the Gram matrix in O(t n).
  void add_plane(CuttingPlane plane);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return planes_.size(); }
  const std::vector<CuttingPlane>& planes() const noexcept { return planes_; }
  double gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }
  const std::vector<double>& alpha() const noexcept { return alpha_; }

  /// R_t(w).
  double evaluate(std::span<const double> w) const;

 private:
  friend ModelSolution solve_model(CuttingPlaneModel& model, double lambda,
                                   const DualSolverOptions& options);

  std::size_t dims_;
  std::vector<CuttingPlane> planes_;
  std::vector<std::vector<double>> gram_;
  std::vector<double> alpha_;
};

/// Minimizes J_t(w) = R_t(w) + lambda |w|^2 through its dual
///
///   max_{alpha in simplex}  alpha.b - 1/(4 lambda) alpha' G alpha,
///   w = -1/(2 lambda) sum_i alpha_i a_i,
///
/// with pairwise (SMO-style) weight exchange, warm-started from the
/// model's previous alpha. Throws std::invalid_argument for lambda <= 0 or
/// an empty model and SolverError when max_steps is exhausted.
ModelSolution solve_model(CuttingPlaneModel& model, double lambda,
                          const DualSolverOptions& options = {});

struct TraceRow {
  std::size_t iteration = 0;
  double objective = 0.0;        // J(w_t)
  double model_objective = 0.0;  // J_t(w_t)
  double best_objective = 0.0;   // J(w_b)
  double gap = 0.0;              // J(w_b) - J_t(w_t)
  double seconds = 0.0;          // wall time since training started
};

struct RankModel {
  std::vector<double> w;
  double lambda = 0.0;
  double epsilon = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<TraceRow> trace;
};

/// Per-iteration view handed to TrainOptions::observer.
struct IterationState {
  const TraceRow& row;
  const CuttingPlane& plane;          // plane added this iteration
  std::span<const double> anchor;     // w_{t-1}, where the plane was taken
  std::span<const double> iterate;    // w_t
  std::span<const double> alpha;      // dual weights after the solve
};

struct TrainOptions {
  double lambda = 0.1;
  double epsilon = 1e-3;
  std::size_t max_iterations = 1000;
  Backend backend = Backend::kTree;
  // Starting point; empty means the zero vector.
  std::vector<double> w0;
  DualSolverOptions dual;
  std::function<void(const IterationState&)> observer;
};

/// Bundle-method training loop. Returns the best iterate w_b seen. Running
/// out of iterations is not an error: the model comes back with
/// converged == false and the residual gap in the last trace row.
RankModel train(const Dataset& data, const TrainOptions& options);
RankModel train(const Dataset& data, const ValidationReport& report,
                const TrainOptions& options);

/// J(w) = R_emp(w) + lambda |w|^2. Throws std::invalid_argument for
/// lambda <= 0.
double objective(const Dataset& data, std::span<const double> w, double lambda,
                 Backend backend = Backend::kTree);

/// C = 1 / (lambda N) and back, for solvers that scale an unnormalized risk.
double lambda_from_c(double c, std::int64_t pair_count);
double c_from_lambda(double lambda, std::int64_t pair_count);

}  // namespace rankbundle

#endif  // RANKBUNDLE_BMRM_HPP_

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

#include "rankbundle/bmrm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "rankbundle/errors.hpp"

namespace rankbundle {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

void require_lambda(double lambda, const char* what) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(std::string(what) + ": lambda must be a finite value > 0");
  }
}

// Recomputing G alpha from scratch this often bounds the drift of the
// incrementally updated copy.
constexpr std::size_t kRefreshInterval = 64;

// Pair steps converge slowly on ill-conditioned faces; every this many steps
// the solver tries to jump to the optimum of the current face instead.
constexpr std::size_t kFaceStepInterval = 8;

// Singular values below this fraction of the largest count as zero when
// looking for flat directions of a face.
constexpr double kNullTolerance = 1e-10;

using Gram = std::vector<std::vector<double>>;

void gram_times(const Gram& gram, const std::vector<double>& alpha, std::vector<double>& out) {
  const std::size_t t = alpha.size();
  out.assign(t, 0.0);
  for (std::size_t j = 0; j < t; ++j) {
    if (alpha[j] == 0.0) continue;
    for (std::size_t i = 0; i < t; ++i) out[i] += gram[i][j] * alpha[j];
  }
}

// D(alpha) = alpha.b - inv/2 alpha' G alpha, summed over the support only.
double dual_value(const Gram& gram, const std::vector<CuttingPlane>& planes,
                  const std::vector<double>& alpha, double inv) {
  double linear = 0.0, quadratic = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0.0) continue;
    linear += alpha[i] * planes[i].b;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] != 0.0) quadratic += alpha[i] * gram[i][j] * alpha[j];
    }
  }
  return linear - 0.5 * inv * quadratic;
}

// Moves alpha along `direction` (restricted to `face`, summing to zero) by
// at most `limit`, stopping where the first weight reaches zero. Returns the
// candidate point, renormalized onto the simplex.
std::vector<double> ratio_step(const std::vector<double>& alpha,
                               const std::vector<std::size_t>& face,
                               const Eigen::VectorXd& direction, double limit) {
  double tau = limit;
  std::size_t blocking = face.size();
  for (std::size_t k = 0; k < face.size(); ++k) {
    if (direction[k] < 0.0 && alpha[face[k]] / -direction[k] < tau) {
      tau = alpha[face[k]] / -direction[k];
      blocking = k;
    }
  }
  std::vector<double> next = alpha;
  if (!std::isfinite(tau)) return next;
  double total = 0.0;
  for (std::size_t k = 0; k < face.size(); ++k) {
    double& a = next[face[k]];
    a = k == blocking ? 0.0 : std::max(0.0, a + tau * direction[k]);
  }
  for (double a : next) total += a;
  if (total > 0.0) {
    for (double& a : next) a /= total;
  }
  return next;
}

// One exact step on the face spanned by the support plus `up`. If the face
// has a flat direction along which the dual still rises, follows it until a
// weight hits zero; otherwise jumps to the face optimum (clipped to stay
// feasible). Returns true and updates alpha only if the dual improves.
bool face_step(const Gram& gram, const std::vector<CuttingPlane>& planes, double inv,
               std::size_t up, std::vector<double>& alpha) {
  std::vector<std::size_t> face;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0.0 || i == up) face.push_back(i);
  }
  const auto s = static_cast<Eigen::Index>(face.size());
  if (s < 2) return false;

  Eigen::MatrixXd q(s, s);
  Eigen::VectorXd b(s);
  for (Eigen::Index r = 0; r < s; ++r) {
    b[r] = planes[face[r]].b;
    for (Eigen::Index c = 0; c < s; ++c) q(r, c) = inv * gram[face[r]][face[c]];
  }
  const double before = dual_value(gram, planes, alpha, inv);
  auto accept = [&](const std::vector<double>& candidate) {
    if (dual_value(gram, planes, candidate, inv) <= before) return false;
    alpha = candidate;
    return true;
  };

  // Flat directions: q d = 0 and sum(d) = 0.
  Eigen::MatrixXd stacked(s + 1, s);
  stacked.topRows(s) = q;
  stacked.row(s).setOnes();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] > kNullTolerance * sigma[0]) ++rank;
  if (rank < s) {
    const Eigen::MatrixXd null = svd.matrixV().rightCols(s - rank);
    const Eigen::VectorXd direction = null * (null.transpose() * b);
    if (b.dot(direction) > 0.0 &&
        accept(ratio_step(alpha, face, direction, std::numeric_limits<double>::infinity()))) {
      return true;
    }
  }

  // Face optimum: q x + mu 1 = b, sum(x) = 1.
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = q;
  kkt.block(0, s, s, 1).setOnes();
  kkt.block(s, 0, 1, s).setOnes();
  Eigen::VectorXd rhs(s + 1);
  rhs.head(s) = b;
  rhs[s] = 1.0;
  const Eigen::VectorXd x = kkt.completeOrthogonalDecomposition().solve(rhs);
  Eigen::VectorXd direction(s);
  for (Eigen::Index k = 0; k < s; ++k) direction[k] = x[k] - alpha[face[k]];
  return accept(ratio_step(alpha, face, direction, 1.0));
}

}  // namespace

void CuttingPlaneModel::add_plane(CuttingPlane plane) {
  if (plane.a.size() != dims_) {
    throw DimensionMismatchError("add_plane: slope has " +
                                 std::to_string(plane.a.size()) +
                                 " entries, model has " + std::to_string(dims_));
  }
  const std::size_t t = planes_.size();
  std::vector<double> row(t + 1);
  for (std::size_t i = 0; i < t; ++i) {
    row[i] = dot(planes_[i].a, plane.a);
    gram_[i].push_back(row[i]);
  }
  row[t] = dot(plane.a, plane.a);
  gram_.push_back(std::move(row));
  planes_.push_back(std::move(plane));
  alpha_.push_back(0.0);
}

double CuttingPlaneModel::evaluate(std::span<const double> w) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const CuttingPlane& plane : planes_) best = std::max(best, dot(w, plane.a) + plane.b);
  return best;
}

ModelSolution solve_model(CuttingPlaneModel& model, double lambda,
                          const DualSolverOptions& options) {
  require_lambda(lambda, "solve_model");
  const std::size_t t = model.size();
  if (t == 0) throw std::invalid_argument("solve_model: model has no planes");

  const Gram& gram = model.gram_;
  const auto& planes = model.planes_;
  std::vector<double>& alpha = model.alpha_;
  const double inv = 1.0 / (2.0 * lambda);

  // Cold start at the single-plane optimum with the best dual value.
  if (std::accumulate(alpha.begin(), alpha.end(), 0.0) <= 0.0) {
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t; ++i) {
      const double value = planes[i].b - 0.5 * inv * gram[i][i];
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    std::fill(alpha.begin(), alpha.end(), 0.0);
    alpha[best] = 1.0;
  }

  std::vector<double> galpha;
  gram_times(gram, alpha, galpha);
  std::vector<double> grad(t);

  ModelSolution solution;
  double dual = 0.0;
  for (std::size_t step = 0;; ++step) {
    if (step > 0 && step % kRefreshInterval == 0) gram_times(gram, alpha, galpha);

    // grad_i = dD/dalpha_i; on the simplex the optimum has every supported
    // plane at the maximal gradient.
    std::size_t up = 0;
    dual = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      grad[i] = planes[i].b - inv * galpha[i];
      if (grad[i] > grad[up]) up = i;
      dual += alpha[i] * (planes[i].b - 0.5 * inv * galpha[i]);
    }
    double gap = 0.0;
    std::size_t down = t;
    for (std::size_t i = 0; i < t; ++i) {
      if (alpha[i] <= 0.0) continue;
      gap += alpha[i] * (grad[up] - grad[i]);
      if (down == t || grad[i] < grad[down]) down = i;
    }
    solution.duality_gap = gap;
    solution.steps = step;
    if (gap <= options.relative_gap * std::max(1.0, std::abs(dual))) break;
    if (step >= options.max_steps) {
      throw SolverError("dual solver did not reach the requested gap within " +
                            std::to_string(options.max_steps) + " steps",
                        gap);
    }

    if (step % kFaceStepInterval == 0 && face_step(gram, planes, inv, up, alpha)) {
      gram_times(gram, alpha, galpha);
      continue;
    }

    // Pair step: move weight from the donor `down` to the receiver with the
    // largest ascent once the step is clipped to alpha[down].
    std::size_t receiver = t;
    double best_gain = 0.0;
    double best_delta = 0.0;
    for (std::size_t i = 0; i < t; ++i) {
      const double diff = grad[i] - grad[down];
      if (i == down || diff <= 0.0) continue;
      const double curvature =
          std::max(0.0, gram[i][i] + gram[down][down] - 2.0 * gram[i][down]);
      double delta = alpha[down];
      if (curvature > 0.0) delta = std::min(delta, diff / (inv * curvature));
      const double gain = delta * diff - 0.5 * inv * curvature * delta * delta;
      if (receiver == t || gain > best_gain) {
        receiver = i;
        best_gain = gain;
        best_delta = delta;
      }
    }
    if (receiver == t || best_delta <= 0.0) break;  // no ascent left in floating point

    if (best_delta >= alpha[down]) {
      best_delta = alpha[down];
      alpha[down] = 0.0;
    } else {
      alpha[down] -= best_delta;
    }
    alpha[receiver] += best_delta;
    for (std::size_t i = 0; i < t; ++i) {
      galpha[i] += best_delta * (gram[i][receiver] - gram[i][down]);
    }
  }

  solution.objective = dual;
  solution.w.assign(model.dims(), 0.0);
  for (std::size_t i = 0; i < t; ++i) {
    if (alpha[i] == 0.0) continue;
    const double weight = -inv * alpha[i];
    const std::vector<double>& a = planes[i].a;
    for (std::size_t k = 0; k < a.size(); ++k) solution.w[k] += weight * a[k];
  }
  return solution;
}

RankModel train(const Dataset& data, const TrainOptions& options) {
  return train(data, validate(data), options);
}

RankModel train(const Dataset& data, const ValidationReport& report,
                const TrainOptions& options) {
  require_lambda(options.lambda, "train");
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("train: epsilon must be > 0");
  if (options.max_iterations == 0) {
    throw std::invalid_argument("train: max_iterations must be >= 1");
  }
  const std::size_t n = data.features();
  std::vector<double> w_prev = options.w0.empty() ? std::vector<double>(n, 0.0) : options.w0;
  if (w_prev.size() != n) {
    throw DimensionMismatchError("train: w0 has " + std::to_string(w_prev.size()) +
                                 " entries, data has " + std::to_string(n) + " features");
  }

  const double lambda = options.lambda;
  auto risk = [&](std::span<const double> w) {
    return evaluate_risk(data.x, data.y, report.groups, w, options.backend);
  };
  const auto start = std::chrono::steady_clock::now();

  RankModel model;
  model.lambda = lambda;
  model.epsilon = options.epsilon;

  // R_emp >= 0, so the flat plane at zero is a valid minorant.
  CuttingPlaneModel bundle(n);
  bundle.add_plane(CuttingPlane{std::vector<double>(n, 0.0), 0.0});

  RiskEvaluation at_prev = risk(w_prev);
  std::vector<double> best = w_prev;
  double best_objective = at_prev.loss + lambda * dot(w_prev, w_prev);

  for (std::size_t t = 1;; ++t) {
    CuttingPlane plane{at_prev.subgradient, at_prev.loss - dot(w_prev, at_prev.subgradient)};
    bundle.add_plane(std::move(plane));
    ModelSolution solution = solve_model(bundle, lambda, options.dual);

    // J(w_t) is evaluated right away; the same evaluation supplies the next
    // plane, so no extra risk call is spent.
    RiskEvaluation at_t = risk(solution.w);
    const double objective_t = at_t.loss + lambda * dot(solution.w, solution.w);
    if (objective_t < best_objective) {
      best_objective = objective_t;
      best = solution.w;
    }

    TraceRow row;
    row.iteration = t;
    row.objective = objective_t;
    row.model_objective = solution.objective;
    row.best_objective = best_objective;
    row.gap = best_objective - solution.objective;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    model.trace.push_back(row);
    if (options.observer) {
      options.observer(IterationState{model.trace.back(), bundle.planes().back(), w_prev,
                                      solution.w, bundle.alpha()});
    }

    model.iterations = t;
    if (row.gap < options.epsilon) {
      model.converged = true;
      break;
    }
    if (t >= options.max_iterations) break;
    w_prev = std::move(solution.w);
    at_prev = std::move(at_t);
  }
  model.w = std::move(best);
  return model;
}

double objective(const Dataset& data, std::span<const double> w, double lambda,
                 Backend backend) {
  require_lambda(lambda, "objective");
  const ValidationReport report = validate(data);
  const RiskEvaluation eval = evaluate_risk(data.x, data.y, report.groups, w, backend);
  return eval.loss + lambda * dot(w, w);
}

double lambda_from_c(double c, std::int64_t pair_count) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("C must be a finite value > 0");
  if (pair_count < 1) throw std::invalid_argument("pair count must be >= 1");
  return 1.0 / (c * static_cast<double>(pair_count));
}

double c_from_lambda(double lambda, std::int64_t pair_count) {
  require_lambda(lambda, "c_from_lambda");
  if (pair_count < 1) throw std::invalid_argument("pair count must be >= 1");
  return 1.0 / (lambda * static_cast<double>(pair_count));
}

}  // namespace rankbundle

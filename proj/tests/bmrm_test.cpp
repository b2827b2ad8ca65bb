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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "rankbundle/errors.hpp"
#include "rankbundle/synthetic.hpp"

namespace rankbundle {
namespace {

using testing::close;

Dataset one_feature_dataset(std::vector<double> values, std::vector<double> y) {
  Dataset data;
  const std::size_t m = values.size();
  data.x = testing::from_dense({std::move(values)}, m);
  data.y = std::move(y);
  return data;
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(SolveModel, SinglePlaneHasClosedForm) {
  CuttingPlaneModel model(2);
  model.add_plane({{1.0, -2.0}, 0.5});
  const double lambda = 0.25;
  const ModelSolution s = solve_model(model, lambda);
  EXPECT_NEAR(s.w[0], -1.0 / (2 * lambda), 1e-12);
  EXPECT_NEAR(s.w[1], 2.0 / (2 * lambda), 1e-12);
  EXPECT_NEAR(s.objective, 0.5 - 5.0 / (4 * lambda), 1e-12);
  EXPECT_DOUBLE_EQ(model.alpha()[0], 1.0);
}

TEST(SolveModel, FlatPlane) {
  CuttingPlaneModel model(1);
  model.add_plane({{0.0}, 1.0});
  const ModelSolution s = solve_model(model, 0.3);
  EXPECT_EQ(s.w[0], 0.0);
  EXPECT_DOUBLE_EQ(s.objective, 1.0);
}

TEST(SolveModel, SymmetricPairSplitsEvenly) {
  CuttingPlaneModel model(1);
  model.add_plane({{1.0}, 0.0});
  model.add_plane({{-1.0}, 0.0});
  const ModelSolution s = solve_model(model, 0.5);
  EXPECT_NEAR(s.w[0], 0.0, 1e-12);
  EXPECT_NEAR(s.objective, 0.0, 1e-12);
  EXPECT_NEAR(model.alpha()[0], 0.5, 1e-9);
  EXPECT_NEAR(model.alpha()[1], 0.5, 1e-9);

  // Dual over alpha = (a, 1 - a): a*0 + (1-a)*0 - (1/(4*0.5)) * (2a - 1)^2.
  const double best = testing::grid_minimum(
      [](double a) { return 0.5 * (2 * a - 1) * (2 * a - 1); }, 0.0, 1.0, 1e-4);
  EXPECT_NEAR(-best, s.objective, 1e-9);
}

TEST(SolveModel, RejectsBadInputs) {
  CuttingPlaneModel empty(1);
  EXPECT_THROW(solve_model(empty, 1.0), std::invalid_argument);
  CuttingPlaneModel model(1);
  model.add_plane({{1.0}, 0.0});
  EXPECT_THROW(solve_model(model, 0.0), std::invalid_argument);
  EXPECT_THROW(solve_model(model, -1.0), std::invalid_argument);
  EXPECT_THROW(model.add_plane({{1.0, 2.0}, 0.0}), DimensionMismatchError);
}

TEST(SolveModel, ExhaustedStepBudgetIsASolverError) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  CuttingPlaneModel model(5);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> a(5);
    for (double& v : a) v = normal(rng);
    model.add_plane({a, normal(rng)});
  }
  DualSolverOptions tight;
  tight.max_steps = 1;
  try {
    solve_model(model, 0.01, tight);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.residual_gap(), 0.0);
  }
}

TEST(SolveModel, RandomModelsMatchPrimal) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    CuttingPlaneModel model(4);
    const int planes = 1 + trial % 12;
    for (int t = 0; t < planes; ++t) {
      std::vector<double> a(4);
      for (double& v : a) v = normal(rng);
      model.add_plane({a, normal(rng)});
    }
    const double lambda = std::pow(10.0, trial % 5 - 2);
    const ModelSolution s = solve_model(model, lambda);
    double norm = 0.0;
    for (double v : s.w) norm += v * v;
    const double primal = model.evaluate(s.w) + lambda * norm;
    EXPECT_TRUE(close(primal, s.objective, 1e-9)) << primal << " vs " << s.objective;
    EXPECT_NEAR(sum(model.alpha()), 1.0, 1e-12);
    for (double a : model.alpha()) EXPECT_GE(a, 0.0);
    for (std::size_t i = 0; i < model.size(); ++i) {
      for (std::size_t j = 0; j < model.size(); ++j) {
        EXPECT_EQ(model.gram(i, j), model.gram(j, i));
      }
    }
  }
}

TEST(Objective, KnownValues) {
  const Dataset data = one_feature_dataset({0.0, 0.5, 2.0}, {1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(objective(data, std::vector{0.0}, 0.1), 1.0);
  EXPECT_NEAR(objective(data, std::vector{1.0}, 0.1), 1.0 / 6.0 + 0.1, 1e-15);
  EXPECT_THROW(objective(data, std::vector{1.0}, 0.0), std::invalid_argument);
}

TEST(Train, FirstPlaneAtZero) {
  const Dataset data = one_feature_dataset({0.0, 0.5, 2.0}, {1.0, 2.0, 3.0});
  TrainOptions opts;
  bool first = true;
  opts.observer = [&](const IterationState& s) {
    if (!first) return;
    first = false;
    EXPECT_DOUBLE_EQ(s.plane.b, 1.0);
    EXPECT_NEAR(s.plane.a[0], -4.0 / 3.0, 1e-15);
  };
  train(data, opts);
  EXPECT_FALSE(first);
}

TEST(Train, OneFeatureMatchesGridSearch) {
  const Dataset data = one_feature_dataset({0.0, 0.5, 2.0}, {1.0, 2.0, 3.0});
  TrainOptions opts;
  opts.lambda = 0.1;
  opts.epsilon = 1e-3;
  const RankModel model = train(data, opts);
  ASSERT_TRUE(model.converged);
  EXPECT_LT(model.trace.back().gap, 1e-3);
  const double best = testing::grid_minimum(
      [&](double w) { return objective(data, std::vector{w}, 0.1); }, -10.0, 10.0, 1e-4);
  EXPECT_NEAR(objective(data, model.w, 0.1), best, 1e-3);
  EXPECT_DOUBLE_EQ(model.trace.back().best_objective, objective(data, model.w, 0.1));
}

TEST(Train, ConvertsC) {
  EXPECT_DOUBLE_EQ(lambda_from_c(2.0, 5), 0.1);
  EXPECT_DOUBLE_EQ(c_from_lambda(0.1, 5), 2.0);
}

TEST(Train, UnconvergedIsReported) {
  SyntheticOptions gen;
  gen.examples = 100;
  gen.features = 6;
  gen.noise = 0.5;
  const Dataset data = generate_synthetic(gen);
  TrainOptions opts;
  opts.lambda = 1e-3;
  opts.epsilon = 1e-9;
  opts.max_iterations = 3;
  const RankModel model = train(data, opts);
  EXPECT_FALSE(model.converged);
  EXPECT_EQ(model.iterations, 3u);
  EXPECT_EQ(model.trace.size(), 3u);
  EXPECT_GE(model.trace.back().gap, 1e-9);
}

TEST(Train, RejectsBadOptions) {
  const Dataset data = one_feature_dataset({0.0, 0.5}, {1.0, 2.0});
  TrainOptions opts;
  opts.lambda = 0.0;
  EXPECT_THROW(train(data, opts), std::invalid_argument);
  opts.lambda = 0.1;
  opts.epsilon = 0.0;
  EXPECT_THROW(train(data, opts), std::invalid_argument);
  opts.epsilon = 1e-3;
  opts.w0 = {1.0, 2.0};
  EXPECT_THROW(train(data, opts), DimensionMismatchError);
  const Dataset tied = one_feature_dataset({0.0, 0.5}, {1.0, 1.0});
  EXPECT_THROW(train(tied, TrainOptions{}), DegenerateDatasetError);
}

struct TrainCase {
  std::size_t m;
  double lambda;
  bool grouped;
};

class TrainInvariants : public ::testing::TestWithParam<TrainCase> {};

TEST_P(TrainInvariants, TraceAndPlanesAreConsistent) {
  const TrainCase param = GetParam();
  std::mt19937_64 rng(param.m * 7 + static_cast<std::size_t>(param.lambda * 1000));
  testing::Instance inst = testing::random_instance(
      rng, param.m, 5, true, testing::LabelRegime::kTied, testing::WeightRegime::kZero);
  Dataset data;
  data.x = inst.x;
  data.y = inst.y;
  if (param.grouped) {
    data.qid.resize(param.m);
    for (std::size_t j = 0; j < param.m; ++j) data.qid[j] = static_cast<std::int64_t>(j % 4);
  }
  const ValidationReport report = validate(data);

  std::normal_distribution<double> normal(0.0, 2.0);
  std::vector<std::vector<double>> probes(20, std::vector<double>(5));
  for (auto& probe : probes) {
    for (double& v : probe) v = normal(rng);
  }
  std::vector<double> probe_risk;
  for (const auto& probe : probes) {
    probe_risk.push_back(evaluate_risk(data.x, data.y, report.groups, probe, Backend::kBrute).loss);
  }

  TrainOptions opts;
  opts.lambda = param.lambda;
  opts.observer = [&](const IterationState& s) {
    for (std::size_t k = 0; k < probes.size(); ++k) {
      double value = s.plane.b;
      for (std::size_t f = 0; f < 5; ++f) value += s.plane.a[f] * probes[k][f];
      EXPECT_LE(value, probe_risk[k] + 1e-9);
    }
    EXPECT_NEAR(sum(s.alpha), 1.0, 1e-12);
    for (double a : s.alpha) EXPECT_GE(a, 0.0);
  };
  const RankModel tree = train(data, report, opts);
  ASSERT_TRUE(tree.converged);
  EXPECT_LE(tree.iterations, 1000u);
  for (std::size_t t = 0; t < tree.trace.size(); ++t) {
    const TraceRow& row = tree.trace[t];
    EXPECT_GE(row.gap, -1e-9);
    EXPECT_DOUBLE_EQ(row.gap, row.best_objective - row.model_objective);
    if (t > 0) {
      EXPECT_LE(row.best_objective, tree.trace[t - 1].best_objective);
      EXPECT_GE(row.model_objective, tree.trace[t - 1].model_objective);
    }
  }
  EXPECT_LT(tree.trace.back().gap, opts.epsilon);

  opts.backend = Backend::kBrute;
  opts.observer = nullptr;
  const RankModel brute = train(data, report, opts);
  ASSERT_EQ(brute.iterations, tree.iterations);
  EXPECT_TRUE(testing::all_close(brute.w, tree.w, 1e-9));
}

INSTANTIATE_TEST_SUITE_P(Datasets, TrainInvariants,
                         ::testing::Values(TrainCase{20, 1e-3, false}, TrainCase{60, 0.1, false},
                                           TrainCase{150, 10.0, false},
                                           TrainCase{80, 0.1, true}, TrainCase{120, 1e-3, true}));

}  // namespace
}  // namespace rankbundle

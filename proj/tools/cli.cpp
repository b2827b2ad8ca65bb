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

#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "model_file.hpp"
#include "rankbundle/bmrm.hpp"
#include "rankbundle/dataset.hpp"
#include "rankbundle/errors.hpp"
#include "rankbundle/eval.hpp"
#include "rankbundle/svmlight.hpp"
#include "rankbundle/synthetic.hpp"
#include "scaling.hpp"

namespace rankbundle::cli {

namespace {

std::string num(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  return file;
}

struct TrainFlags {
  std::string data;
  double lambda = 0.1;
  double c = 0.0;
  double epsilon = 1e-3;
  std::size_t max_iters = 1000;
  std::string backend = "tree";
  std::string model_out;
  std::string trace_out;
  std::optional<std::size_t> dims;
  bool single_view = false;
  CLI::Option* c_option = nullptr;
};

struct ApplyFlags {
  std::string data;
  std::string model;
  std::string out;
  std::string csv;
};

struct GenerateFlags {
  std::string kind = "dense-regression";
  std::size_t m = 1000;
  std::size_t n = 8;
  double sparsity = 1.0;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::string out;
  std::size_t test_m = 0;
  std::string test_out;
};

struct BenchFlags {
  std::vector<std::size_t> sizes;
  std::string backend = "both";
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
  std::string kind = "sparse-similarity";
  std::size_t n = 50000;
  double sparsity = 0.001;
  std::string out;
};

void write_trace_csv(std::ostream& out, const RankModel& model) {
  out << "iter,J_wt,Jt_wt,J_wb,eps_t,seconds\n";
  for (const TraceRow& row : model.trace) {
    out << row.iteration << ',' << num(row.objective) << ',' << num(row.model_objective)
        << ',' << num(row.best_objective) << ',' << num(row.gap) << ','
        << num(row.seconds) << '\n';
  }
}

int cmd_train(const TrainFlags& flags, std::ostream& out, std::ostream& err) {
  SvmlightOptions load;
  load.dims = flags.dims;
  load.storage = flags.single_view ? Storage::kColumnOnly : Storage::kDualView;
  const Dataset data = read_svmlight_file(flags.data, load);
  const ValidationReport report = validate(data);
  for (std::int64_t label : report.skipped_groups) {
    err << "warning: query group " << label << " has no preference pairs; skipped\n";
  }

  TrainOptions options;
  options.lambda = flags.c_option->count() > 0 ? lambda_from_c(flags.c, report.pair_count)
                                               : flags.lambda;
  options.epsilon = flags.epsilon;
  options.max_iterations = flags.max_iters;
  options.backend = parse_backend(flags.backend);
  const RankModel model = train(data, report, options);

  if (!flags.model_out.empty()) save_model_file(flags.model_out, ModelFile::from_model(model));
  if (!flags.trace_out.empty()) {
    std::ofstream trace = open_output(flags.trace_out);
    write_trace_csv(trace, model);
  }

  const TraceRow& last = model.trace.back();
  out << "examples: " << data.examples() << "\n"
      << "features: " << data.features() << "\n"
      << "preference pairs: " << report.pair_count << "\n"
      << "lambda: " << num(model.lambda) << "\n"
      << "iterations: " << model.iterations << "\n"
      << "converged: " << (model.converged ? "true" : "false") << "\n"
      << "J(w_b): " << num(last.best_objective) << "\n"
      << "eps_t: " << num(last.gap) << "\n";
  if (!model.converged) {
    err << "warning: stopped after " << model.iterations
        << " iterations without reaching epsilon " << num(flags.epsilon)
        << " (gap " << num(last.gap) << ")\n";
  }
  return kSuccess;
}

// Loads evaluation data in the model's feature space.
Dataset load_for_model(const std::string& path, const ModelFile& model) {
  Dataset data = read_svmlight_file(path);
  if (data.features() > model.dims) {
    throw DimensionMismatchError("data has " + std::to_string(data.features()) +
                                 " features but the model has " +
                                 std::to_string(model.dims));
  }
  if (data.features() < model.dims) data.x = data.x.with_features(model.dims);
  return data;
}

int cmd_predict(const ApplyFlags& flags, std::ostream& out) {
  const ModelFile model = load_model_file(flags.model);
  const Dataset data = load_for_model(flags.data, model);
  const std::vector<double> scores = predict(data.x, model.w);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!flags.out.empty()) {
    file = open_output(flags.out);
    sink = &file;
  }
  for (double s : scores) *sink << num(s) << '\n';
  return kSuccess;
}

int cmd_eval(const ApplyFlags& flags, std::ostream& out) {
  const ModelFile model = load_model_file(flags.model);
  const Dataset data = load_for_model(flags.data, model);
  const std::vector<double> scores = predict(data.x, model.w);

  RankingErrorReport pooled;
  std::size_t groups = 1;
  double mean_group_error = 0.0;
  if (data.grouped()) {
    const GroupedRankingErrorReport grouped = grouped_ranking_error(scores, data.y, data.qid);
    pooled.swapped = grouped.swapped;
    pooled.tied_predictions = grouped.tied_predictions;
    pooled.pair_count = grouped.pair_count;
    pooled.error = static_cast<double>(grouped.swapped) / static_cast<double>(grouped.pair_count);
    groups = grouped.groups.size();
    mean_group_error = grouped.mean_error;
    out << "query groups: " << groups << " (skipped " << grouped.skipped_groups << ")\n"
        << "mean per-query error: " << num(mean_group_error) << "\n";
  } else {
    pooled = pairwise_ranking_error(scores, data.y);
    mean_group_error = pooled.error;
  }
  out << "pairwise ranking error: " << num(pooled.error) << "\n"
      << "swapped pairs: " << pooled.swapped << "\n"
      << "preference pairs: " << pooled.pair_count << "\n"
      << "tied predictions: " << pooled.tied_predictions << "\n";

  if (!flags.csv.empty()) {
    std::ofstream csv = open_output(flags.csv);
    csv << "error,swapped,pair_count,tied_predictions,groups,mean_group_error\n"
        << num(pooled.error) << ',' << pooled.swapped << ',' << pooled.pair_count << ','
        << pooled.tied_predictions << ',' << groups << ',' << num(mean_group_error) << '\n';
  }
  return kSuccess;
}

int cmd_generate(const GenerateFlags& flags, std::ostream& out) {
  SyntheticOptions options;
  options.kind = parse_synthetic_kind(flags.kind);
  options.examples = flags.m + flags.test_m;
  options.features = flags.n;
  options.sparsity = flags.sparsity;
  options.seed = flags.seed;
  options.noise = flags.noise;
  const Dataset all = generate_synthetic(options);

  std::vector<std::size_t> head(flags.m);
  for (std::size_t i = 0; i < flags.m; ++i) head[i] = i;
  write_svmlight_file(flags.out, flags.test_m > 0 ? all.select(head) : all);
  out << "wrote " << flags.m << " examples to " << flags.out << "\n";
  if (flags.test_m > 0) {
    std::vector<std::size_t> tail(flags.test_m);
    for (std::size_t i = 0; i < flags.test_m; ++i) tail[i] = flags.m + i;
    write_svmlight_file(flags.test_out, all.select(tail));
    out << "wrote " << flags.test_m << " examples to " << flags.test_out << "\n";
  }
  return kSuccess;
}

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  ScalingOptions options;
  options.kind = parse_synthetic_kind(flags.kind);
  options.sizes = flags.sizes;
  options.features = flags.n;
  options.sparsity = flags.sparsity;
  options.repeats = flags.repeats;
  options.seed = flags.seed;

  std::vector<Backend> backends;
  if (flags.backend != "brute") backends.push_back(Backend::kTree);
  if (flags.backend != "tree") backends.push_back(Backend::kBrute);

  std::ofstream file;
  std::ostream* csv = &out;
  std::ostream* summary = &err;
  if (!flags.out.empty()) {
    file = open_output(flags.out);
    csv = &file;
    summary = &out;
  }
  *csv << "m,backend,mean_s,stdev_s\n";
  for (Backend backend : backends) {
    const std::vector<ScalingPoint> points = measure_risk_scaling(options, backend);
    for (const ScalingPoint& p : points) {
      *csv << p.examples << ',' << to_string(backend) << ',' << num(p.mean_seconds) << ','
           << num(p.stdev_seconds) << '\n';
    }
    csv->flush();
    if (points.size() >= 2) {
      *summary << "log-log slope (" << to_string(backend) << "): "
               << num(fit_loglog_slope(points)) << "\n";
    }
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear RankSVM training with order-statistics-tree risk evaluation",
               "rankbundle"};
  app.require_subcommand(1);

  TrainFlags train_flags;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model on an svmlight file");
  train_cmd->add_option("--data", train_flags.data, "Training data (svmlight)")->required();
  CLI::Option* lambda_opt =
      train_cmd->add_option("--lambda", train_flags.lambda, "Regularization weight")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
  train_flags.c_option =
      train_cmd->add_option("--C", train_flags.c, "Risk weight C, converted to 1/(C N)")
          ->check(CLI::PositiveNumber);
  lambda_opt->excludes(train_flags.c_option);
  train_cmd->add_option("--epsilon", train_flags.epsilon, "Stop when the gap drops below this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--max-iters", train_flags.max_iters, "Iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  train_cmd->add_option("--backend", train_flags.backend, "Risk evaluation backend")
      ->check(CLI::IsMember({"tree", "brute"}))
      ->capture_default_str();
  train_cmd->add_option("--model-out", train_flags.model_out, "Where to write the model");
  train_cmd->add_option("--trace-out", train_flags.trace_out, "Where to write the trace CSV");
  train_cmd->add_option("--dims", train_flags.dims, "Feature dimension override")
      ->check(CLI::PositiveNumber);
  train_cmd->add_flag("--single-view", train_flags.single_view,
                      "Keep only the per-example copy of the data matrix");

  ApplyFlags predict_flags;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Write one score per example");
  predict_cmd->add_option("--data", predict_flags.data, "Data (svmlight)")->required();
  predict_cmd->add_option("--model", predict_flags.model, "Model file")->required();
  predict_cmd->add_option("--out", predict_flags.out, "Output file (default: stdout)");

  ApplyFlags eval_flags;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Pairwise ranking error of a model");
  eval_cmd->add_option("--data", eval_flags.data, "Data (svmlight)")->required();
  eval_cmd->add_option("--model", eval_flags.model, "Model file")->required();
  eval_cmd->add_option("--csv", eval_flags.csv, "Also write the report as CSV");

  GenerateFlags gen_flags;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset");
  gen_cmd->add_option("--kind", gen_flags.kind, "dense-regression or sparse-similarity")
      ->check(CLI::IsMember({"dense-regression", "sparse-similarity"}))
      ->capture_default_str();
  gen_cmd->add_option("--m", gen_flags.m, "Number of examples")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen_flags.n, "Number of features")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--sparsity", gen_flags.sparsity, "Expected nonzero fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_flags.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--noise", gen_flags.noise, "Score noise (dense-regression)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--out", gen_flags.out, "Output svmlight file")->required();
  CLI::Option* test_m_opt =
      gen_cmd->add_option("--test-m", gen_flags.test_m, "Extra held-out examples");
  CLI::Option* test_out_opt =
      gen_cmd->add_option("--test-out", gen_flags.test_out, "Held-out svmlight file");
  test_m_opt->needs(test_out_opt);
  test_out_opt->needs(test_m_opt);

  BenchFlags bench_flags;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time risk evaluation across sizes");
  bench_cmd->add_option("--sizes", bench_flags.sizes, "Comma-separated example counts")
      ->delimiter(',')
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  bench_cmd->add_option("--backend", bench_flags.backend, "tree, brute or both")
      ->check(CLI::IsMember({"tree", "brute", "both"}))
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench_flags.repeats, "Timed calls per size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_flags.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--kind", bench_flags.kind, "Dataset kind")
      ->check(CLI::IsMember({"dense-regression", "sparse-similarity"}))
      ->capture_default_str();
  bench_cmd->add_option("--n", bench_flags.n, "Number of features")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--sparsity", bench_flags.sparsity, "Expected nonzero fraction")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_flags.out, "CSV output file (default: stdout)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  if (gen_flags.sparsity <= 0.0 && gen_cmd->parsed()) {
    err << "error: --sparsity must be > 0\n";
    return kUsageError;
  }
  if (bench_flags.sparsity <= 0.0 && bench_cmd->parsed()) {
    err << "error: --sparsity must be > 0\n";
    return kUsageError;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(train_flags, out, err);
    if (predict_cmd->parsed()) return cmd_predict(predict_flags, out);
    if (eval_cmd->parsed()) return cmd_eval(eval_flags, out);
    if (gen_cmd->parsed()) return cmd_generate(gen_flags, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_flags, out, err);
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << " (residual gap " << num(e.residual_gap())
        << ")\n";
    return kSolverFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kDataError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace rankbundle::cli

// Copyright 2026 The FairCCA Authors.
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

#ifndef FAIRCCA_EXPERIMENT_HPP_
#define FAIRCCA_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "faircca/cca.hpp"
#include "faircca/fairmetrics.hpp"
#include "faircca/io.hpp"
#include "faircca/model_selection.hpp"
#include "faircca/stats_tests.hpp"
#include "faircca/synthgen.hpp"

namespace faircca {

enum class Method { kRaw, kCca, kFrcca };
std::string_view MethodName(Method m);
Method ParseMethod(std::string_view name);

enum class Modality { kX, kY };
inline constexpr std::array<Modality, 2> kModalities{Modality::kX, Modality::kY};
std::string_view ModalityName(Modality m);

struct ExperimentConfig {
  std::optional<SynthConfig> synth;  // exactly one of synth / csv
  std::optional<CsvPaths> csv;
  std::vector<Method> methods{Method::kCca, Method::kFrcca};
  int rank = 2;                // representation rank for classification
  int unsupervised_rank = 7;   // rank for the per-dimension deltas
  double ridge = kDefaultRidge;
  double split_fraction = 0.7;
  bool stratify = true;
  std::uint64_t tuning_seed = 0;
  std::vector<std::uint64_t> eval_seeds{1, 2, 3, 4, 5};
  std::vector<ClassifierKind> classifiers{ClassifierKind::kSvm};
  int n_iter = 50;
  int k_folds = 5;
  Scorer scorer = Scorer::kAccuracy;
  int gsg_bins = kDefaultGsgBins;
  std::filesystem::path output_dir = "out";
};

// Throws ConfigError.
void ValidateExperimentConfig(const ExperimentConfig& config);
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json ExperimentConfigToJson(const ExperimentConfig& config);

TabularData LoadData(const ExperimentConfig& config);

// Training-split representation of one modality.
struct Representation {
  Matrix train;
  Matrix test;
  double fit_seconds = 0.0;
  double constraint_residual = 0.0;  // FR-CCA only, on the training rows
};

// Fits the method on the training rows and projects both splits of the
// requested modality. "raw" standardizes with training statistics.
Representation BuildRepresentation(const TabularData& data, const Split& split,
                                   Method method, Modality modality, int rank,
                                   double ridge);

struct RunRecord {
  std::uint64_t seed = 0;
  Method method = Method::kCca;
  Modality modality = Modality::kX;
  ClassifierKind classifier = ClassifierKind::kSvm;
  FairnessReport report;
  Hyperparameters params;
  double constraint_residual = 0.0;
  double fit_seconds = 0.0;  // excluded from deterministic outputs
  bool failed = false;
  std::string failure;
};

struct CellKey {
  Method method;
  Modality modality;
  ClassifierKind classifier;
};

struct TunedCell {
  CellKey key;
  bool failed = false;
  std::string failure;
  SearchResult search;
};

struct DimensionDelta {
  int dim = 0;
  double cca_rho = 0.0;
  double frcca_rho = 0.0;
  double cca_gamma = 0.0;
  double frcca_gamma = 0.0;
  double delta_corr_pct = 0.0;
  double delta_fair_pct = 0.0;
};

struct ExperimentResult {
  std::vector<TunedCell> tuning;
  std::vector<RunRecord> runs;
  std::vector<DimensionDelta> deltas;  // empty unless cca and frcca both run
  std::string deltas_failure;
};

// Per-dimension correlation and fairness changes of FR-CCA against CCA on
// the full data.
std::vector<DimensionDelta> UnsupervisedDeltas(const TabularData& data,
                                               int rank, double ridge);

// Pure function of the config apart from the recorded fit times.
ExperimentResult RunExperiment(const ExperimentConfig& config);

nlohmann::ordered_json RunRecordJson(const RunRecord& run);
nlohmann::ordered_json SummaryJson(const ExperimentConfig& config,
                                   const ExperimentResult& result);
nlohmann::ordered_json BestParamsJson(const ExperimentResult& result);
nlohmann::ordered_json TimingJson(const ExperimentResult& result);
std::string DeltasTsv(const std::vector<DimensionDelta>& deltas);

// runs.jsonl, summary.json, deltas.tsv, best_params.json, timing.json.
void WriteExperimentOutputs(const std::filesystem::path& dir,
                            const ExperimentConfig& config,
                            const ExperimentResult& result);

struct HypothesisSuite {
  Method baseline = Method::kCca;
  Method proposed = Method::kFrcca;
  int n_seeds = 0;
  double alpha = kDefaultAlpha;
  std::vector<HypothesisReport> cells;  // metric-major: dpg, eog, gsg x X, Y
  std::vector<RunRecord> baseline_runs;
  std::vector<RunRecord> proposed_runs;
};

// Each config must name exactly one method and share the data source. Seeds
// 0..n_seeds-1 re-split the data; both sides see the same splits.
HypothesisSuite RunHypothesisSuite(const ExperimentConfig& baseline,
                                   const ExperimentConfig& proposed,
                                   int n_seeds = 50,
                                   double alpha = kDefaultAlpha);

// One experiment config plus the two methods to compare.
struct HypothesisConfig {
  ExperimentConfig base;
  Method baseline = Method::kCca;
  Method proposed = Method::kFrcca;
  int n_seeds = 50;
  double alpha = kDefaultAlpha;
};

// Accepts the experiment keys plus baseline_method, proposed_method,
// n_seeds and alpha.
HypothesisConfig HypothesisConfigFromJson(const nlohmann::json& j);
HypothesisSuite RunHypothesisSuite(const HypothesisConfig& config);

nlohmann::ordered_json HypothesisJson(const HypothesisSuite& suite);
std::string HypothesisTsv(const HypothesisSuite& suite);

struct FitTimes {
  std::vector<double> cca_seconds;
  std::vector<double> frcca_seconds;
};

// Wall-clock fit times on the full data, `repeats` fits per method.
FitTimes TimeFits(const TabularData& data, int rank, double ridge, int repeats);

}  // namespace faircca

#endif  // FAIRCCA_EXPERIMENT_HPP_

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

#ifndef FAIRCCA_FAIRMETRICS_HPP_
#define FAIRCCA_FAIRMETRICS_HPP_

#include <cstdint>
#include <string>

#include "faircca/linalg.hpp"

namespace faircca {

// One evaluation batch. `scores` are monotone decision scores mapped into
// [0, 1] (only GSG reads them); predictions, labels and groups are 0/1.
struct EvaluationFrame {
  Vector scores;
  BinaryVector predictions;
  BinaryVector labels;
  BinaryVector groups;
};

// Conditions that were tolerated rather than raised.
struct MetricFlags {
  bool eog_skipped_cells = false;
  bool gsg_degenerate_scores = false;
  bool precision_undefined = false;
  bool recall_undefined = false;
};

inline constexpr int kDefaultGsgBins = 10;

// |P(pred = 1 | A = 0) - P(pred = 1 | A = 1)|; signed variant returns
// group 0 minus group 1. Throws MissingGroup when a group is empty.
double Dpg(const EvaluationFrame& frame, bool signed_gap = false);

// Average over label strata of the between-group prediction-rate gap. Strata
// lacking one of the groups are skipped (flagged) and the average is taken
// over the remaining strata; 0 if none remain.
double Eog(const EvaluationFrame& frame, MetricFlags* flags = nullptr);

// Quantile-binned sufficiency gap:
//   sum_b w_b * sum_a w_{a|b} * |mean(Y | b) - mean(Y | b, A = a)|
// Bins are assigned by score rank; tied scores always share a bin.
double Gsg(const EvaluationFrame& frame, int n_bins = kDefaultGsgBins,
           MetricFlags* flags = nullptr);

struct ClassificationMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double roc_auc = 0.5;
};

// Label 1 is the positive class. ROC-AUC is the Mann-Whitney statistic with
// ties counted as 1/2; it needs both labels (SingleClass otherwise).
ClassificationMetrics ComputeClassificationMetrics(const EvaluationFrame& frame,
                                                   MetricFlags* flags = nullptr);

struct ReportMetadata {
  std::uint64_t seed = 0;
  std::string method;
  std::string modality;
};

struct FairnessReport {
  double dpg = 0.0;
  double eog = 0.0;
  double gsg = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double roc_auc = 0.5;
  MetricFlags flags;
  ReportMetadata metadata;
};

FairnessReport EvaluateFairness(const EvaluationFrame& frame,
                                ReportMetadata metadata,
                                int gsg_bins = kDefaultGsgBins);

// Throws ShapeMismatch / InvalidArgument on inconsistent frames.
void ValidateFrame(const EvaluationFrame& frame, bool need_scores);

}  // namespace faircca

#endif  // FAIRCCA_FAIRMETRICS_HPP_

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

#include "faircca/fairmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "faircca/error.hpp"

namespace faircca {

namespace {

void CheckBinary(const BinaryVector& v, const char* name) {
  for (int x : v) {
    if (x != 0 && x != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + " must hold 0/1 values");
    }
  }
}

struct RateAccumulator {
  double sum = 0.0;
  std::size_t count = 0;
  double mean() const { return sum / static_cast<double>(count); }
};

}  // namespace

void ValidateFrame(const EvaluationFrame& frame, bool need_scores) {
  const std::size_t n = frame.labels.size();
  if (frame.predictions.size() != n || frame.groups.size() != n ||
      (need_scores && static_cast<std::size_t>(frame.scores.size()) != n)) {
    throw Error(ErrorCode::kShapeMismatch, "evaluation frame lengths differ");
  }
  CheckBinary(frame.predictions, "predictions");
  CheckBinary(frame.labels, "labels");
  CheckBinary(frame.groups, "groups");
}

double Dpg(const EvaluationFrame& frame, bool signed_gap) {
  ValidateFrame(frame, false);
  RateAccumulator rate[2];
  for (std::size_t i = 0; i < frame.groups.size(); ++i) {
    RateAccumulator& acc = rate[frame.groups[i]];
    acc.sum += frame.predictions[i];
    ++acc.count;
  }
  if (rate[0].count == 0 || rate[1].count == 0) {
    throw Error(ErrorCode::kMissingGroup, "DPG needs both groups");
  }
  const double gap = rate[0].mean() - rate[1].mean();
  return signed_gap ? gap : std::abs(gap);
}

double Eog(const EvaluationFrame& frame, MetricFlags* flags) {
  ValidateFrame(frame, false);
  RateAccumulator cell[2][2];  // [label][group]
  for (std::size_t i = 0; i < frame.groups.size(); ++i) {
    RateAccumulator& acc = cell[frame.labels[i]][frame.groups[i]];
    acc.sum += frame.predictions[i];
    ++acc.count;
  }
  double total = 0.0;
  int strata = 0;
  bool skipped = false;
  for (auto& stratum : cell) {
    if (stratum[0].count == 0 || stratum[1].count == 0) {
      // A stratum with no samples at all is simply absent, not a skip.
      skipped |= stratum[0].count + stratum[1].count > 0;
      continue;
    }
    total += std::abs(stratum[0].mean() - stratum[1].mean());
    ++strata;
  }
  if (flags != nullptr && skipped) flags->eog_skipped_cells = true;
  return strata == 0 ? 0.0 : total / strata;
}

double Gsg(const EvaluationFrame& frame, int n_bins, MetricFlags* flags) {
  ValidateFrame(frame, true);
  if (n_bins < 2) {
    throw Error(ErrorCode::kInvalidArgument, "GSG needs at least two bins");
  }
  const std::size_t n = frame.labels.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty frame");
  for (Eigen::Index i = 0; i < frame.scores.size(); ++i) {
    const double s = frame.scores(i);
    if (!(s >= 0.0 && s <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "GSG scores must lie in [0, 1]");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return frame.scores(static_cast<Eigen::Index>(a)) <
           frame.scores(static_cast<Eigen::Index>(b));
  });
  std::vector<int> bin(n);
  int current = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t idx = order[p];
    const bool tied = p > 0 && frame.scores(static_cast<Eigen::Index>(idx)) ==
                                   frame.scores(static_cast<Eigen::Index>(order[p - 1]));
    if (!tied) {
      current = static_cast<int>(p * static_cast<std::size_t>(n_bins) / n);
    }
    bin[idx] = current;
  }
  if (flags != nullptr &&
      frame.scores.maxCoeff() == frame.scores.minCoeff()) {
    flags->gsg_degenerate_scores = true;
  }

  struct BinStats {
    double label_sum = 0.0;
    std::size_t count = 0;
    double group_label_sum[2] = {0.0, 0.0};
    std::size_t group_count[2] = {0, 0};
  };
  std::vector<BinStats> bins(static_cast<std::size_t>(n_bins));
  for (std::size_t i = 0; i < n; ++i) {
    BinStats& b = bins[static_cast<std::size_t>(bin[i])];
    b.label_sum += frame.labels[i];
    ++b.count;
    b.group_label_sum[frame.groups[i]] += frame.labels[i];
    ++b.group_count[frame.groups[i]];
  }
  double gap = 0.0;
  for (const BinStats& b : bins) {
    if (b.count == 0) continue;
    const double m = b.label_sum / static_cast<double>(b.count);
    double within = 0.0;
    for (int a = 0; a < 2; ++a) {
      if (b.group_count[a] == 0) continue;
      const double ma = b.group_label_sum[a] / static_cast<double>(b.group_count[a]);
      within += static_cast<double>(b.group_count[a]) / static_cast<double>(b.count) *
                std::abs(m - ma);
    }
    gap += static_cast<double>(b.count) / static_cast<double>(n) * within;
  }
  return gap;
}

ClassificationMetrics ComputeClassificationMetrics(const EvaluationFrame& frame,
                                                   MetricFlags* flags) {
  ValidateFrame(frame, true);
  const std::size_t n = frame.labels.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty frame");
  std::size_t tp = 0, fp = 0, fn = 0, correct = 0, positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int p = frame.predictions[i];
    const int t = frame.labels[i];
    correct += p == t;
    positives += t;
    tp += p == 1 && t == 1;
    fp += p == 1 && t == 0;
    fn += p == 0 && t == 1;
  }
  ClassificationMetrics m;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(n);
  if (tp + fp == 0) {
    if (flags != nullptr) flags->precision_undefined = true;
  } else {
    m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  }
  if (tp + fn == 0) {
    if (flags != nullptr) flags->recall_undefined = true;
  } else {
    m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  }

  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorCode::kSingleClass, "ROC-AUC needs both labels");
  }
  // Average ranks (1-based) with ties sharing the mean rank.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return frame.scores(static_cast<Eigen::Index>(a)) <
           frame.scores(static_cast<Eigen::Index>(b));
  });
  double positive_rank_sum = 0.0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    const double s = frame.scores(static_cast<Eigen::Index>(order[start]));
    while (end < n && frame.scores(static_cast<Eigen::Index>(order[end])) == s) ++end;
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) {
      if (frame.labels[order[k]] == 1) positive_rank_sum += rank;
    }
    start = end;
  }
  const double np = static_cast<double>(positives);
  const double nn = static_cast<double>(negatives);
  m.roc_auc = (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
  return m;
}

FairnessReport EvaluateFairness(const EvaluationFrame& frame,
                                ReportMetadata metadata, int gsg_bins) {
  FairnessReport report;
  report.dpg = Dpg(frame);
  report.eog = Eog(frame, &report.flags);
  report.gsg = Gsg(frame, gsg_bins, &report.flags);
  const ClassificationMetrics m = ComputeClassificationMetrics(frame, &report.flags);
  report.accuracy = m.accuracy;
  report.precision = m.precision;
  report.recall = m.recall;
  report.roc_auc = m.roc_auc;
  report.metadata = std::move(metadata);
  return report;
}

}  // namespace faircca

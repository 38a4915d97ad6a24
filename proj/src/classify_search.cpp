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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "faircca/error.hpp"
#include "faircca/model_selection.hpp"

namespace faircca {

namespace {

using Rng = std::mt19937_64;

Rng SeededRng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

std::array<std::vector<Eigen::Index>, 2> ShuffledByClass(
    const BinaryVector& labels, Rng& rng) {
  std::array<std::vector<Eigen::Index>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l != 0 && l != 1) throw Error(ErrorCode::kInvalidArgument, "labels must be 0/1");
    by_class[static_cast<std::size_t>(l)].push_back(static_cast<Eigen::Index>(i));
  }
  for (auto& members : by_class) std::shuffle(members.begin(), members.end(), rng);
  return by_class;
}

double ScoreFold(Scorer scorer, const EvaluationFrame& frame, int gsg_bins) {
  switch (scorer) {
    case Scorer::kDpg: return Dpg(frame);
    case Scorer::kEog: return Eog(frame);
    case Scorer::kGsg: return Gsg(frame, gsg_bins);
    case Scorer::kAccuracy: {
      std::size_t correct = 0;
      for (std::size_t i = 0; i < frame.labels.size(); ++i) {
        correct += frame.labels[i] == frame.predictions[i];
      }
      return static_cast<double>(correct) / static_cast<double>(frame.labels.size());
    }
  }
  return 0.0;
}

}  // namespace

std::vector<Split> StratifiedKFold(const BinaryVector& labels, int k,
                                   std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be at least 2");
  Rng rng = SeededRng(seed, 11);
  const auto by_class = ShuffledByClass(labels, rng);
  for (const auto& members : by_class) {
    if (!members.empty() && static_cast<int>(members.size()) < k) {
      throw Error(ErrorCode::kClassTooSmall,
                  "a class has " + std::to_string(members.size()) +
                      " members, fewer than k = " + std::to_string(k));
    }
  }
  std::vector<std::vector<Eigen::Index>> fold_members(static_cast<std::size_t>(k));
  std::size_t position = 0;
  for (const auto& members : by_class) {
    for (Eigen::Index idx : members) {
      fold_members[position % static_cast<std::size_t>(k)].push_back(idx);
      ++position;
    }
  }
  std::vector<Split> folds(static_cast<std::size_t>(k));
  for (std::size_t f = 0; f < folds.size(); ++f) {
    folds[f].test = fold_members[f];
    std::sort(folds[f].test.begin(), folds[f].test.end());
    for (std::size_t g = 0; g < folds.size(); ++g) {
      if (g == f) continue;
      folds[f].train.insert(folds[f].train.end(), fold_members[g].begin(),
                            fold_members[g].end());
    }
    std::sort(folds[f].train.begin(), folds[f].train.end());
  }
  return folds;
}

Split TrainTestSplit(const BinaryVector& labels, double train_fraction,
                     std::uint64_t seed, bool stratify) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::kConfigError, "train fraction must lie in (0, 1)");
  }
  Rng rng = SeededRng(seed, 7);
  Split split;
  auto cut = [&](const std::vector<Eigen::Index>& members) {
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    split.train.insert(split.train.end(), members.begin(), members.begin() + n_train);
    split.test.insert(split.test.end(), members.begin() + n_train, members.end());
  };
  if (stratify) {
    for (const auto& members : ShuffledByClass(labels, rng)) cut(members);
  } else {
    std::vector<Eigen::Index> all(labels.size());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    cut(all);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Matrix SelectRows(const Matrix& x, const std::vector<Eigen::Index>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  }
  return out;
}

BinaryVector SelectEntries(const BinaryVector& v,
                           const std::vector<Eigen::Index>& rows) {
  BinaryVector out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[i] = v[static_cast<std::size_t>(rows[i])];
  }
  return out;
}

std::string_view ScorerName(Scorer scorer) {
  switch (scorer) {
    case Scorer::kDpg: return "dpg";
    case Scorer::kEog: return "eog";
    case Scorer::kGsg: return "gsg";
    case Scorer::kAccuracy: return "accuracy";
  }
  return "dpg";
}

Scorer ParseScorer(std::string_view name) {
  for (Scorer s : kAllScorers) {
    if (ScorerName(s) == name) return s;
  }
  throw Error(ErrorCode::kConfigError, "unknown scorer '" + std::string(name) + "'");
}

bool LowerIsBetter(Scorer scorer) { return scorer != Scorer::kAccuracy; }

TrainedClassifier TrainWith(const Hyperparameters& params, const Matrix& x,
                            const BinaryVector& labels) {
  if (params.classifier == ClassifierKind::kLogreg) {
    return TrainLogreg(x, labels, 1.0 / params.c);
  }
  return TrainSvm(x, labels, params.c, params.kernel);
}

SearchResult RandomSearch(const Matrix& x, const BinaryVector& labels,
                          const BinaryVector& groups, const SearchSpace& space,
                          std::uint64_t seed) {
  if (space.n_iter < 1) throw Error(ErrorCode::kConfigError, "n_iter must be >= 1");
  if (space.kernels.empty()) throw Error(ErrorCode::kConfigError, "no kernels to search");
  if (static_cast<std::size_t>(x.rows()) != labels.size() ||
      labels.size() != groups.size()) {
    throw Error(ErrorCode::kShapeMismatch, "X, labels and groups differ in length");
  }
  const std::vector<Split> folds = StratifiedKFold(labels, space.k_folds, seed);

  // Every draw consumes the same number of variates so the trajectory does
  // not depend on which branches were taken.
  Rng rng = SeededRng(seed, 23);
  std::uniform_int_distribution<std::size_t> pick_kernel(0, space.kernels.size() - 1);
  std::uniform_real_distribution<double> draw_c(space.c_min, space.c_max);
  std::uniform_real_distribution<double> draw_gamma(space.gamma_min, space.gamma_max);
  std::uniform_real_distribution<double> draw_coef0(space.coef0_min, space.coef0_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SearchResult result;
  result.scorer = space.scorer;
  result.table.reserve(static_cast<std::size_t>(space.n_iter));
  for (int it = 0; it < space.n_iter; ++it) {
    CandidateResult cand;
    Hyperparameters& hp = cand.params;
    hp.classifier = space.classifier;
    hp.kernel.kind = space.kernels[pick_kernel(rng)];
    hp.c = draw_c(rng);
    const bool numeric_gamma = unit(rng) < space.numeric_gamma_probability;
    const double gamma_value = draw_gamma(rng);
    const bool use_scale = unit(rng) < 0.5;
    const double coef0 = draw_coef0(rng);
    hp.kernel.gamma_rule = numeric_gamma ? GammaRule::kValue
                           : use_scale   ? GammaRule::kScale
                                         : GammaRule::kAuto;
    hp.kernel.gamma = gamma_value;
    hp.kernel.coef0 = hp.kernel.kind == KernelKind::kSigmoid ? coef0 : 0.0;

    std::array<double, 4> sums{};
    try {
      for (const Split& fold : folds) {
        const Matrix x_train = SelectRows(x, fold.train);
        const Matrix x_val = SelectRows(x, fold.test);
        const TrainedClassifier model =
            TrainWith(hp, x_train, SelectEntries(labels, fold.train));
        EvaluationFrame frame;
        frame.predictions = PredictLabels(model, x_val);
        frame.scores = PredictUnitScores(model, x_val);
        frame.labels = SelectEntries(labels, fold.test);
        frame.groups = SelectEntries(groups, fold.test);
        for (Scorer s : kAllScorers) {
          sums[static_cast<std::size_t>(s)] += ScoreFold(s, frame, space.gsg_bins);
        }
      }
      for (std::size_t s = 0; s < sums.size(); ++s) {
        cand.cv_scores[s] = sums[s] / static_cast<double>(folds.size());
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonConvergence &&
          e.code() != ErrorCode::kSingleClass &&
          e.code() != ErrorCode::kMissingGroup) {
        throw;
      }
      cand.failed = true;
      cand.failure = e.what();
    }
    result.table.push_back(std::move(cand));
  }

  bool any_ok = false;
  for (Scorer s : kAllScorers) {
    const auto si = static_cast<std::size_t>(s);
    std::size_t best = result.table.size();
    for (std::size_t c = 0; c < result.table.size(); ++c) {
      const CandidateResult& cand = result.table[c];
      if (cand.failed) continue;
      any_ok = true;
      if (best == result.table.size()) {
        best = c;
        continue;
      }
      const double v = cand.cv_scores[si];
      const double incumbent = result.table[best].cv_scores[si];
      if (LowerIsBetter(s) ? v < incumbent : v > incumbent) best = c;
    }
    result.best[si] = best;
  }
  if (!any_ok) {
    throw Error(ErrorCode::kNonConvergence, "every search candidate failed to train");
  }
  return result;
}

}  // namespace faircca

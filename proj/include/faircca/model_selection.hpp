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

#ifndef FAIRCCA_MODEL_SELECTION_HPP_
#define FAIRCCA_MODEL_SELECTION_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "faircca/classify.hpp"
#include "faircca/fairmetrics.hpp"
#include "faircca/linalg.hpp"

namespace faircca {

struct Split {
  std::vector<Eigen::Index> train;
  std::vector<Eigen::Index> test;
};

// k folds; each class is shuffled and dealt round-robin so every fold holds
// floor or ceil of n_c / k members of class c. Throws ClassTooSmall when a
// present class has fewer than k members.
std::vector<Split> StratifiedKFold(const BinaryVector& labels, int k,
                                   std::uint64_t seed);

// Label-stratified holdout: round(fraction * n_c) of each class goes to
// train. With stratify = false the whole index set is shuffled and cut once.
Split TrainTestSplit(const BinaryVector& labels, double train_fraction,
                     std::uint64_t seed, bool stratify = true);

Matrix SelectRows(const Matrix& x, const std::vector<Eigen::Index>& rows);
BinaryVector SelectEntries(const BinaryVector& v,
                           const std::vector<Eigen::Index>& rows);

enum class Scorer { kDpg = 0, kEog = 1, kGsg = 2, kAccuracy = 3 };
inline constexpr std::array<Scorer, 4> kAllScorers{
    Scorer::kDpg, Scorer::kEog, Scorer::kGsg, Scorer::kAccuracy};

std::string_view ScorerName(Scorer scorer);
Scorer ParseScorer(std::string_view name);
// Fairness gaps are minimized, accuracy maximized.
bool LowerIsBetter(Scorer scorer);

struct SearchSpace {
  double c_min = 0.1;
  double c_max = 200.0;
  double gamma_min = 0.1;
  double gamma_max = 200.0;
  double coef0_min = 0.0;
  double coef0_max = 50.0;
  double numeric_gamma_probability = 0.8;
  std::vector<KernelKind> kernels{KernelKind::kRbf, KernelKind::kSigmoid};
  int n_iter = 50;
  int k_folds = 5;
  Scorer scorer = Scorer::kDpg;
  ClassifierKind classifier = ClassifierKind::kSvm;
  int gsg_bins = kDefaultGsgBins;
};

struct Hyperparameters {
  ClassifierKind classifier = ClassifierKind::kSvm;
  double c = 1.0;  // logreg uses lambda = 1 / c
  KernelSpec kernel;
};

TrainedClassifier TrainWith(const Hyperparameters& params, const Matrix& x,
                            const BinaryVector& labels);

struct CandidateResult {
  Hyperparameters params;
  // Mean over folds, indexed by Scorer.
  std::array<double, 4> cv_scores{};
  bool failed = false;
  std::string failure;
};

struct SearchResult {
  std::vector<CandidateResult> table;
  // Winner per scorer (index into table); earliest draw wins ties.
  std::array<std::size_t, 4> best{};
  Scorer scorer = Scorer::kDpg;

  const CandidateResult& winner() const {
    return table[best[static_cast<std::size_t>(scorer)]];
  }
  const CandidateResult& winner(Scorer s) const {
    return table[best[static_cast<std::size_t>(s)]];
  }
};

// Random search over the space with stratified k-fold CV. Fairness scorers
// are computed per validation fold with that fold's groups. Candidates whose
// training fails are kept in the table (failed = true) and never win; if all
// fail, NonConvergence is thrown.
SearchResult RandomSearch(const Matrix& x, const BinaryVector& labels,
                          const BinaryVector& groups, const SearchSpace& space,
                          std::uint64_t seed);

}  // namespace faircca

#endif  // FAIRCCA_MODEL_SELECTION_HPP_

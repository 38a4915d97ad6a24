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

#include "faircca/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "faircca/error.hpp"
#include "faircca/fair_projection.hpp"

namespace faircca {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string_view MethodName(Method m) {
  switch (m) {
    case Method::kRaw: return "raw";
    case Method::kCca: return "cca";
    case Method::kFrcca: return "frcca";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  if (name == "raw") return Method::kRaw;
  if (name == "cca") return Method::kCca;
  if (name == "frcca") return Method::kFrcca;
  throw Error(ErrorCode::kConfigError, "unknown method '" + std::string(name) + "'");
}

std::string_view ModalityName(Modality m) { return m == Modality::kX ? "X" : "Y"; }

namespace {

ClassifierKind ParseClassifier(std::string_view name) {
  if (name == "svm") return ClassifierKind::kSvm;
  if (name == "logreg") return ClassifierKind::kLogreg;
  throw Error(ErrorCode::kConfigError, "unknown classifier '" + std::string(name) + "'");
}

double Seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd Summarize(const std::vector<double>& v) {
  MeanStd s;
  if (v.empty()) return s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return s;
}

}  // namespace

void ValidateExperimentConfig(const ExperimentConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kConfigError, m); };
  if (c.synth.has_value() == c.csv.has_value()) fail("exactly one data source (synth or csv) is required");
  if (c.synth) ValidateSynthConfig(*c.synth);
  if (c.methods.empty()) fail("methods must be non-empty");
  if (c.rank < 1) fail("rank must be >= 1");
  if (c.unsupervised_rank < 1) fail("unsupervised_rank must be >= 1");
  if (!(c.ridge >= 0.0) || !std::isfinite(c.ridge)) fail("ridge must be finite and >= 0");
  if (!(c.split_fraction > 0.0 && c.split_fraction < 1.0)) fail("split_fraction must lie in (0, 1)");
  if (c.eval_seeds.empty()) fail("eval_seeds must be non-empty");
  if (c.classifiers.empty()) fail("classifiers must be non-empty");
  if (c.n_iter < 1) fail("n_iter must be >= 1");
  if (c.k_folds < 2) fail("k_folds must be >= 2");
  if (c.gsg_bins < 2) fail("gsg_bins must be >= 2");
}

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "data") {
        if (value.contains("synth")) c.synth = SynthConfigFromJson(value.at("synth"));
        if (value.contains("csv")) {
          const auto& p = value.at("csv");
          if (p.is_string()) {
            c.csv = CsvPaths::InDirectory(p.get<std::string>());
          } else {
            c.csv = CsvPaths{p.at("x").get<std::string>(), p.at("y").get<std::string>(),
                             p.at("z").get<std::string>(), p.at("labels").get<std::string>()};
          }
        }
        for (const auto& [k, v] : value.items()) {
          (void)v;
          if (k != "synth" && k != "csv") {
            throw Error(ErrorCode::kConfigError, "unknown data key '" + k + "'");
          }
        }
      } else if (key == "methods") {
        c.methods.clear();
        for (const auto& m : value) c.methods.push_back(ParseMethod(m.get<std::string>()));
      } else if (key == "rank") {
        c.rank = value.get<int>();
      } else if (key == "unsupervised_rank") {
        c.unsupervised_rank = value.get<int>();
      } else if (key == "ridge") {
        c.ridge = value.get<double>();
      } else if (key == "split_fraction") {
        c.split_fraction = value.get<double>();
      } else if (key == "stratify") {
        c.stratify = value.get<bool>();
      } else if (key == "tuning_seed") {
        c.tuning_seed = value.get<std::uint64_t>();
      } else if (key == "eval_seeds") {
        c.eval_seeds = value.get<std::vector<std::uint64_t>>();
      } else if (key == "classifiers") {
        c.classifiers.clear();
        for (const auto& k : value) c.classifiers.push_back(ParseClassifier(k.get<std::string>()));
      } else if (key == "n_iter") {
        c.n_iter = value.get<int>();
      } else if (key == "k_folds") {
        c.k_folds = value.get<int>();
      } else if (key == "scorer") {
        c.scorer = ParseScorer(value.get<std::string>());
      } else if (key == "gsg_bins") {
        c.gsg_bins = value.get<int>();
      } else if (key == "output_dir") {
        c.output_dir = value.get<std::string>();
      } else {
        throw Error(ErrorCode::kConfigError, "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (CategoryOf(e.code()) == ErrorCategory::kConfig) throw;
    throw Error(ErrorCode::kConfigError, e.what());
  }
  if (!c.synth && !c.csv) c.synth = SynthConfig{};
  ValidateExperimentConfig(c);
  return c;
}

ojson ExperimentConfigToJson(const ExperimentConfig& c) {
  ojson j;
  if (c.synth) {
    j["data"] = {{"synth", SynthConfigToJson(*c.synth)}};
  } else if (c.csv) {
    j["data"] = {{"csv",
                  {{"x", c.csv->x.string()},
                   {"y", c.csv->y.string()},
                   {"z", c.csv->z.string()},
                   {"labels", c.csv->labels.string()}}}};
  }
  ojson methods = ojson::array();
  for (Method m : c.methods) methods.push_back(MethodName(m));
  j["methods"] = methods;
  j["rank"] = c.rank;
  j["unsupervised_rank"] = c.unsupervised_rank;
  j["ridge"] = c.ridge;
  j["split_fraction"] = c.split_fraction;
  j["stratify"] = c.stratify;
  j["tuning_seed"] = c.tuning_seed;
  j["eval_seeds"] = c.eval_seeds;
  ojson classifiers = ojson::array();
  for (ClassifierKind k : c.classifiers) classifiers.push_back(ClassifierKindName(k));
  j["classifiers"] = classifiers;
  j["n_iter"] = c.n_iter;
  j["k_folds"] = c.k_folds;
  j["scorer"] = ScorerName(c.scorer);
  j["gsg_bins"] = c.gsg_bins;
  return j;
}

TabularData LoadData(const ExperimentConfig& config) {
  if (config.synth) {
    SynthDataset d = GenerateDataset(*config.synth);
    return TabularData{std::move(d.x), std::move(d.y), std::move(d.z), std::move(d.labels)};
  }
  if (config.csv) return IngestCsv(*config.csv);
  throw Error(ErrorCode::kConfigError, "no data source");
}

namespace {

using Views = std::array<Representation, 2>;

Views FitViews(const TabularData& data, const Split& split, Method method,
               int rank, double ridge) {
  const Matrix x_tr = SelectRows(data.x, split.train);
  const Matrix y_tr = SelectRows(data.y, split.train);
  const Matrix x_te = SelectRows(data.x, split.test);
  const Matrix y_te = SelectRows(data.y, split.test);
  Views views;
  const auto start = std::chrono::steady_clock::now();
  switch (method) {
    case Method::kRaw: {
      const Standardized sx = Standardize(x_tr);
      const Standardized sy = Standardize(y_tr);
      views[0].train = sx.data;
      views[0].test = sx.standardizer.Apply(x_te);
      views[1].train = sy.data;
      views[1].test = sy.standardizer.Apply(y_te);
      break;
    }
    case Method::kCca: {
      const CanonicalModel m = FitCca(x_tr, y_tr, rank, ridge);
      const double t = Seconds(std::chrono::steady_clock::now() - start);
      views[0] = {Project(x_tr, m, Side::kX), Project(x_te, m, Side::kX), t, 0.0};
      views[1] = {Project(y_tr, m, Side::kY), Project(y_te, m, Side::kY), t, 0.0};
      return views;
    }
    case Method::kFrcca: {
      const BinaryVector g = ToZeroOne(SelectEntries(data.z, split.train));
      FairFitOptions opts;
      opts.ridge = ridge;
      const FairCanonicalModel fm = FitFrcca(x_tr, y_tr, g, rank, opts);
      const double t = Seconds(std::chrono::steady_clock::now() - start);
      const double resid = ConstraintResidual(fm.model, x_tr, y_tr, CenterSensitive(g));
      views[0] = {Project(x_tr, fm.model, Side::kX), Project(x_te, fm.model, Side::kX), t, resid};
      views[1] = {Project(y_tr, fm.model, Side::kY), Project(y_te, fm.model, Side::kY), t, resid};
      return views;
    }
  }
  const double t = Seconds(std::chrono::steady_clock::now() - start);
  views[0].fit_seconds = views[1].fit_seconds = t;
  return views;
}

struct Encoded {
  BinaryVector labels;
  BinaryVector groups;
};

SearchResult Tune(const Representation& rep, const Encoded& enc, const Split& split,
                  const ExperimentConfig& config, ClassifierKind classifier) {
  SearchSpace space;
  space.n_iter = config.n_iter;
  space.k_folds = config.k_folds;
  space.scorer = config.scorer;
  space.classifier = classifier;
  space.gsg_bins = config.gsg_bins;
  return RandomSearch(rep.train, SelectEntries(enc.labels, split.train),
                      SelectEntries(enc.groups, split.train), space, config.tuning_seed);
}

FairnessReport Evaluate(const Representation& rep, const Encoded& enc, const Split& split,
                        const Hyperparameters& params, const ReportMetadata& meta,
                        int gsg_bins) {
  const TrainedClassifier clf = TrainWith(params, rep.train, SelectEntries(enc.labels, split.train));
  EvaluationFrame frame;
  frame.scores = PredictUnitScores(clf, rep.test);
  frame.predictions = PredictLabels(clf, rep.test);
  frame.labels = SelectEntries(enc.labels, split.test);
  frame.groups = SelectEntries(enc.groups, split.test);
  return EvaluateFairness(frame, meta, gsg_bins);
}

Encoded Encode(const TabularData& data) {
  return Encoded{ToZeroOne(data.labels), ToZeroOne(data.z)};
}

}  // namespace

Representation BuildRepresentation(const TabularData& data, const Split& split,
                                   Method method, Modality modality, int rank,
                                   double ridge) {
  Views v = FitViews(data, split, method, rank, ridge);
  return std::move(v[modality == Modality::kX ? 0 : 1]);
}

std::vector<DimensionDelta> UnsupervisedDeltas(const TabularData& data, int rank,
                                               double ridge) {
  const CanonicalModel cca = FitCca(data.x, data.y, rank, ridge);
  FairFitOptions opts;
  opts.ridge = ridge;
  const BinaryVector groups = ToZeroOne(data.z);
  const FairCanonicalModel fr = FitFrcca(data.x, data.y, groups, rank, opts);
  const SensitiveVector zc = CenterSensitive(groups);
  const Vector rho_c = CanonicalCorrelations(cca, data.x, data.y);
  const Vector rho_f = CanonicalCorrelations(fr.model, data.x, data.y);
  const Vector gam_c = FairnessGamma(cca, data.x, data.y, zc);
  const Vector gam_f = FairnessGamma(fr.model, data.x, data.y, zc);
  const Vector dc = PctChange(rho_f, rho_c, ChangeKind::kCorrelation);
  const Vector df = PctChange(gam_f, gam_c, ChangeKind::kFairness);
  std::vector<DimensionDelta> out(static_cast<std::size_t>(rank));
  for (int r = 0; r < rank; ++r) {
    out[static_cast<std::size_t>(r)] = {r + 1, rho_c(r), rho_f(r), gam_c(r),
                                        gam_f(r), dc(r),     df(r)};
  }
  return out;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  ValidateExperimentConfig(config);
  const TabularData data = LoadData(config);
  const Encoded enc = Encode(data);
  ExperimentResult result;

  const Split tune_split =
      TrainTestSplit(enc.labels, config.split_fraction, config.tuning_seed, config.stratify);
  for (Method method : config.methods) {
    std::optional<Views> views;
    std::string fit_failure;
    try {
      views = FitViews(data, tune_split, method, config.rank, config.ridge);
    } catch (const Error& e) {
      fit_failure = e.what();
    }
    for (Modality modality : kModalities) {
      for (ClassifierKind classifier : config.classifiers) {
        TunedCell cell{{method, modality, classifier}, false, {}, {}};
        if (!views) {
          cell.failed = true;
          cell.failure = fit_failure;
        } else {
          try {
            cell.search = Tune((*views)[modality == Modality::kX ? 0 : 1], enc, tune_split,
                               config, classifier);
          } catch (const Error& e) {
            cell.failed = true;
            cell.failure = e.what();
          }
        }
        result.tuning.push_back(std::move(cell));
      }
    }
  }

  for (std::uint64_t seed : config.eval_seeds) {
    const Split split = TrainTestSplit(enc.labels, config.split_fraction, seed, config.stratify);
    std::size_t cell_index = 0;
    for (Method method : config.methods) {
      std::optional<Views> views;
      std::string fit_failure;
      try {
        views = FitViews(data, split, method, config.rank, config.ridge);
      } catch (const Error& e) {
        fit_failure = e.what();
      }
      for (Modality modality : kModalities) {
        for (ClassifierKind classifier : config.classifiers) {
          const TunedCell& tuned = result.tuning[cell_index++];
          RunRecord run;
          run.seed = seed;
          run.method = method;
          run.modality = modality;
          run.classifier = classifier;
          run.report.metadata = {seed, std::string(MethodName(method)),
                                 std::string(ModalityName(modality))};
          if (tuned.failed) {
            run.failed = true;
            run.failure = "tuning failed: " + tuned.failure;
          } else if (!views) {
            run.failed = true;
            run.failure = fit_failure;
          } else {
            const Representation& rep = (*views)[modality == Modality::kX ? 0 : 1];
            run.params = tuned.search.winner().params;
            run.fit_seconds = rep.fit_seconds;
            run.constraint_residual = rep.constraint_residual;
            try {
              run.report = Evaluate(rep, enc, split, run.params, run.report.metadata,
                                    config.gsg_bins);
            } catch (const Error& e) {
              run.failed = true;
              run.failure = e.what();
            }
          }
          result.runs.push_back(std::move(run));
        }
      }
    }
  }

  const auto has = [&](Method m) {
    return std::find(config.methods.begin(), config.methods.end(), m) != config.methods.end();
  };
  if (has(Method::kCca) && has(Method::kFrcca)) {
    try {
      result.deltas = UnsupervisedDeltas(data, config.unsupervised_rank, config.ridge);
    } catch (const Error& e) {
      result.deltas_failure = e.what();
    }
  }
  return result;
}

namespace {

ojson ParamsJson(const Hyperparameters& p) {
  ojson j;
  j["kind"] = ClassifierKindName(p.classifier);
  j["C"] = p.c;
  if (p.classifier == ClassifierKind::kSvm) {
    j["kernel"] = KernelKindName(p.kernel.kind);
    switch (p.kernel.gamma_rule) {
      case GammaRule::kValue: j["gamma"] = p.kernel.gamma; break;
      case GammaRule::kScale: j["gamma"] = "scale"; break;
      case GammaRule::kAuto: j["gamma"] = "auto"; break;
    }
    j["coef0"] = p.kernel.coef0;
  } else {
    j["kernel"] = nullptr;
    j["gamma"] = nullptr;
    j["coef0"] = nullptr;
  }
  return j;
}

ojson ReportJson(const FairnessReport& r) {
  ojson j;
  j["dpg"] = r.dpg;
  j["eog"] = r.eog;
  j["gsg"] = r.gsg;
  j["accuracy"] = r.accuracy;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["roc_auc"] = r.roc_auc;
  j["flags"] = {{"eog_skipped_cells", r.flags.eog_skipped_cells},
                {"gsg_degenerate_scores", r.flags.gsg_degenerate_scores},
                {"precision_undefined", r.flags.precision_undefined},
                {"recall_undefined", r.flags.recall_undefined}};
  return j;
}

const std::array<std::pair<const char*, double FairnessReport::*>, 7> kReportFields{{
    {"dpg", &FairnessReport::dpg},
    {"eog", &FairnessReport::eog},
    {"gsg", &FairnessReport::gsg},
    {"accuracy", &FairnessReport::accuracy},
    {"precision", &FairnessReport::precision},
    {"recall", &FairnessReport::recall},
    {"roc_auc", &FairnessReport::roc_auc},
}};

}  // namespace

ojson RunRecordJson(const RunRecord& run) {
  ojson j;
  j["seed"] = run.seed;
  j["method"] = MethodName(run.method);
  j["modality"] = ModalityName(run.modality);
  j["classifier"] = ClassifierKindName(run.classifier);
  if (run.failed) {
    j["failed"] = true;
    j["failure"] = run.failure;
    return j;
  }
  j["failed"] = false;
  j["params"] = ParamsJson(run.params);
  j["report"] = ReportJson(run.report);
  if (run.method == Method::kFrcca) j["constraint_residual"] = run.constraint_residual;
  return j;
}

ojson SummaryJson(const ExperimentConfig& config, const ExperimentResult& result) {
  ojson j;
  j["config"] = ExperimentConfigToJson(config);
  ojson cells = ojson::array();
  for (const TunedCell& cell : result.tuning) {
    ojson c;
    c["method"] = MethodName(cell.key.method);
    c["modality"] = ModalityName(cell.key.modality);
    c["classifier"] = ClassifierKindName(cell.key.classifier);
    std::vector<const RunRecord*> ok;
    int failed = 0;
    double max_resid = 0.0;
    for (const RunRecord& r : result.runs) {
      if (r.method != cell.key.method || r.modality != cell.key.modality ||
          r.classifier != cell.key.classifier) {
        continue;
      }
      if (r.failed) {
        ++failed;
      } else {
        ok.push_back(&r);
        max_resid = std::max(max_resid, r.constraint_residual);
      }
    }
    c["n_ok"] = ok.size();
    c["n_failed"] = failed;
    ojson metrics;
    for (const auto& [name, field] : kReportFields) {
      std::vector<double> v;
      for (const RunRecord* r : ok) v.push_back(r->report.*field);
      const MeanStd s = Summarize(v);
      metrics[name] = {{"mean", s.mean}, {"std", s.std}};
    }
    c["metrics"] = metrics;
    if (cell.key.method == Method::kFrcca) c["max_constraint_residual"] = max_resid;
    cells.push_back(std::move(c));
  }
  j["cells"] = cells;
  if (!result.deltas.empty()) {
    std::vector<double> dc, df;
    for (const auto& d : result.deltas) {
      dc.push_back(d.delta_corr_pct);
      df.push_back(d.delta_fair_pct);
    }
    j["deltas"] = {{"mean_delta_corr_pct", Summarize(dc).mean},
                   {"mean_delta_fair_pct", Summarize(df).mean}};
  } else if (!result.deltas_failure.empty()) {
    j["deltas"] = {{"failure", result.deltas_failure}};
  }
  return j;
}

ojson BestParamsJson(const ExperimentResult& result) {
  ojson cells = ojson::array();
  for (const TunedCell& cell : result.tuning) {
    ojson c;
    c["method"] = MethodName(cell.key.method);
    c["modality"] = ModalityName(cell.key.modality);
    c["classifier"] = ClassifierKindName(cell.key.classifier);
    if (cell.failed) {
      c["failure"] = cell.failure;
      cells.push_back(std::move(c));
      continue;
    }
    c["selected_by"] = ScorerName(cell.search.scorer);
    ojson best = ojson::array();
    for (Scorer s : kAllScorers) {
      const CandidateResult& w = cell.search.winner(s);
      ojson b = ParamsJson(w.params);
      b["scorer"] = ScorerName(s);
      b["cv_score"] = w.cv_scores[static_cast<std::size_t>(s)];
      best.push_back(std::move(b));
    }
    c["best"] = best;
    std::size_t n_failed = 0;
    for (const auto& t : cell.search.table) n_failed += t.failed ? 1 : 0;
    c["failed_candidates"] = n_failed;
    cells.push_back(std::move(c));
  }
  return cells;
}

ojson TimingJson(const ExperimentResult& result) {
  ojson j;
  for (Method m : {Method::kRaw, Method::kCca, Method::kFrcca}) {
    std::vector<double> t;
    for (const RunRecord& r : result.runs) {
      if (r.method == m && r.modality == Modality::kX && !r.failed &&
          r.classifier == result.runs.front().classifier) {
        t.push_back(r.fit_seconds);
      }
    }
    if (t.empty()) continue;
    const MeanStd s = Summarize(t);
    j[std::string(MethodName(m))] = {{"fit_seconds", t}, {"mean", s.mean}, {"std", s.std}};
  }
  return j;
}

std::string DeltasTsv(const std::vector<DimensionDelta>& deltas) {
  std::string out = "dim\tdelta_corr_pct\tdelta_fair_pct\n";
  for (const auto& d : deltas) {
    out += std::to_string(d.dim) + '\t' + FormatDouble(d.delta_corr_pct) + '\t' +
           FormatDouble(d.delta_fair_pct) + '\n';
  }
  return out;
}

void WriteExperimentOutputs(const fs::path& dir, const ExperimentConfig& config,
                            const ExperimentResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string());
  std::string lines;
  for (const RunRecord& r : result.runs) lines += RunRecordJson(r).dump() + '\n';
  WriteText(dir / "runs.jsonl", lines);
  WriteText(dir / "summary.json", SummaryJson(config, result).dump(2) + '\n');
  WriteText(dir / "best_params.json", BestParamsJson(result).dump(2) + '\n');
  WriteText(dir / "deltas.tsv", DeltasTsv(result.deltas));
  WriteText(dir / "timing.json", TimingJson(result).dump(2) + '\n');
}

HypothesisConfig HypothesisConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "config must be a JSON object");
  HypothesisConfig h;
  nlohmann::json rest = j;
  try {
    if (rest.contains("baseline_method")) {
      h.baseline = ParseMethod(rest["baseline_method"].get<std::string>());
      rest.erase("baseline_method");
    }
    if (rest.contains("proposed_method")) {
      h.proposed = ParseMethod(rest["proposed_method"].get<std::string>());
      rest.erase("proposed_method");
    }
    if (rest.contains("n_seeds")) {
      h.n_seeds = rest["n_seeds"].get<int>();
      rest.erase("n_seeds");
    }
    if (rest.contains("alpha")) {
      h.alpha = rest["alpha"].get<double>();
      rest.erase("alpha");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("config: ") + e.what());
  }
  h.base = ExperimentConfigFromJson(rest);
  return h;
}

namespace {

bool SameSource(const ExperimentConfig& a, const ExperimentConfig& b) {
  if (a.synth && b.synth) return SynthConfigToJson(*a.synth) == SynthConfigToJson(*b.synth);
  if (a.csv && b.csv) {
    return a.csv->x == b.csv->x && a.csv->y == b.csv->y && a.csv->z == b.csv->z &&
           a.csv->labels == b.csv->labels;
  }
  return false;
}

std::array<Hyperparameters, 2> TuneSide(const ExperimentConfig& config, const TabularData& data,
                                        const Encoded& enc) {
  const Split split =
      TrainTestSplit(enc.labels, config.split_fraction, config.tuning_seed, config.stratify);
  const Views views = FitViews(data, split, config.methods.front(), config.rank, config.ridge);
  std::array<Hyperparameters, 2> params;
  for (std::size_t m = 0; m < 2; ++m) {
    params[m] = Tune(views[m], enc, split, config, config.classifiers.front()).winner().params;
  }
  return params;
}

}  // namespace

HypothesisSuite RunHypothesisSuite(const ExperimentConfig& baseline,
                                   const ExperimentConfig& proposed, int n_seeds,
                                   double alpha) {
  ValidateExperimentConfig(baseline);
  ValidateExperimentConfig(proposed);
  if (baseline.methods.size() != 1 || proposed.methods.size() != 1) {
    throw Error(ErrorCode::kConfigError, "hypothesis configs must name exactly one method");
  }
  if (!SameSource(baseline, proposed)) {
    throw Error(ErrorCode::kConfigError, "hypothesis configs must share the data source");
  }
  if (n_seeds < 3) throw Error(ErrorCode::kConfigError, "n_seeds must be >= 3");

  const TabularData data = LoadData(baseline);
  const Encoded enc = Encode(data);
  const std::array<const ExperimentConfig*, 2> sides{&baseline, &proposed};
  std::array<std::array<Hyperparameters, 2>, 2> params;
  for (std::size_t s = 0; s < 2; ++s) params[s] = TuneSide(*sides[s], data, enc);

  HypothesisSuite suite;
  suite.baseline = baseline.methods.front();
  suite.proposed = proposed.methods.front();
  suite.n_seeds = n_seeds;
  suite.alpha = alpha;
  for (int seed = 0; seed < n_seeds; ++seed) {
    const auto useed = static_cast<std::uint64_t>(seed);
    for (std::size_t s = 0; s < 2; ++s) {
      const ExperimentConfig& cfg = *sides[s];
      const Split split = TrainTestSplit(enc.labels, cfg.split_fraction, useed, cfg.stratify);
      const Views views = FitViews(data, split, cfg.methods.front(), cfg.rank, cfg.ridge);
      for (std::size_t m = 0; m < 2; ++m) {
        RunRecord run;
        run.seed = useed;
        run.method = cfg.methods.front();
        run.modality = kModalities[m];
        run.classifier = cfg.classifiers.front();
        run.params = params[s][m];
        run.fit_seconds = views[m].fit_seconds;
        run.constraint_residual = views[m].constraint_residual;
        const ReportMetadata meta{useed, std::string(MethodName(run.method)),
                                  std::string(ModalityName(run.modality))};
        run.report = Evaluate(views[m], enc, split, run.params, meta, cfg.gsg_bins);
        (s == 0 ? suite.baseline_runs : suite.proposed_runs).push_back(std::move(run));
      }
    }
  }

  const std::array<std::pair<const char*, double FairnessReport::*>, 3> metrics{{
      {"dpg", &FairnessReport::dpg},
      {"eog", &FairnessReport::eog},
      {"gsg", &FairnessReport::gsg},
  }};
  for (const auto& [name, field] : metrics) {
    for (Modality modality : kModalities) {
      PairedRuns runs;
      runs.metric = name;
      runs.modality = std::string(ModalityName(modality));
      for (std::size_t i = 0; i < suite.baseline_runs.size(); ++i) {
        if (suite.baseline_runs[i].modality != modality) continue;
        runs.baseline.push_back(suite.baseline_runs[i].report.*field);
        runs.proposed.push_back(suite.proposed_runs[i].report.*field);
        runs.seeds.push_back(suite.baseline_runs[i].seed);
      }
      suite.cells.push_back(FairnessHypothesisPipeline(runs, alpha));
    }
  }
  return suite;
}

HypothesisSuite RunHypothesisSuite(const HypothesisConfig& config) {
  ExperimentConfig a = config.base;
  ExperimentConfig b = config.base;
  a.methods = {config.baseline};
  b.methods = {config.proposed};
  return RunHypothesisSuite(a, b, config.n_seeds, config.alpha);
}

ojson HypothesisJson(const HypothesisSuite& suite) {
  ojson j;
  j["baseline"] = MethodName(suite.baseline);
  j["proposed"] = MethodName(suite.proposed);
  j["n_seeds"] = suite.n_seeds;
  j["alpha"] = suite.alpha;
  ojson table;
  for (const HypothesisReport& r : suite.cells) {
    ojson cell;
    const Modality modality = r.modality == "X" ? Modality::kX : Modality::kY;
    const auto field = r.metric == "dpg"   ? &FairnessReport::dpg
                       : r.metric == "eog" ? &FairnessReport::eog
                                           : &FairnessReport::gsg;
    std::vector<double> base, prop;
    for (std::size_t i = 0; i < suite.baseline_runs.size(); ++i) {
      if (suite.baseline_runs[i].modality != modality) continue;
      base.push_back(suite.baseline_runs[i].report.*field);
      prop.push_back(suite.proposed_runs[i].report.*field);
    }
    const MeanStd mb = Summarize(base);
    const MeanStd mp = Summarize(prop);
    cell["baseline"] = {{"mean", mb.mean}, {"std", mb.std}};
    cell["proposed"] = {{"mean", mp.mean}, {"std", mp.std}};
    cell["stat"] = r.statistic;
    cell["type"] = r.test_used == TestUsed::kPairedT ? "T" : "W";
    cell["test"] = TestUsedName(r.test_used);
    cell["p"] = r.p_value;
    cell["decision"] = DecisionName(r.decision);
    cell["shapiro_baseline"] = {{"W", r.baseline_normality.w},
                                {"p", r.baseline_normality.p_value},
                                {"constant", r.baseline_normality.constant}};
    cell["shapiro_proposed"] = {{"W", r.proposed_normality.w},
                                {"p", r.proposed_normality.p_value},
                                {"constant", r.proposed_normality.constant}};
    if (!r.note.empty()) cell["note"] = r.note;
    table[r.metric][r.modality] = cell;
  }
  j["table"] = table;
  return j;
}

std::string HypothesisTsv(const HypothesisSuite& suite) {
  std::string out = "metric\tmodality\ttest\tstat\tp\tdecision\n";
  for (const HypothesisReport& r : suite.cells) {
    out += r.metric + '\t' + r.modality + '\t' + std::string(TestUsedName(r.test_used)) + '\t' +
           FormatDouble(r.statistic) + '\t' + FormatDouble(r.p_value) + '\t' +
           std::string(DecisionName(r.decision)) + '\n';
  }
  return out;
}

FitTimes TimeFits(const TabularData& data, int rank, double ridge, int repeats) {
  FitTimes times;
  const BinaryVector groups = ToZeroOne(data.z);
  FairFitOptions opts;
  opts.ridge = ridge;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    const CanonicalModel m = FitCca(data.x, data.y, rank, ridge);
    times.cca_seconds.push_back(Seconds(std::chrono::steady_clock::now() - t0));
    t0 = std::chrono::steady_clock::now();
    const FairCanonicalModel f = FitFrcca(data.x, data.y, groups, rank, opts);
    times.frcca_seconds.push_back(Seconds(std::chrono::steady_clock::now() - t0));
    (void)m;
    (void)f;
  }
  return times;
}

}  // namespace faircca

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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "faircca/error.hpp"
#include "faircca/experiment.hpp"
#include "faircca/fair_projection.hpp"
#include "faircca/io.hpp"
#include "faircca/kernels.hpp"
#include "faircca/synthgen.hpp"

namespace {

namespace fs = std::filesystem;
using namespace faircca;

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string method = "cca";
  std::optional<int> rank;
  std::optional<double> ridge;
  std::string format = "json";
  std::string data;
  std::string model;
};

nlohmann::json LoadJson(const std::string& path) {
  const std::string text = ReadText(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, path + ": " + e.what());
  }
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string());
}

SynthConfig SynthFromOptions(const Options& o) {
  SynthConfig c;
  if (!o.config.empty()) {
    const auto j = LoadJson(o.config);
    if (j.contains("data")) {
      c = ExperimentConfigFromJson(j).synth.value_or(SynthConfig{});
    } else {
      c = SynthConfigFromJson(j);
    }
  }
  if (o.seed) c.seed = *o.seed;
  return c;
}

int RunSynth(const Options& o) {
  const SynthConfig c = SynthFromOptions(o);
  const SynthDataset d = GenerateDataset(c);
  const fs::path out = o.out.empty() ? fs::path("synth") : fs::path(o.out);
  WriteSynthDataset(out, c, d);
  std::printf("wrote %s (n=%d, dx=%d, dy=%d, attempts=%d, jitter=%s)\n", out.string().c_str(),
              c.n_samples, c.dim_x, c.dim_y, d.attempts, FormatDouble(d.jitter).c_str());
  return 0;
}

TabularData DataFromOptions(const Options& o) {
  if (!o.data.empty()) return IngestCsv(CsvPaths::InDirectory(o.data));
  ExperimentConfig c;
  c.synth = SynthConfig{};
  if (!o.config.empty()) c = ExperimentConfigFromJson(LoadJson(o.config));
  if (o.seed && c.synth) c.synth->seed = *o.seed;
  return LoadData(c);
}

int RunFit(const Options& o) {
  const TabularData data = DataFromOptions(o);
  const Method method = ParseMethod(o.method);
  if (method == Method::kRaw) throw Error(ErrorCode::kConfigError, "fit takes --method cca|frcca");
  const int rank = o.rank.value_or(2);
  const double ridge = o.ridge.value_or(kDefaultRidge);
  const BinaryVector groups = ToZeroOne(data.z);
  const SensitiveVector zc = CenterSensitive(groups);
  CanonicalModel model;
  std::string doc;
  if (method == Method::kCca) {
    model = FitCca(data.x, data.y, rank, ridge);
    doc = CanonicalModelJson(model);
  } else {
    FairFitOptions opts;
    opts.ridge = ridge;
    const FairCanonicalModel fm = FitFrcca(data.x, data.y, groups, rank, opts);
    model = fm.model;
    doc = FairModelJson(fm);
  }
  const fs::path out = o.out.empty() ? fs::path("model") : fs::path(o.out);
  EnsureDir(out);
  WriteText(out / "model.json", doc);

  const Vector rho = CanonicalCorrelations(model, data.x, data.y);
  const Vector gamma = FairnessGamma(model, data.x, data.y, zc);
  const double resid = ConstraintResidual(model, data.x, data.y, zc);
  if (o.format == "tsv") {
    std::printf("dim\trho\tgamma\n");
    for (int r = 0; r < rank; ++r) {
      std::printf("%d\t%s\t%s\n", r + 1, FormatDouble(rho(r)).c_str(),
                  FormatDouble(gamma(r)).c_str());
    }
  } else {
    nlohmann::ordered_json j;
    j["method"] = MethodName(method);
    j["rank"] = rank;
    j["rho"] = std::vector<double>(rho.data(), rho.data() + rho.size());
    j["gamma"] = std::vector<double>(gamma.data(), gamma.data() + gamma.size());
    j["constraint_residual"] = resid;
    std::cout << j.dump(2) << '\n';
  }
  return 0;
}

int RunTransform(const Options& o) {
  if (o.model.empty()) throw Error(ErrorCode::kConfigError, "transform needs --model");
  const CanonicalModel model = ParseModelJson(ReadText(o.model));
  const TabularData data = DataFromOptions(o);
  const fs::path out = o.out.empty() ? fs::path("projected") : fs::path(o.out);
  EnsureDir(out);
  WriteMatrixCsv(out / "x_proj.csv", Project(data.x, model, Side::kX));
  WriteMatrixCsv(out / "y_proj.csv", Project(data.y, model, Side::kY));
  std::printf("wrote %s\n", out.string().c_str());
  return 0;
}

void ApplyOverrides(const Options& o, ExperimentConfig& c) {
  if (o.seed) c.tuning_seed = *o.seed;
  if (!o.out.empty()) c.output_dir = o.out;
  if (o.rank) c.rank = *o.rank;
  if (o.ridge) c.ridge = *o.ridge;
}

int RunExperimentCommand(const Options& o) {
  ExperimentConfig c;
  c.synth = SynthConfig{};
  if (!o.config.empty()) c = ExperimentConfigFromJson(LoadJson(o.config));
  ApplyOverrides(o, c);
  const ExperimentResult result = RunExperiment(c);
  WriteExperimentOutputs(c.output_dir, c, result);
  if (o.format == "tsv") {
    std::printf("method\tmodality\tclassifier\tdpg\teog\tgsg\taccuracy\n");
    const auto summary = SummaryJson(c, result);
    for (const auto& cell : summary["cells"]) {
      const auto& m = cell["metrics"];
      std::printf("%s\t%s\t%s\t%.4f\t%.4f\t%.4f\t%.4f\n",
                  cell["method"].get<std::string>().c_str(),
                  cell["modality"].get<std::string>().c_str(),
                  cell["classifier"].get<std::string>().c_str(),
                  m["dpg"]["mean"].get<double>(), m["eog"]["mean"].get<double>(),
                  m["gsg"]["mean"].get<double>(), m["accuracy"]["mean"].get<double>());
    }
  } else {
    std::cout << SummaryJson(c, result).dump(2) << '\n';
  }
  std::size_t failed = 0;
  for (const auto& r : result.runs) failed += r.failed ? 1 : 0;
  if (failed > 0) std::fprintf(stderr, "%zu run(s) failed; see runs.jsonl\n", failed);
  return 0;
}

int RunHypotest(const Options& o) {
  HypothesisConfig h;
  h.base.synth = SynthConfig{};
  if (!o.config.empty()) h = HypothesisConfigFromJson(LoadJson(o.config));
  ApplyOverrides(o, h.base);
  const HypothesisSuite suite = RunHypothesisSuite(h);
  EnsureDir(h.base.output_dir);
  WriteText(h.base.output_dir / "hypotest.json", HypothesisJson(suite).dump(2) + '\n');
  if (o.format == "tsv") {
    std::cout << HypothesisTsv(suite);
  } else {
    std::cout << HypothesisJson(suite).dump(2) << '\n';
  }
  return 0;
}

int ExitCodeFor(const Error& e) {
  switch (CategoryOf(e.code())) {
    case ErrorCategory::kConfig: return 2;
    case ErrorCategory::kData: return 3;
    case ErrorCategory::kNumerical: return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair canonical correlation analysis toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "JSON config file");
    cmd->add_option("--seed", o.seed, "Seed override");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--format", o.format, "Stdout format")->check(CLI::IsMember({"json", "tsv"}));
  };
  auto add_model_flags = [&](CLI::App* cmd) {
    cmd->add_option("--rank", o.rank, "Number of canonical directions");
    cmd->add_option("--ridge", o.ridge, "Diagonal ridge on the view covariances");
  };

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  add_common(synth);
  CLI::App* fit = app.add_subcommand("fit", "Fit CCA or FR-CCA and write model.json");
  add_common(fit);
  add_model_flags(fit);
  fit->add_option("--method", o.method, "cca or frcca")->check(CLI::IsMember({"cca", "frcca"}));
  fit->add_option("--data", o.data, "Directory with x.csv, y.csv, z.csv, labels.csv");
  CLI::App* transform = app.add_subcommand("transform", "Project data with a saved model");
  add_common(transform);
  transform->add_option("--model", o.model, "model.json from fit")->required();
  transform->add_option("--data", o.data, "Directory with x.csv, y.csv, z.csv, labels.csv");
  CLI::App* experiment = app.add_subcommand("experiment", "Tune, evaluate and summarize");
  add_common(experiment);
  add_model_flags(experiment);
  CLI::App* hypotest = app.add_subcommand("hypotest", "Paired hypothesis tests across seeds");
  add_common(hypotest);
  add_model_flags(hypotest);
  CLI::App* version = app.add_subcommand("version", "Print version and SIMD backend");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*synth) return RunSynth(o);
    if (*fit) return RunFit(o);
    if (*transform) return RunTransform(o);
    if (*experiment) return RunExperimentCommand(o);
    if (*hypotest) return RunHypotest(o);
    if (*version) {
      std::printf("faircca %s (simd: %s)\n", kVersion,
                  std::string(simd::BackendName(simd::ActiveBackend())).c_str());
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}

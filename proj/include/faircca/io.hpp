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

#ifndef FAIRCCA_IO_HPP_
#define FAIRCCA_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "faircca/cca.hpp"
#include "faircca/fair_projection.hpp"
#include "faircca/linalg.hpp"
#include "faircca/synthgen.hpp"

namespace faircca {

// 17 significant digits; parses back to the same double.
std::string FormatDouble(double value);

// Header row f1..fD, one row per sample.
void WriteMatrixCsv(const std::filesystem::path& path, const Matrix& data);
// Accepts an optional header row (any row with a non-numeric field is
// treated as a header when it is the first line). Throws ParseError with
// 1-based row/column, IoError.
Matrix ReadMatrixCsv(const std::filesystem::path& path);

void WriteCodeColumnCsv(const std::filesystem::path& path,
                        const std::vector<int>& codes, const std::string& name);
// Single column with exactly two distinct values, mapped to {1, 2} in
// ascending order. Throws NonBinaryColumn, ParseError, IoError.
std::vector<int> ReadCodeColumnCsv(const std::filesystem::path& path);

struct CsvPaths {
  std::filesystem::path x;
  std::filesystem::path y;
  std::filesystem::path z;
  std::filesystem::path labels;

  static CsvPaths InDirectory(const std::filesystem::path& dir);
};

struct TabularData {
  Matrix x;
  Matrix y;
  std::vector<int> z;       // {1, 2}
  std::vector<int> labels;  // {1, 2}
};

// Throws RowCountMismatch when the four files disagree on sample count.
TabularData IngestCsv(const CsvPaths& paths);

// x.csv, y.csv, z.csv, labels.csv and manifest.json.
void WriteSynthDataset(const std::filesystem::path& dir,
                       const SynthConfig& config, const SynthDataset& data);

std::string CanonicalModelJson(const CanonicalModel& model);
std::string FairModelJson(const FairCanonicalModel& model);
// Reads either document; the lifted projections are returned.
CanonicalModel ParseModelJson(const std::string& text);

// Unknown keys raise ConfigError; absent keys keep their defaults.
SynthConfig SynthConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json SynthConfigToJson(const SynthConfig& config);

void WriteText(const std::filesystem::path& path, const std::string& text);
std::string ReadText(const std::filesystem::path& path);

}  // namespace faircca

#endif  // FAIRCCA_IO_HPP_

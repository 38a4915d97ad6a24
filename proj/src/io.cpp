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

#include "faircca/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "faircca/error.hpp"

namespace faircca {

namespace fs = std::filesystem;

std::string FormatDouble(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (auto& f : fields) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return fields;
}

bool ParseNumber(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Rows of numeric fields; the first line is skipped if it is not numeric.
std::vector<std::vector<double>> ReadNumericTable(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitFields(line);
    std::vector<double> row(fields.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!ParseNumber(fields[j], row[j])) {
        numeric = false;
        bad = j;
        break;
      }
    }
    if (!numeric) {
      if (line_no == 1) {
        width = fields.size();
        continue;
      }
      throw Error(ErrorCode::kParseError,
                  path.filename().string() + " row " + std::to_string(line_no) +
                      " col " + std::to_string(bad + 1) + ": not a number");
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw Error(ErrorCode::kParseError,
                  path.filename().string() + " row " + std::to_string(line_no) +
                      " col " + std::to_string(std::min(row.size(), width) + 1) +
                      ": expected " + std::to_string(width) + " fields");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void WriteMatrixCsv(const fs::path& path, const Matrix& data) {
  std::string out;
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    if (j) out += ',';
    out += 'f' + std::to_string(j + 1);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (j) out += ',';
      out += FormatDouble(data(i, j));
    }
    out += '\n';
  }
  WriteText(path, out);
}

Matrix ReadMatrixCsv(const fs::path& path) {
  const auto rows = ReadNumericTable(path);
  if (rows.empty()) return Matrix();
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

void WriteCodeColumnCsv(const fs::path& path, const std::vector<int>& codes,
                        const std::string& name) {
  std::string out = name + '\n';
  for (int c : codes) out += std::to_string(c) + '\n';
  WriteText(path, out);
}

std::vector<int> ReadCodeColumnCsv(const fs::path& path) {
  const auto rows = ReadNumericTable(path);
  std::set<double> distinct;
  for (const auto& r : rows) {
    if (r.size() != 1) {
      throw Error(ErrorCode::kNonBinaryColumn, path.filename().string() + ": expected one column");
    }
    distinct.insert(r[0]);
  }
  if (distinct.size() != 2) {
    throw Error(ErrorCode::kNonBinaryColumn,
                path.filename().string() + ": " + std::to_string(distinct.size()) +
                    " distinct values, expected 2");
  }
  const double low = *distinct.begin();
  std::vector<int> codes;
  codes.reserve(rows.size());
  for (const auto& r : rows) codes.push_back(r[0] == low ? 1 : 2);
  return codes;
}

CsvPaths CsvPaths::InDirectory(const fs::path& dir) {
  return CsvPaths{dir / "x.csv", dir / "y.csv", dir / "z.csv", dir / "labels.csv"};
}

TabularData IngestCsv(const CsvPaths& paths) {
  TabularData data;
  data.x = ReadMatrixCsv(paths.x);
  data.y = ReadMatrixCsv(paths.y);
  data.z = ReadCodeColumnCsv(paths.z);
  data.labels = ReadCodeColumnCsv(paths.labels);
  const auto n = data.x.rows();
  if (data.y.rows() != n || static_cast<Eigen::Index>(data.z.size()) != n ||
      static_cast<Eigen::Index>(data.labels.size()) != n) {
    throw Error(ErrorCode::kRowCountMismatch,
                "row counts x=" + std::to_string(n) + " y=" + std::to_string(data.y.rows()) +
                    " z=" + std::to_string(data.z.size()) +
                    " labels=" + std::to_string(data.labels.size()));
  }
  return data;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson MatrixRows(const Matrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson VectorArray(const Vector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

nlohmann::ordered_json SynthConfigToJson(const SynthConfig& c) {
  ojson j;
  j["n_samples"] = c.n_samples;
  j["dim_x"] = c.dim_x;
  j["dim_y"] = c.dim_y;
  j["planted_rho"] = c.planted_rho;
  j["eps_x"] = c.eps_x;
  j["eps_y"] = c.eps_y;
  j["mu_x"] = c.mu_x ? ojson(*c.mu_x) : ojson(nullptr);
  j["mu_y"] = c.mu_y ? ojson(*c.mu_y) : ojson(nullptr);
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["a"] = c.a ? ojson(*c.a) : ojson(nullptr);
  j["b"] = c.b ? ojson(*c.b) : ojson(nullptr);
  j["seed"] = c.seed;
  return j;
}

SynthConfig SynthConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfigError, "synth config must be an object");
  SynthConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n_samples") c.n_samples = value.get<int>();
      else if (key == "dim_x") c.dim_x = value.get<int>();
      else if (key == "dim_y") c.dim_y = value.get<int>();
      else if (key == "planted_rho") c.planted_rho = value.get<std::vector<double>>();
      else if (key == "eps_x") c.eps_x = value.get<double>();
      else if (key == "eps_y") c.eps_y = value.get<double>();
      else if (key == "alpha") c.alpha = value.get<double>();
      else if (key == "beta") c.beta = value.get<double>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "mu_x") { if (!value.is_null()) c.mu_x = value.get<std::vector<double>>(); }
      else if (key == "mu_y") { if (!value.is_null()) c.mu_y = value.get<std::vector<double>>(); }
      else if (key == "a") { if (!value.is_null()) c.a = value.get<std::vector<double>>(); }
      else if (key == "b") { if (!value.is_null()) c.b = value.get<std::vector<double>>(); }
      else throw Error(ErrorCode::kConfigError, "unknown synth key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("synth config: ") + e.what());
  }
  return c;
}

void WriteSynthDataset(const fs::path& dir, const SynthConfig& config,
                       const SynthDataset& data) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string());
  WriteMatrixCsv(dir / "x.csv", data.x);
  WriteMatrixCsv(dir / "y.csv", data.y);
  WriteCodeColumnCsv(dir / "z.csv", data.z, "z");
  WriteCodeColumnCsv(dir / "labels.csv", data.labels, "label");

  ojson m;
  m["config"] = SynthConfigToJson(config);
  m["a"] = data.a;
  m["b"] = data.b;
  m["min_eigenvalue"] = data.min_eigenvalue;
  m["psd_jitter"] = data.jitter;
  m["attempts"] = data.attempts;
  m["indexing"] = {
      {"sensitive_x_columns", "odd, 1-based"},
      {"sensitive_y_columns", "even, 1-based"},
      {"label_x_columns", "1..floor(dim_x/2), 1-based inclusive"},
      {"label_y_columns", "floor(dim_y/2)..dim_y, 1-based inclusive"},
  };
  m["ground_truth"] = {{"rho", VectorArray(data.ground_truth.rho)},
                       {"U", MatrixRows(data.ground_truth.u)},
                       {"V", MatrixRows(data.ground_truth.v)}};
  WriteText(dir / "manifest.json", m.dump(2) + "\n");
}

namespace {

void AppendVector(std::string& out, const Vector& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(v(i));
  }
  out += ']';
}

void AppendMatrix(std::string& out, const Matrix& m) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ",\n    ";
    AppendVector(out, m.row(i).transpose());
  }
  out += ']';
}

std::string ModelBody(const CanonicalModel& model) {
  std::string out = "{\n";
  out += "  \"R\": " + std::to_string(model.rank) + ",\n";
  out += "  \"ridge\": " + FormatDouble(model.ridge) + ",\n";
  out += "  \"rho\": ";
  AppendVector(out, model.rho);
  out += ",\n  \"U\": ";
  AppendMatrix(out, model.u);
  out += ",\n  \"V\": ";
  AppendMatrix(out, model.v);
  out += ",\n  \"x_mean\": ";
  AppendVector(out, model.x_standardizer.means);
  out += ",\n  \"x_std\": ";
  AppendVector(out, model.x_standardizer.stds);
  out += ",\n  \"y_mean\": ";
  AppendVector(out, model.y_standardizer.means);
  out += ",\n  \"y_std\": ";
  AppendVector(out, model.y_standardizer.stds);
  return out;
}

Vector ToVector(const nlohmann::json& a) {
  const auto v = a.get<std::vector<double>>();
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Matrix ToMatrix(const nlohmann::json& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != c) {
      throw Error(ErrorCode::kParseError, "ragged matrix in model document");
    }
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return m;
}

}  // namespace

std::string CanonicalModelJson(const CanonicalModel& model) {
  return ModelBody(model) + "\n}\n";
}

std::string FairModelJson(const FairCanonicalModel& model) {
  std::string out = ModelBody(model.model);
  out += ",\n  \"rx\": ";
  AppendMatrix(out, model.rx.basis);
  out += ",\n  \"ry\": ";
  AppendMatrix(out, model.ry.basis);
  out += ",\n  \"method\": \"frcca\"\n}\n";
  return out;
}

CanonicalModel ParseModelJson(const std::string& text) {
  CanonicalModel model;
  try {
    const auto j = nlohmann::json::parse(text);
    model.rank = j.at("R").get<int>();
    model.ridge = j.at("ridge").get<double>();
    model.rho = ToVector(j.at("rho"));
    model.u = ToMatrix(j.at("U"));
    model.v = ToMatrix(j.at("V"));
    model.x_standardizer.means = ToVector(j.at("x_mean"));
    model.x_standardizer.stds = ToVector(j.at("x_std"));
    model.y_standardizer.means = ToVector(j.at("y_mean"));
    model.y_standardizer.stds = ToVector(j.at("y_std"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("model document: ") + e.what());
  }
  if (model.u.rows() != model.x_standardizer.dim() ||
      model.v.rows() != model.y_standardizer.dim() || model.u.cols() != model.rank ||
      model.v.cols() != model.rank || model.rho.size() != model.rank) {
    throw Error(ErrorCode::kShapeMismatch, "model document has inconsistent shapes");
  }
  return model;
}

}  // namespace faircca

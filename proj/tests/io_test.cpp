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

#include <filesystem>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "faircca/error.hpp"
#include "helpers.hpp"

namespace faircca {
namespace {

namespace fs = std::filesystem;
using testing_helpers::Gaussian;
using testing_helpers::MakeCorrelated;

template <typename F>
void ExpectCode(F&& f, ErrorCode code) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("faircca_io_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(IoTest, MatrixCsvShapeAndHeader) {
  Matrix m(2, 3);
  m << 1.0, 2.5, -3.0, 0.1, 1e-300, 7.0;
  WriteMatrixCsv(dir_ / "m.csv", m);
  const std::string text = ReadText(dir_ / "m.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "f1,f2,f3");
  const Matrix back = ReadMatrixCsv(dir_ / "m.csv");
  ASSERT_EQ(back.rows(), 2);
  ASSERT_EQ(back.cols(), 3);
  EXPECT_TRUE(back == m);
}

TEST_F(IoTest, MatrixCsvWithoutHeader) {
  WriteText(dir_ / "m.csv", "1,2\n3,4\n");
  const Matrix back = ReadMatrixCsv(dir_ / "m.csv");
  ASSERT_EQ(back.rows(), 2);
  EXPECT_EQ(back(1, 0), 3.0);
}

TEST_F(IoTest, BadFieldReportsPosition) {
  WriteText(dir_ / "m.csv", "a,b\n1,2\n3,oops\n");
  try {
    ReadMatrixCsv(dir_ / "m.csv");
    ADD_FAILURE() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("col 2"), std::string::npos) << e.what();
  }
}

TEST_F(IoTest, RaggedRowsRejected) {
  WriteText(dir_ / "m.csv", "1,2\n3\n");
  ExpectCode([&] { ReadMatrixCsv(dir_ / "m.csv"); }, ErrorCode::kParseError);
}

TEST_F(IoTest, MissingFileIsIoError) {
  ExpectCode([&] { ReadMatrixCsv(dir_ / "absent.csv"); }, ErrorCode::kIoError);
}

TEST_F(IoTest, CodeColumnMapsToOneTwo) {
  WriteText(dir_ / "z.csv", "z\n5\n-1\n5\n");
  const std::vector<int> z = ReadCodeColumnCsv(dir_ / "z.csv");
  EXPECT_EQ(z, (std::vector<int>{2, 1, 2}));
}

TEST_F(IoTest, NonBinaryColumnRejected) {
  WriteText(dir_ / "z.csv", "z\n0\n1\n2\n");
  ExpectCode([&] { ReadCodeColumnCsv(dir_ / "z.csv"); }, ErrorCode::kNonBinaryColumn);
  WriteText(dir_ / "z.csv", "z\n1\n1\n");
  ExpectCode([&] { ReadCodeColumnCsv(dir_ / "z.csv"); }, ErrorCode::kNonBinaryColumn);
}

TEST_F(IoTest, IngestRowCountMismatch) {
  std::mt19937_64 rng(81);
  WriteMatrixCsv(dir_ / "x.csv", Gaussian(4, 2, rng));
  WriteMatrixCsv(dir_ / "y.csv", Gaussian(4, 2, rng));
  WriteCodeColumnCsv(dir_ / "z.csv", {1, 2, 1}, "z");
  WriteCodeColumnCsv(dir_ / "labels.csv", {1, 2, 1, 2}, "label");
  ExpectCode([&] { IngestCsv(CsvPaths::InDirectory(dir_)); }, ErrorCode::kRowCountMismatch);
}

TEST_F(IoTest, SynthDatasetRoundTripIsExact) {
  SynthConfig config;
  config.n_samples = 120;
  config.dim_x = 9;
  config.dim_y = 8;
  config.seed = 5;
  const SynthDataset data = GenerateDataset(config);
  WriteSynthDataset(dir_, config, data);
  const TabularData back = IngestCsv(CsvPaths::InDirectory(dir_));
  EXPECT_TRUE(back.x == data.x);
  EXPECT_TRUE(back.y == data.y);
  EXPECT_EQ(back.z, data.z);
  EXPECT_EQ(back.labels, data.labels);

  const auto manifest = nlohmann::json::parse(ReadText(dir_ / "manifest.json"));
  const SynthConfig parsed = SynthConfigFromJson(manifest.at("config"));
  EXPECT_EQ(SynthConfigToJson(parsed).dump(), SynthConfigToJson(config).dump());
  EXPECT_EQ(manifest.at("ground_truth").at("rho").size(), config.planted_rho.size());
}

TEST_F(IoTest, SynthConfigRejectsUnknownKey) {
  ExpectCode([] { SynthConfigFromJson(nlohmann::json{{"n_sample", 10}}); },
             ErrorCode::kConfigError);
}

TEST(ModelJson, CcaRoundTrip) {
  std::mt19937_64 rng(82);
  const auto data = MakeCorrelated(200, 4, 3, rng);
  const CanonicalModel model = FitCca(data.x, data.y, 2);
  const CanonicalModel back = ParseModelJson(CanonicalModelJson(model));
  EXPECT_TRUE(back.u == model.u);
  EXPECT_TRUE(back.v == model.v);
  EXPECT_TRUE(back.rho == model.rho);
  EXPECT_EQ(back.rank, model.rank);
  EXPECT_TRUE(back.x_standardizer.means == model.x_standardizer.means);
  EXPECT_TRUE(back.y_standardizer.stds == model.y_standardizer.stds);
  EXPECT_TRUE(Project(data.x, back, Side::kX) == Project(data.x, model, Side::kX));
}

TEST(ModelJson, FairRoundTrip) {
  std::mt19937_64 rng(83);
  const auto data = MakeCorrelated(200, 4, 3, rng);
  const FairCanonicalModel fair = FitFrcca(data.x, data.y, data.groups, 2);
  const std::string text = FairModelJson(fair);
  EXPECT_NE(text.find("\"frcca\""), std::string::npos);
  const CanonicalModel back = ParseModelJson(text);
  EXPECT_TRUE(back.u == fair.model.u);
  EXPECT_TRUE(back.v == fair.model.v);
}

TEST(ModelJson, MalformedInput) {
  ExpectCode([] { ParseModelJson("{not json"); }, ErrorCode::kParseError);
  ExpectCode([] { ParseModelJson(R"({"rank": 1})"); }, ErrorCode::kParseError);
}

}  // namespace
}  // namespace faircca

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "commands.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "support.hpp"
#include "wcam/io.hpp"

namespace wcam::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome wcam(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    image_ = (dir_ / "tile.png").string();
    atomic_write(image_, encode_png(testing::texture_image(64, 3, 3)));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  testing::TempDir dir_;
  std::string image_;
};

TEST_F(CliTest, AttributePlantedCell) {
  const auto r = wcam({"attribute", "--image", image_, "--model", "builtin:cell13", "--n", "32", "--grid", "8",
                       "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(slurp(path("out/tile.wcam.json")));
  ASSERT_EQ(doc["tsi"].size(), 64u);
  std::vector<double> tsi = doc["tsi"];
  EXPECT_EQ(std::max_element(tsi.begin(), tsi.end()) - tsi.begin(), 13);
  EXPECT_EQ(doc["evaluations"], 2112);
  EXPECT_TRUE(std::filesystem::exists(path("out/tile.scale.png")));
  EXPECT_TRUE(std::filesystem::exists(path("out/tile.spatial.png")));
  EXPECT_TRUE(std::filesystem::exists(path("out/attribute.config.json")));
  EXPECT_NE(r.out.find("top feature 13"), std::string::npos);
}

TEST_F(CliTest, AttributeMissingImage) {
  const auto r = wcam({"attribute", "--image", path("nope.png"), "--model", "builtin:mean"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nope.png"), std::string::npos);
}

TEST_F(CliTest, AttributeSeedDeterminism) {
  for (const char* out : {"a", "b"}) {
    const auto r = wcam({"attribute", "--image", image_, "--model", "builtin:mean", "--seed", "7", "--scrambling",
                         "digital-shift", "--n", "8", "--out", path(out)});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(path("a/tile.wcam.json")), slurp(path("b/tile.wcam.json")));
  EXPECT_EQ(slurp(path("a/tile.scale.png")), slurp(path("b/tile.scale.png")));
}

TEST_F(CliTest, ResolvedConfigReproducesRun) {
  ASSERT_EQ(wcam({"attribute", "--image", image_, "--model", "builtin:cell5", "--n", "8", "--levels", "2",
                  "--family", "db2", "--out", path("first")})
                .code,
            0);
  json cfg = json::parse(slurp(path("first/attribute.config.json")));
  EXPECT_EQ(cfg["levels"], 2);
  EXPECT_EQ(cfg["family"], "db2");
  cfg["out"] = path("second");
  atomic_write(path("cfg.json"), cfg.dump());
  const auto r = wcam({"attribute", "--config", path("cfg.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("first/tile.wcam.json")), slurp(path("second/tile.wcam.json")));

  // Explicit flags win over the config file.
  ASSERT_EQ(wcam({"attribute", "--config", path("cfg.json"), "--n", "4", "--out", path("third")}).code, 0);
  EXPECT_EQ(json::parse(slurp(path("third/tile.wcam.json")))["config"]["n"], 4);
}

TEST_F(CliTest, AttributeJobsDoNotChangeOutputs) {
  const std::string other = path("other.png");
  atomic_write(other, encode_png(testing::texture_image(64, 3, 4)));
  ASSERT_EQ(wcam({"attribute", "--image", image_, "--image", other, "--model", "builtin:mean", "--n", "8", "--out",
                  path("j1")})
                .code,
            0);
  ASSERT_EQ(wcam({"attribute", "--image", image_, "--image", other, "--model", "builtin:mean", "--n", "8", "--jobs",
                  "2", "--out", path("j2")})
                .code,
            0);
  EXPECT_EQ(slurp(path("j1/other.wcam.json")), slurp(path("j2/other.wcam.json")));
  EXPECT_EQ(slurp(path("j1/tile.wcam.json")), slurp(path("j2/tile.wcam.json")));
}

TEST_F(CliTest, AttributeComparison) {
  const std::string other = path("other.png");
  atomic_write(other, encode_png(testing::texture_image(64, 3, 4)));
  const auto r = wcam({"attribute", "--image", image_, "--image", other, "--model", "builtin:cell9", "--n", "8",
                       "--compare", "true", "--upscale", "1", "--out", path("cmp")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Image cmp = read_png(path("cmp/tile_vs_other.scale.png"));
  EXPECT_EQ(cmp.width(), 132);
  EXPECT_EQ(cmp.height(), 64);
  EXPECT_EQ(wcam({"attribute", "--image", image_, "--model", "builtin:mean", "--compare", "true"}).code, 2);
}

TEST_F(CliTest, AttributeIndifferentModel) {
  const auto r = wcam({"attribute", "--image", image_, "--model", "builtin:constant:0.4", "--n", "4", "--out",
                       path("flat")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(slurp(path("flat/tile.wcam.json")));
  EXPECT_EQ(doc["status"], "indifferent");
  EXPECT_DOUBLE_EQ(doc["f_empty"].get<double>(), 0.4);
  EXPECT_FALSE(std::filesystem::exists(path("flat/tile.scale.png")));
}

TEST_F(CliTest, AttributeOverStdio) {
  const auto r = wcam({"attribute", "--image", image_, "--model", std::string("stdio:") + WCAM_FIXTURE_SCORER + " mean",
                       "--n", "4", "--max-batch", "16", "--out", path("wire")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(slurp(path("wire/tile.wcam.json")));
  EXPECT_EQ(doc["evaluations"], 4 * 66);
  const auto bad = wcam({"attribute", "--image", image_, "--model", std::string("stdio:") + WCAM_FIXTURE_SCORER + " nan",
                         "--n", "4", "--out", path("wire2")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("score"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(wcam({}).code, 2);
  EXPECT_EQ(wcam({"frobnicate"}).code, 2);
  EXPECT_EQ(wcam({"attribute", "--image", image_, "--model", "tensorflow:resnet"}).code, 2);
  EXPECT_EQ(wcam({"attribute", "--image", image_, "--model", "builtin:mean", "--grid", "7"}).code, 2);
  EXPECT_EQ(wcam({"attribute", "--image", image_, "--model", "builtin:cell64"}).code, 2);
  EXPECT_EQ(wcam({"attribute", "--config", path("missing.json")}).code, 2);
  EXPECT_EQ(wcam({"--help"}).code, 0);
}

TEST_F(CliTest, AugmentBlurWpLogsCounts) {
  const auto r = wcam({"augment", "--input", image_, "--op", "blur-wp", "--drop-rate", "0.2", "--out", path("aug")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("819/4096 coefficients cancelled per channel"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(path("aug/tile_blur-wp.png")));
  EXPECT_TRUE(std::filesystem::exists(path("aug/augment.config.json")));
}

TEST_F(CliTest, AugmentRateZeroKeepsImage) {
  ASSERT_EQ(wcam({"augment", "--input", image_, "--op", "wp", "--drop-rate", "0", "--out", path("aug")}).code, 0);
  EXPECT_LE(max_abs_diff(read_png(path("aug/tile_wp.png")), read_png(image_)), 0.5 / 255.0 + 1e-6);
}

TEST_F(CliTest, AugmentDirectory) {
  std::filesystem::create_directories(path("in"));
  for (int i = 0; i < 10; ++i) {
    atomic_write(path("in/img" + std::to_string(i) + ".png"), encode_png(testing::random_image(32, 3, i)));
  }
  const auto r = wcam({"augment", "--input", path("in"), "--op", "blur", "--out", path("blurred")});
  ASSERT_EQ(r.code, 0) << r.err;
  int pngs = 0;
  for (const auto& e : std::filesystem::directory_iterator(path("blurred"))) pngs += e.path().extension() == ".png";
  EXPECT_EQ(pngs, 10);
  EXPECT_EQ(wcam({"augment", "--input", path("nothing"), "--op", "blur"}).code, 2);
  EXPECT_EQ(wcam({"augment", "--input", image_, "--op", "mixup"}).code, 2);
}

class EvalTest : public CliTest {
 protected:
  void write_fixture(const std::string& extra_rows = "") {
    std::ostringstream csv;
    json scores;
    csv << "path,label,provider,installation_id,test_set\n";
    auto emit = [&](int n, const char* label, double score, const std::string& tag) {
      for (int i = 0; i < n; ++i) {
        const std::string p = "erm/" + tag + std::to_string(i) + ".png";
        csv << p << ',' << label << ",other," << tag << i << ",erm\n";
        scores[p] = score;
      }
    };
    emit(566, "pv", 0.9, "tp");
    emit(1335, "pv", 0.1, "fn");
    emit(2321, "no-pv", 0.1, "tn");
    emit(99, "no-pv", 0.8, "fp");
    for (int i = 0; i < 4; ++i) {
      csv << "g" << i << ".png,pv,google,inst" << i << ",baseline\n";
      csv << "n" << i << ".png,pv,ign,inst" << i << ",ign\n";
      scores["g" + std::to_string(i) + ".png"] = 0.95;
      scores["n" + std::to_string(i) + ".png"] = i < 3 ? 0.05 : 0.9;
    }
    csv << extra_rows;
    atomic_write(path("manifest.csv"), csv.str());
    atomic_write(path("scores.json"), scores.dump());
  }
};

TEST_F(EvalTest, ReportsPublishedF1) {
  write_fixture();
  const auto r = wcam({"eval", "--manifest", path("manifest.csv"), "--scores", path("scores.json"), "--out",
                       path("eval")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(slurp(path("eval/report.json")));
  bool found = false;
  for (const auto& row : report) {
    if (row["test_set"] == "erm") {
      found = true;
      EXPECT_NEAR(row["f1"].get<double>(), 0.44, 0.005);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_NE(slurp(path("eval/report.csv")).find("erm,"), std::string::npos);
  const json shift = json::parse(slurp(path("eval/shift.json")));
  EXPECT_EQ(shift["bins"].size(), 20u);
  EXPECT_EQ(shift["pairs"], 4);
  EXPECT_DOUBLE_EQ(shift["downward_crossing_fraction"].get<double>(), 0.75);
  EXPECT_TRUE(std::filesystem::exists(path("eval/eval.config.json")));
}

TEST_F(EvalTest, EmptyTestSetIsDataError) {
  write_fixture();
  const auto r = wcam({"eval", "--manifest", path("manifest.csv"), "--scores", path("scores.json"), "--test-set",
                       "10cm", "--out", path("eval")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("10cm"), std::string::npos);
}

TEST_F(EvalTest, MissingScoresListed) {
  write_fixture("orphan.png,pv,other,zz,erm\n");
  const auto r = wcam({"eval", "--manifest", path("manifest.csv"), "--scores", path("scores.json"), "--out",
                       path("eval")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("orphan.png"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("eval/report.csv")));
}

TEST_F(EvalTest, UnpairedPositives) {
  write_fixture("lonely.png,pv,google,solo,baseline\n");
  json scores = json::parse(slurp(path("scores.json")));
  scores["lonely.png"] = 0.7;
  atomic_write(path("scores.json"), scores.dump());
  const std::vector<std::string> base{"eval", "--manifest", path("manifest.csv"), "--scores", path("scores.json"),
                                      "--out", path("eval")};
  EXPECT_EQ(wcam(base).code, 3);
  auto skip = base;
  skip.insert(skip.end(), {"--skip-unpaired", "true"});
  EXPECT_EQ(wcam(skip).code, 0);
}

TEST_F(EvalTest, LiveScoring) {
  atomic_write(path("imgs/a.png"), encode_png(Image(8, 8, 3, 1.0f)));
  atomic_write(path("imgs/b.png"), encode_png(Image(8, 8, 3, 0.0f)));
  atomic_write(path("imgs/a_ign.png"), encode_png(Image(8, 8, 3, 0.75f)));
  atomic_write(path("live.csv"), std::string_view("path,label,provider,installation_id,test_set\n"
                                                  "a.png,pv,google,1,s\nb.png,no-pv,google,2,s\n"
                                                  "a_ign.png,pv,ign,1,s\n"));
  const auto r = wcam({"eval", "--manifest", path("live.csv"), "--model", "builtin:mean", "--image-root",
                       path("imgs"), "--out", path("live")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(json::parse(slurp(path("live/report.json")))[0]["f1"].get<double>(), 1.0);
  EXPECT_EQ(wcam({"eval", "--manifest", path("live.csv"), "--out", path("x")}).code, 2);
}

TEST(Selftest, DefaultRunPasses) {
  const auto r = wcam({"selftest"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  for (const char* group : {"[wavelet]", "[sensitivity]", "[wcam]", "[augment]", "[metrics]"}) {
    EXPECT_NE(r.out.find(group), std::string::npos) << group;
  }
}

TEST(Selftest, OnlyFilter) {
  const auto r = wcam({"selftest", "--only", "wavelet"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[wavelet]"), std::string::npos);
  EXPECT_EQ(r.out.find("[sensitivity]"), std::string::npos);
  EXPECT_EQ(wcam({"selftest", "--only", "nonsense"}).code, 2);
}

TEST(Selftest, CorruptedDirectionsFail) {
  const auto r = wcam({"selftest", "--corrupt-directions"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL [sensitivity]"), std::string::npos);
}

}  // namespace
}  // namespace wcam::cli

// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "support.hpp"

using namespace embias;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = support::scratch("cli");
    table_ = dir_ + "/synth.txt";
    const auto r = support::run(support::cli() + " synth --out " + table_);
    ASSERT_EQ(r.code, 0);
  }

  static support::Run embias(const std::string& args) {
    return support::run(support::cli() + " " + args + " 2>" + dir_ + "/stderr.txt");
  }
  static std::string stderr_text() { return support::read_file(dir_ + "/stderr.txt"); }
  static std::string data(const std::string& rel) { return support::source_dir() + "/data/" + rel; }

  static std::string dir_;
  static std::string table_;
};

std::string Cli::dir_;
std::string Cli::table_;

}  // namespace

TEST_F(Cli, MissingRequiredFlagIsUsageError) {
  EXPECT_EQ(embias("weat").code, 64);
  EXPECT_EQ(embias("weat --embeddings " + table_ + " --mode fast").code, 64);
  EXPECT_EQ(embias("frobnicate").code, 64);
}

TEST_F(Cli, NonexistentInputIsUsageError) {
  const auto r = embias("weat --embeddings " + dir_ + "/nope.txt");
  EXPECT_EQ(r.code, 64);
  EXPECT_NE(stderr_text().find("nope.txt"), std::string::npos);
}

TEST_F(Cli, WeatBuiltinSuiteOnSynthTable) {
  const auto r = embias("weat --embeddings " + table_ + " --permutations 2000");
  ASSERT_EQ(r.code, 0) << stderr_text();
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["results"].size(), builtin::suites().size());
  EXPECT_EQ(j["results"].size(), 13u);
  for (const auto& row : j["results"]) EXPECT_EQ(row["status"], "ok");
  EXPECT_EQ(j["config"]["permutations"], 2000);
  EXPECT_FALSE(j["config"].contains("threads"));
}

TEST_F(Cli, WeatSameSeedIsByteIdentical) {
  const std::string args = "weat --embeddings " + table_ + " --seed 42 --permutations 3000";
  const auto a = embias(args);
  const auto b = embias(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto c = embias("weat --embeddings " + table_ + " --seed 43 --permutations 3000 --mode sampled");
  const auto d = embias("weat --embeddings " + table_ + " --seed 42 --permutations 3000 --mode sampled");
  EXPECT_NE(c.out, d.out);
}

TEST_F(Cli, WeatMarkdownOutputToFile) {
  const std::string out = dir_ + "/weat.md";
  ASSERT_EQ(embias("weat --embeddings " + table_ + " --format md --out " + out).code, 0);
  const std::string md = support::read_file(out);
  EXPECT_EQ(md.rfind("| Test | Category | Variant | n | d (p) |", 0), 0u);
  EXPECT_NE(md.find("| gender-maths-arts |"), std::string::npos);
}

TEST_F(Cli, StrictPolicyOovIsDataError) {
  const std::string small = dir_ + "/small.txt";
  support::write_file(small, "ganit 1 0\nkavita 0 1\n");
  const auto r = embias("weat --embeddings " + small + " --policy strict");
  EXPECT_EQ(r.code, 2);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["results"][0]["status"], "error");
  EXPECT_EQ(j["results"][0]["error"]["kind"], "data");
}

TEST_F(Cli, EmitSentencesForOneNounTest) {
  Json suite = Json::parse(support::read_file(data("suites/builtin.json")));
  suite["tests"] = Json::array({suite["tests"][0]});
  const std::string suite_path = dir_ + "/one.json";
  support::write_file(suite_path, suite.dump());
  const std::string sentences = dir_ + "/sentences.txt";
  ASSERT_EQ(embias("seat --embeddings " + table_ + " --suite " + suite_path +
                   " --expand-attributes false --emit-sentences " + sentences)
                .code,
            0)
      << stderr_text();
  std::istringstream in(support::read_file(sentences));
  std::string line;
  std::size_t targets = 0;
  std::size_t bare = 0;
  while (std::getline(in, line)) ++(line.find(' ') == std::string::npos ? bare : targets);
  EXPECT_EQ(targets, 128u);
  EXPECT_EQ(bare, 16u);
}

TEST_F(Cli, PrecomputedMissingSentenceIsDataError) {
  const std::string tsv = dir_ + "/pre.tsv";
  support::write_file(tsv, "yeha ganit hai\t1 0\n");
  const auto r = embias("seat --embeddings " + table_ + " --precomputed " + tsv);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("yeha kavita hai"), std::string::npos);
}

TEST_F(Cli, IdentityTemplatesMatchWeat) {
  for (const char* format : {"json", "md"}) {
    const std::string common = " --embeddings " + table_ + " --format " + format + " --permutations 2000";
    const auto weat = embias("weat" + common);
    const auto seat = embias("seat --templates identity" + common);
    ASSERT_EQ(weat.code, 0);
    ASSERT_EQ(seat.code, 0);
    if (std::string(format) == "json") {
      EXPECT_EQ(Json::parse(weat.out)["results"], Json::parse(seat.out)["results"]);
    } else {
      EXPECT_EQ(weat.out, seat.out);
    }
  }
}

TEST_F(Cli, SubspaceChainIsOrthogonal) {
  const std::string out = dir_ + "/dirs.txt";
  const auto r = embias("subspace --embeddings " + table_ + " --spec " + data("specs/gender.json") + " --out " + out);
  ASSERT_EQ(r.code, 0) << stderr_text();
  EXPECT_NE(r.out.find("d_s\torthogonalized(d_v,d_a,d_t,d_e)"), std::string::npos) << r.out;
  const auto dirs = load_embeddings_file(out, EmbeddingFormat::auto_detect, false);
  const auto d_s = *dirs.lookup("d_s");
  for (const char* parent : {"d_v", "d_a", "d_t", "d_e"}) {
    EXPECT_LE(std::abs(dot(d_s, *dirs.lookup(parent))), 1e-8) << parent;
  }
  for (std::size_t i = 0; i < dirs.size(); ++i) EXPECT_NEAR(norm(dirs.row(i)), 1.0, 1e-9);
}

TEST_F(Cli, HardPlanWithoutPairsIsDataError) {
  const std::string plan = dir_ + "/hard.json";
  support::write_file(plan, R"({"method":"hard","direction":{"label":"d","method":"pair","pairs":[["naari","nar"]]}})");
  const auto r = embias("debias --embeddings " + table_ + " --plan " + plan + " --out " + dir_ + "/never.txt");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(stderr_text().find("equalize_pairs"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ + "/never.txt"));
}

TEST_F(Cli, DebiasOutputReproducesAfterColumn) {
  for (const char* plan : {"gender-naari-nar", "gender-lpsg-all", "gender-hard-words"}) {
    const std::string out = dir_ + "/" + plan + ".txt";
    const std::string report = dir_ + "/" + plan + ".json";
    const auto r = embias("debias --embeddings " + table_ + " --plan " + data("plans/") + plan + ".json --out " + out +
                          " --report " + report + " --seed 7 --permutations 2000");
    ASSERT_EQ(r.code, 0) << plan << stderr_text();
    const Json cmp = Json::parse(support::read_file(report))["comparison"];
    const auto rerun = embias("weat --embeddings " + out + " --no-normalize --seed 7 --permutations 2000");
    ASSERT_EQ(rerun.code, 0);
    const Json results = Json::parse(rerun.out)["results"];
    ASSERT_EQ(results.size(), cmp["rows"].size());
    for (std::size_t i = 0; i < results.size(); ++i) {
      EXPECT_EQ(results[i], cmp["rows"][i]["after"]) << plan << " row " << i;
    }
  }
}

TEST_F(Cli, DebiasMarkdownShowsRetentionRows) {
  const auto r = embias("debias --embeddings " + table_ + " --plan " + data("plans/gender-lpsg-all.json") +
                        " --out " + dir_ + "/lpsg.txt --format md");
  ASSERT_EQ(r.code, 0) << stderr_text();
  EXPECT_NE(r.out.find("| Test | Category | Original d (p) | Debiased d (p) |"), std::string::npos);
  EXPECT_NE(r.out.find("| ME (IR) |"), std::string::npos);
}

TEST_F(Cli, DataDirResolvesRelativePaths) {
  const std::string args = "debias --embeddings synth.txt --plan plans/gender-pca.json --out " + dir_ + "/pca.txt";
  const std::string data_dir = dir_ + "/datadir";
  fs::create_directories(data_dir + "/plans");
  fs::copy_file(table_, data_dir + "/synth.txt", fs::copy_options::overwrite_existing);
  fs::copy_file(data("plans/gender-pca.json"), data_dir + "/plans/gender-pca.json",
                fs::copy_options::overwrite_existing);
  const auto without = support::run("cd / && " + support::cli() + " " + args + " 2>/dev/null");
  EXPECT_EQ(without.code, 64);
  const auto with = support::run("cd / && EMBIAS_DATA_DIR=" + data_dir + " " + support::cli() + " " + args +
                                 " 2>/dev/null");
  EXPECT_EQ(with.code, 0);
}

TEST_F(Cli, DumpMatchesShippedData) {
  EXPECT_EQ(embias("dump suite-builtin").out, support::read_file(data("suites/builtin.json")));
  EXPECT_EQ(embias("dump suite-translated").out, support::read_file(data("suites/translated.json")));
  EXPECT_EQ(embias("dump templates-identity").out, support::read_file(data("templates/identity.json")));
}

TEST_F(Cli, PlantedSynthWritesSuite) {
  const std::string table = dir_ + "/planted.txt";
  const std::string suite = dir_ + "/planted.json";
  ASSERT_EQ(embias("synth --kind planted --out " + table + " --suite-out " + suite).code, 0);
  const auto r = embias("weat --embeddings " + table + " --suite " + suite);
  ASSERT_EQ(r.code, 0) << stderr_text();
  const Json j = Json::parse(r.out);
  EXPECT_GT(j["results"][0]["effect_size"].get<double>(), 1.5);
  EXPECT_LT(j["results"][0]["p_value"].get<double>(), 0.01);
}

#include "commands.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "discodep/corpus.hpp"
#include "discodep/predictions.hpp"
#include "discodep/structure.hpp"
#include "discodep/vocab.hpp"
#include "json.hpp"
#include "synthetic_corpus.hpp"

namespace discodep {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "discodep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override { testing::write_synthetic_corpus(dir_.path(), 40, 12, 10); }
  std::string corpus() const { return dir_.path().string(); }
  std::string file(const std::string& name) const { return (dir_.path() / name).string(); }

  testing::TempDir dir_{"cli"};
};

TEST(CliBasics, ComplexityOnTinyCorpus) {
  testing::TempDir tmp("tiny");
  testing::write_synthetic_corpus(tmp.path(), 1, 1, 1);
  const Result r = run({"complexity", "--corpus", tmp.path().string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["documents"], 3);
  const Result table = run({"complexity", "--corpus", tmp.path().string()});
  EXPECT_NE(table.out.find("gap degree 0"), std::string::npos) << table.out;
}

TEST(CliBasics, MissingDirectoryIsDataError) {
  const Result r = run({"complexity", "--corpus", "/nonexistent/discodep"});
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(CliBasics, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"decode"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"train", "--corpus", "x", "--model", "m", "--epochs", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"decode", "--scores", "x", "--algo", "greedy"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, TrainScoreDecodeEvalPipeline) {
  const std::string model = file("model.json");
  Result r = run({"train", "--corpus", corpus(), "--model", model, "--epochs", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("best epoch"), std::string::npos);

  r = run({"score", "--corpus", corpus(), "--split", "test", "--model", model, "--out",
           file("scores.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"decode", "--scores", file("scores.jsonl"), "--algo", "cle", "--out", file("pred.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"eval", "--corpus", corpus(), "--split", "test", "--pred", file("pred.tsv"), "--format",
           "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["uas"].get<double>(), 0.9);
  EXPECT_GT(j["las"].get<double>(), 0.8);

  // parse --model goes through the same path in one step
  r = run({"parse", "--corpus", corpus(), "--split", "test", "--model", model});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(file("pred.tsv")));
  r = run({"parse", "--corpus", corpus(), "--split", "test", "--scores", file("scores.jsonl")});
  EXPECT_EQ(r.out, slurp(file("pred.tsv")));

  // eval against the wrong split names the missing document
  r = run({"eval", "--corpus", corpus(), "--split", "dev", "--pred", file("pred.tsv")});
  EXPECT_EQ(r.code, cli::kExitDataError);
  EXPECT_NE(r.err.find("D0000"), std::string::npos) << r.err;
}

TEST_F(CliTest, EisnerOutputIsProjective) {
  const std::string model = file("m.json");
  ASSERT_EQ(run({"train", "--corpus", corpus(), "--model", model, "--epochs", "2", "--algo",
                 "eisner", "--update", "mira"})
                .code,
            0);
  ASSERT_EQ(run({"score", "--corpus", corpus(), "--split", "dev", "--model", model, "--out",
                 file("s.jsonl")})
                .code,
            0);
  for (const bool single : {false, true}) {
    std::vector<std::string> args{"decode", "--scores", file("s.jsonl"), "--algo", "eisner"};
    if (single) args.push_back("--single-root");
    const Result r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    const auto preds = read_predictions(in);
    EXPECT_EQ(preds.size(), 12u);
    for (const auto& p : preds) {
      EXPECT_TRUE(is_projective(p.tree)) << p.doc_id;
      if (single) EXPECT_EQ(std::count(p.tree.heads.begin(), p.tree.heads.end(), 0), 1);
    }
  }
}

TEST_F(CliTest, StatsOnGoldAndPredictions) {
  Result gold = run({"stats", "--corpus", corpus(), "--split", "dev", "--gold", "--format", "json"});
  ASSERT_EQ(gold.code, 0) << gold.err;
  const auto j = nlohmann::json::parse(gold.out);
  EXPECT_EQ(j["documents"], 12);
  EXPECT_GT(j["avg_leaf_proportion"].get<double>(), 0.0);

  // predictions equal to gold give identical statistics
  const Corpus dev = load_split(dir_.path(), Split::kDev);
  std::vector<Prediction> preds;
  for (const auto& d : dev.documents) preds.push_back({d.doc_id, d.gold_tree()});
  {
    std::ofstream f(file("gold.tsv"), std::ios::binary);
    write_predictions(preds, f);
  }
  Result pred = run({"stats", "--corpus", corpus(), "--split", "dev", "--pred", file("gold.tsv"),
                     "--format", "json"});
  ASSERT_EQ(pred.code, 0) << pred.err;
  const auto k = nlohmann::json::parse(pred.out);
  EXPECT_EQ(k["avg_max_path_len"], j["avg_max_path_len"]);
  EXPECT_EQ(k["avg_leaf_proportion"], j["avg_leaf_proportion"]);

  EXPECT_EQ(run({"stats", "--corpus", corpus(), "--split", "dev"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"stats", "--corpus", corpus(), "--split", "dev", "--gold", "--node-count", "x"})
                .code,
            cli::kExitUsage);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  for (int i = 0; i < 2; ++i) {
    ASSERT_EQ(run({"train", "--corpus", corpus(), "--model", file("m" + std::to_string(i)),
                   "--epochs", "2"})
                  .code,
              0);
  }
  EXPECT_EQ(slurp(file("m0")), slurp(file("m1")));
  const Result a = run({"parse", "--corpus", corpus(), "--split", "dev", "--model", file("m0")});
  const Result b = run({"parse", "--corpus", corpus(), "--split", "dev", "--model", file("m1")});
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST_F(CliTest, DumpAndVocab) {
  Result r = run({"dump", "--corpus", corpus(), "--split", "train", "--out", file("train.jsonl"),
                  "--tsv", file("train.tsv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(file("train.jsonl"), std::ios::binary);
  const auto docs = read_corpus_jsonl(in);
  const Corpus train = load_split(dir_.path(), Split::kTrain);
  ASSERT_EQ(docs.size(), train.size());
  for (std::size_t i = 0; i < docs.size(); ++i) EXPECT_EQ(docs[i], train.documents[i]);
  EXPECT_EQ(slurp(file("train.tsv")).rfind("doc_id\tedu_index\ttext\tgold_head\tgold_relation\n", 0),
            0u);

  r = run({"vocab", "--corpus", corpus()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream vin(r.out);
  const Vocab v = read_vocab(vin);
  EXPECT_GE(v.word_id("which"), Vocab::kReserved);
  EXPECT_EQ(v.relations.size(), 4);
}

}  // namespace
}  // namespace discodep

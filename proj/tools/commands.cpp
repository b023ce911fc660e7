#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "discodep/corpus.hpp"
#include "discodep/decoders.hpp"
#include "discodep/errors.hpp"
#include "discodep/evaluation.hpp"
#include "discodep/linear_model.hpp"
#include "discodep/predictions.hpp"
#include "discodep/score_exchange.hpp"
#include "discodep/structure.hpp"
#include "discodep/vocab.hpp"
#include "json.hpp"

namespace discodep::cli {

namespace fs = std::filesystem;

namespace {

struct Config {
  std::string corpus_dir;
  std::string split = "dev";
  std::string algo = "cle";
  bool single_root = false;
  std::string model_path;
  std::string scores_path;
  std::string pred_path;
  std::string out_path;
  std::string tsv_path;
  std::string format = "text";
  std::string node_count = "with-root";
  std::string update = "perceptron";
  std::uint64_t seed = 42;
  int epochs = 10;
  double mira_c = 0.1;
  bool no_average = false;
  bool gold = false;
  std::string wrapper_key = "root";
};

LoadOptions load_options(const Config& c) { return {c.wrapper_key}; }

NodeCount node_count(const std::string& name) {
  if (name == "with-root") return NodeCount::kWithRoot;
  if (name == "without-root") return NodeCount::kWithoutRoot;
  throw UsageError("--node-count must be with-root or without-root");
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot open " + path + " for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::vector<DepTree> gold_trees(const Corpus& corpus) {
  std::vector<DepTree> trees;
  for (const auto& doc : corpus.documents) trees.push_back(doc.gold_tree());
  return trees;
}

std::vector<std::string> doc_ids(const Corpus& corpus) {
  std::vector<std::string> ids;
  for (const auto& doc : corpus.documents) ids.push_back(doc.doc_id);
  return ids;
}

std::vector<Prediction> read_prediction_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return read_predictions(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  }
}

// Predicted trees in gold document order.
std::vector<DepTree> align_predictions(const Corpus& gold, std::vector<Prediction> preds) {
  std::map<std::string, DepTree> by_id;
  for (auto& p : preds) {
    validate(p.tree);
    by_id.emplace(p.doc_id, std::move(p.tree));
  }
  std::vector<DepTree> out;
  for (const auto& doc : gold.documents) {
    auto it = by_id.find(doc.doc_id);
    if (it == by_id.end()) throw ValidationError("no prediction for document " + doc.doc_id);
    out.push_back(std::move(it->second));
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    throw ValidationError("prediction for unknown document " + by_id.begin()->first);
  }
  return out;
}

int cmd_complexity(const Config& c, std::ostream& out) {
  std::vector<Corpus> corpora;
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
    corpora.push_back(load_split(c.corpus_dir, s, load_options(c)));
  }
  const ComplexityReport report = complexity_census(corpora);
  if (c.format == "json") out << to_json(report) << '\n';
  else print_table(report, out);
  return kExitOk;
}

int cmd_stats(const Config& c, std::ostream& out) {
  const Corpus corpus = load_split(c.corpus_dir, parse_split(c.split), load_options(c));
  std::vector<DepTree> trees =
      c.gold ? gold_trees(corpus) : align_predictions(corpus, read_prediction_file(c.pred_path));
  const StructureMetrics m = structure_metrics(trees, node_count(c.node_count));
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["split"] = c.split;
    j["source"] = c.gold ? "gold" : c.pred_path;
    j["documents"] = trees.size();
    j["avg_max_path_len"] = m.avg_max_path_len;
    j["avg_leaf_proportion"] = m.avg_leaf_proportion;
    out << j.dump(2) << '\n';
  } else {
    out << std::fixed << std::setprecision(3);
    out << std::left << std::setw(28) << "" << c.split << '\n';
    out << std::setw(28) << "avg max path len" << m.avg_max_path_len << '\n';
    out << std::setw(28) << "avg proportion leaf nodes" << m.avg_leaf_proportion << '\n';
  }
  return kExitOk;
}

int cmd_train(const Config& c, std::ostream& err) {
  const Corpus train_corpus = load_split(c.corpus_dir, Split::kTrain, load_options(c));
  const Corpus dev = load_split(c.corpus_dir, Split::kDev, load_options(c));
  TrainOptions opts;
  opts.epochs = c.epochs;
  opts.decoder = parse_algorithm(c.algo);
  opts.update = parse_update_rule(c.update);
  opts.seed = c.seed;
  opts.mira_c = c.mira_c;
  opts.single_root = c.single_root;
  opts.averaged = !c.no_average;
  const auto result = train(train_corpus, dev, opts, [&err](const EpochStats& s) {
    err << "epoch " << s.epoch << "  train UAS " << std::fixed << std::setprecision(4)
        << s.train_uas << "  dev UAS " << s.dev_uas << '\n';
  });
  err << "best epoch " << result.best_epoch << '\n';
  save_model(result.model, fs::path(c.model_path));
  return kExitOk;
}

std::vector<Prediction> decode_all(const std::vector<ScoredDocument>& docs, const Config& c) {
  const Algorithm algo = parse_algorithm(c.algo);
  std::vector<Prediction> preds;
  for (const auto& sd : docs) {
    DepTree tree = decode(sd.scores, algo, {c.single_root});
    if (sd.scores.has_labels()) tree = assign_labels(std::move(tree), sd.scores);
    preds.push_back({sd.doc_id, std::move(tree)});
  }
  return preds;
}

std::vector<ScoredDocument> score_corpus(const Corpus& corpus, const LinearModel& model,
                                         bool averaged) {
  std::vector<ScoredDocument> docs;
  for (const auto& doc : corpus.documents) {
    docs.push_back({doc.doc_id, score_document(model, doc, averaged)});
  }
  return docs;
}

int cmd_parse(const Config& c, std::ostream& out) {
  std::vector<ScoredDocument> scored;
  if (!c.model_path.empty()) {
    const Corpus corpus = load_split(c.corpus_dir, parse_split(c.split), load_options(c));
    scored = score_corpus(corpus, load_model(fs::path(c.model_path)), !c.no_average);
  } else {
    scored = read_scores(fs::path(c.scores_path));
  }
  Output o(c.out_path, out);
  write_predictions(decode_all(scored, c), o.get());
  return kExitOk;
}

int cmd_decode(const Config& c, std::ostream& out) {
  const auto scored = read_scores(fs::path(c.scores_path));
  Output o(c.out_path, out);
  write_predictions(decode_all(scored, c), o.get());
  return kExitOk;
}

int cmd_score(const Config& c, std::ostream& out) {
  const Corpus corpus = load_split(c.corpus_dir, parse_split(c.split), load_options(c));
  const auto scored = score_corpus(corpus, load_model(fs::path(c.model_path)), !c.no_average);
  Output o(c.out_path, out);
  write_scores(scored, o.get());
  return kExitOk;
}

int cmd_eval(const Config& c, std::ostream& out) {
  const Corpus corpus = load_split(c.corpus_dir, parse_split(c.split), load_options(c));
  const auto pred = align_predictions(corpus, read_prediction_file(c.pred_path));
  const auto gold = gold_trees(corpus);
  const auto names = doc_ids(corpus);
  const EvalReport report = attachment_scores(pred, gold, names, node_count(c.node_count));
  if (c.format == "json") out << to_json(report) << '\n';
  else print_table(report, out);
  return kExitOk;
}

int cmd_dump(const Config& c, std::ostream& out) {
  const Corpus corpus = load_split(c.corpus_dir, parse_split(c.split), load_options(c));
  {
    Output o(c.out_path, out);
    write_corpus_jsonl(corpus, o.get(), load_options(c));
  }
  if (!c.tsv_path.empty()) {
    std::ofstream tsv(c.tsv_path, std::ios::binary);
    if (!tsv) throw IoError("cannot open " + c.tsv_path + " for writing");
    write_tsv_dump(corpus, tsv);
  }
  return kExitOk;
}

int cmd_vocab(const Config& c, std::ostream& out) {
  const Corpus corpus = load_split(c.corpus_dir, Split::kTrain, load_options(c));
  Output o(c.out_path, out);
  write_vocab(build_vocab(corpus), o.get());
  return kExitOk;
}

void add_corpus(CLI::App* cmd, Config& c) {
  cmd->add_option("--corpus", c.corpus_dir, "SciDTB dataset directory (train/, dev/gold/, test/gold/)")
      ->required();
  cmd->add_option("--wrapper-key", c.wrapper_key, "JSON key of the EDU array")
      ->capture_default_str();
}

void add_split(CLI::App* cmd, Config& c) {
  cmd->add_option("--split", c.split, "train, dev or test")
      ->check(CLI::IsMember({"train", "dev", "test"}))
      ->capture_default_str();
}

void add_decoder(CLI::App* cmd, Config& c) {
  cmd->add_option("--algo,--decoder", c.algo, "eisner or cle")
      ->check(CLI::IsMember({"eisner", "cle"}))
      ->capture_default_str();
  cmd->add_flag("--single-root", c.single_root, "allow exactly one dependent of ROOT");
}

void add_format(CLI::App* cmd, Config& c) {
  cmd->add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

void add_node_count(CLI::App* cmd, Config& c) {
  cmd->add_option("--node-count", c.node_count,
                  "leaf proportion denominator: with-root or without-root")
      ->check(CLI::IsMember({"with-root", "without-root"}))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discourse dependency parsing toolkit.\n"
               "Exit codes: 0 success, 1 data or IO error, 2 usage error."};
  app.name("discodep");
  app.require_subcommand(1);
  Config c;

  auto* complexity = app.add_subcommand("complexity", "gap/edge degree and projectivity census over all splits");
  add_corpus(complexity, c);
  add_format(complexity, c);

  auto* stats = app.add_subcommand("stats", "average max path length and leaf proportion");
  add_corpus(stats, c);
  add_split(stats, c);
  add_format(stats, c);
  add_node_count(stats, c);
  auto* gold_flag = stats->add_flag("--gold", c.gold, "use the gold trees");
  auto* pred_opt = stats->add_option("--pred", c.pred_path, "predictions TSV");
  gold_flag->excludes(pred_opt);

  auto* train_cmd = app.add_subcommand("train", "train the arc-factored linear model");
  add_corpus(train_cmd, c);
  add_decoder(train_cmd, c);
  train_cmd->add_option("--model", c.model_path, "output model file")->required();
  train_cmd->add_option("--epochs", c.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--update", c.update, "perceptron or mira")
      ->check(CLI::IsMember({"perceptron", "mira"}))
      ->capture_default_str();
  train_cmd->add_option("--mira-c", c.mira_c, "MIRA step cap")->capture_default_str();
  train_cmd->add_option("--seed", c.seed)->capture_default_str();
  train_cmd->add_flag("--no-average", c.no_average, "select epochs with raw weights");

  auto* parse = app.add_subcommand("parse", "score and decode a split");
  add_corpus(parse, c);
  add_split(parse, c);
  add_decoder(parse, c);
  auto* model_opt = parse->add_option("--model", c.model_path, "linear model file");
  auto* scores_opt = parse->add_option("--scores", c.scores_path, "score file");
  model_opt->excludes(scores_opt);
  parse->add_option("--out", c.out_path, "predictions TSV (default stdout)");
  parse->add_flag("--no-average", c.no_average, "score with raw weights");

  auto* decode_cmd = app.add_subcommand("decode", "decode a score file");
  add_decoder(decode_cmd, c);
  decode_cmd->add_option("--scores", c.scores_path, "score file")->required();
  decode_cmd->add_option("--out", c.out_path, "predictions TSV (default stdout)");

  auto* score = app.add_subcommand("score", "export linear-model scores as a score file");
  add_corpus(score, c);
  add_split(score, c);
  score->add_option("--model", c.model_path, "linear model file")->required();
  score->add_option("--out", c.out_path, "score file (default stdout)");
  score->add_flag("--no-average", c.no_average, "score with raw weights");

  auto* eval = app.add_subcommand("eval", "UAS/LAS of predictions against gold");
  add_corpus(eval, c);
  add_split(eval, c);
  add_format(eval, c);
  add_node_count(eval, c);
  eval->add_option("--pred", c.pred_path, "predictions TSV")->required();

  auto* dump = app.add_subcommand("dump", "canonical JSONL (and optional TSV) dump of a split");
  add_corpus(dump, c);
  add_split(dump, c);
  dump->add_option("--out", c.out_path, "JSONL output (default stdout)");
  dump->add_option("--tsv", c.tsv_path, "TSV inspection dump");

  auto* vocab = app.add_subcommand("vocab", "word/char/relation vocabularies of the training split");
  add_corpus(vocab, c);
  vocab->add_option("--out", c.out_path, "vocab JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (stats->parsed() && !c.gold && c.pred_path.empty()) {
      throw UsageError("stats needs --gold or --pred");
    }
    if (parse->parsed() && c.model_path.empty() && c.scores_path.empty()) {
      throw UsageError("parse needs --model or --scores");
    }
    if (complexity->parsed()) return cmd_complexity(c, out);
    if (stats->parsed()) return cmd_stats(c, out);
    if (train_cmd->parsed()) return cmd_train(c, err);
    if (parse->parsed()) return cmd_parse(c, out);
    if (decode_cmd->parsed()) return cmd_decode(c, out);
    if (score->parsed()) return cmd_score(c, out);
    if (eval->parsed()) return cmd_eval(c, out);
    if (dump->parsed()) return cmd_dump(c, out);
    if (vocab->parsed()) return cmd_vocab(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace discodep::cli

#include "discodep/linear_model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "discodep/errors.hpp"
#include "json.hpp"

namespace discodep {

void LinearModel::resize_weights() {
  weights.assign(arc_features.size(), 0.0);
  averaged_weights.assign(arc_features.size(), 0.0);
  const std::size_t label_cells = static_cast<std::size_t>(label_features.size()) * labels.size();
  label_weights.assign(label_cells, 0.0);
  averaged_label_weights.assign(label_cells, 0.0);
}

double dot(const std::vector<double>& w, const FeatureVector& f) {
  double s = 0.0;
  for (auto [id, count] : f.entries) s += w[id] * count;
  return s;
}

namespace {

void label_scores_into(const std::vector<double>& lw, int num_labels, const FeatureVector& f,
                       double* out) {
  std::fill(out, out + num_labels, 0.0);
  for (auto [id, count] : f.entries) {
    const double* row = lw.data() + static_cast<std::size_t>(id) * num_labels;
    for (int r = 0; r < num_labels; ++r) out[r] += row[r] * count;
  }
}

}  // namespace

ScoreSet score_document(const LinearModel& model, const DocumentContext& ctx, bool averaged) {
  const auto& w = averaged ? model.averaged_weights : model.weights;
  const auto& lw = averaged ? model.averaged_label_weights : model.label_weights;
  const int n = ctx.size();
  ScoreSet scores(n);
  const int num_labels = model.num_labels();
  if (num_labels > 0) scores.set_label_inventory(model.labels);
  std::vector<double> buf(num_labels);
  for (int h = 0; h <= n; ++h) {
    for (int d = 1; d <= n; ++d) {
      if (h == d) continue;
      scores.arc(h, d) = dot(w, to_feature_vector(arc_feature_strings(ctx, h, d), model.arc_features));
      if (num_labels > 0) {
        label_scores_into(lw, num_labels,
                          to_feature_vector(label_feature_strings(ctx, h, d), model.label_features),
                          buf.data());
        for (int r = 0; r < num_labels; ++r) scores.label(h, d, r) = buf[r];
      }
    }
  }
  return scores;
}

ScoreSet score_document(const LinearModel& model, const Document& doc, bool averaged) {
  return score_document(model, DocumentContext(doc), averaged);
}

UpdateRule parse_update_rule(std::string_view name) {
  if (name == "perceptron") return UpdateRule::kPerceptron;
  if (name == "mira") return UpdateRule::kMira;
  throw UsageError("unknown update rule '" + std::string(name) +
                   "' (expected perceptron or mira)");
}

std::string_view to_string(UpdateRule rule) {
  return rule == UpdateRule::kPerceptron ? "perceptron" : "mira";
}

double mira_step(double loss, double margin, double delta_sq_norm, double c) {
  if (delta_sq_norm <= 0.0) return 0.0;
  return std::min(c, std::max(0.0, loss - margin) / delta_sq_norm);
}

FeatureVector tree_features(const LinearModel& model, const DocumentContext& ctx,
                            const DepTree& tree) {
  std::vector<std::string> all;
  for (int d = 1; d <= tree.size(); ++d) {
    auto f = arc_feature_strings(ctx, tree.head(d), d);
    all.insert(all.end(), f.begin(), f.end());
  }
  return to_feature_vector(all, model.arc_features);
}

namespace {

// difference f(gold) - f(pred), zero entries dropped
std::map<std::uint32_t, double> feature_delta(const FeatureVector& gold, const FeatureVector& pred) {
  std::map<std::uint32_t, double> delta;
  for (auto [id, c] : gold.entries) delta[id] += c;
  for (auto [id, c] : pred.entries) delta[id] -= c;
  std::erase_if(delta, [](const auto& kv) { return kv.second == 0.0; });
  return delta;
}

}  // namespace

void apply_update(LinearModel& model, const DocumentContext& ctx, const DepTree& gold,
                  const DepTree& pred, double scale) {
  const auto delta =
      feature_delta(tree_features(model, ctx, gold), tree_features(model, ctx, pred));
  for (auto [id, v] : delta) model.weights[id] += scale * v;
}

namespace {

struct TrainingDoc {
  const Document* doc = nullptr;
  DepTree gold;
  int n = 0;
  std::vector<FeatureVector> arc;        // [h * (n+1) + d], empty for illegal cells
  std::vector<FeatureVector> gold_label; // [d - 1]
  std::vector<int> gold_label_id;        // -1 when unseen
};

class Trainer {
 public:
  Trainer(const Corpus& train, const TrainOptions& options) : options_(options) {
    std::set<std::string> inventory;
    for (const Document& doc : train.documents) {
      for (std::size_t i = 1; i < doc.edus.size(); ++i) inventory.insert(doc.edus[i].gold_relation);
    }
    model_.labels.assign(inventory.begin(), inventory.end());

    docs_.reserve(train.size());
    for (const Document& doc : train.documents) {
      TrainingDoc td;
      td.doc = &doc;
      td.gold = doc.gold_tree();
      td.n = doc.size();
      const DocumentContext ctx(doc);
      const int w = td.n + 1;
      td.arc.resize(static_cast<std::size_t>(w) * w);
      for (int h = 0; h <= td.n; ++h) {
        for (int d = 1; d <= td.n; ++d) {
          if (h == d) continue;
          td.arc[h * w + d] =
              to_feature_vector(arc_feature_strings(ctx, h, d), model_.arc_features, true);
        }
      }
      for (int d = 1; d <= td.n; ++d) {
        td.gold_label.push_back(to_feature_vector(label_feature_strings(ctx, td.gold.head(d), d),
                                                  model_.label_features, true));
        const auto& rel = td.gold.label(d);
        auto it = std::lower_bound(model_.labels.begin(), model_.labels.end(), rel);
        td.gold_label_id.push_back(static_cast<int>(it - model_.labels.begin()));
      }
      docs_.push_back(std::move(td));
    }
    model_.resize_weights();
    arc_acc_.assign(model_.weights.size(), 0.0);
    label_acc_.assign(model_.label_weights.size(), 0.0);
  }

  // Returns online UAS over the epoch.
  double run_epoch(std::mt19937_64& rng) {
    std::vector<std::size_t> order(docs_.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    long correct = 0, total = 0;
    for (std::size_t idx : order) {
      const TrainingDoc& td = docs_[idx];
      const DepTree pred = decode_current(td);
      for (int d = 1; d <= td.n; ++d) correct += pred.head(d) == td.gold.head(d) ? 1 : 0;
      total += td.n;
      update_arcs(td, pred);
      update_labels(td);
      ++step_;
    }
    return total > 0 ? static_cast<double>(correct) / total : 0.0;
  }

  // Snapshot with averaged weights filled in.
  LinearModel snapshot() const {
    LinearModel m = model_;
    const double c = static_cast<double>(step_);
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      m.averaged_weights[i] = m.weights[i] - arc_acc_[i] / c;
    }
    for (std::size_t i = 0; i < m.label_weights.size(); ++i) {
      m.averaged_label_weights[i] = m.label_weights[i] - label_acc_[i] / c;
    }
    m.update_count = step_ - 1;
    return m;
  }

 private:
  DepTree decode_current(const TrainingDoc& td) const {
    ScoreSet scores(td.n);
    const int w = td.n + 1;
    for (int h = 0; h <= td.n; ++h) {
      for (int d = 1; d <= td.n; ++d) {
        if (h != d) scores.arc(h, d) = dot(model_.weights, td.arc[h * w + d]);
      }
    }
    return decode(scores, options_.decoder, {options_.single_root});
  }

  void add_arc(std::uint32_t id, double v) {
    model_.weights[id] += v;
    arc_acc_[id] += static_cast<double>(step_) * v;
  }

  void update_arcs(const TrainingDoc& td, const DepTree& pred) {
    if (pred.heads == td.gold.heads) return;
    const int w = td.n + 1;
    std::map<std::uint32_t, double> delta;
    double loss = 0.0;
    for (int d = 1; d <= td.n; ++d) {
      const int g = td.gold.head(d);
      const int p = pred.head(d);
      if (g == p) continue;
      loss += 1.0;
      for (auto [id, c] : td.arc[g * w + d].entries) delta[id] += c;
      for (auto [id, c] : td.arc[p * w + d].entries) delta[id] -= c;
    }
    double scale = 1.0;
    if (options_.update == UpdateRule::kMira) {
      double margin = 0.0;
      double sq = 0.0;
      for (auto [id, v] : delta) {
        margin += model_.weights[id] * v;
        sq += v * v;
      }
      scale = mira_step(loss, margin, sq, options_.mira_c);
    }
    if (scale == 0.0) return;
    for (auto [id, v] : delta) {
      if (v != 0.0) add_arc(id, scale * v);
    }
  }

  void update_labels(const TrainingDoc& td) {
    const int num_labels = model_.num_labels();
    if (num_labels == 0) return;
    std::vector<double> buf(num_labels);
    for (int d = 1; d <= td.n; ++d) {
      const FeatureVector& f = td.gold_label[d - 1];
      label_scores_into(model_.label_weights, num_labels, f, buf.data());
      int pred = 0;
      for (int r = 1; r < num_labels; ++r) {
        if (buf[r] > buf[pred]) pred = r;
      }
      const int gold = td.gold_label_id[d - 1];
      if (pred == gold) continue;
      for (auto [id, c] : f.entries) {
        const std::size_t row = static_cast<std::size_t>(id) * num_labels;
        model_.label_weights[row + gold] += c;
        label_acc_[row + gold] += static_cast<double>(step_) * c;
        model_.label_weights[row + pred] -= c;
        label_acc_[row + pred] -= static_cast<double>(step_) * c;
      }
    }
  }

  TrainOptions options_;
  LinearModel model_;
  std::vector<TrainingDoc> docs_;
  std::vector<double> arc_acc_;
  std::vector<double> label_acc_;
  std::int64_t step_ = 1;
};

double dev_uas(const LinearModel& model, const std::vector<DocumentContext>& contexts,
               const Corpus& dev, const TrainOptions& options) {
  long correct = 0, total = 0;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    const DepTree pred = decode(score_document(model, contexts[i], options.averaged),
                                options.decoder, {options.single_root});
    const Document& doc = dev.documents[i];
    for (int d = 1; d <= doc.size(); ++d) {
      correct += pred.head(d) == doc.edus[d].gold_head ? 1 : 0;
    }
    total += doc.size();
  }
  return total > 0 ? static_cast<double>(correct) / total : 0.0;
}

}  // namespace

TrainResult train(const Corpus& train_corpus, const Corpus& dev, const TrainOptions& options,
                  const EpochCallback& on_epoch) {
  if (options.epochs <= 0) throw UsageError("training needs at least one epoch");
  if (train_corpus.documents.empty()) throw UsageError("training corpus is empty");

  Trainer trainer(train_corpus, options);
  std::vector<DocumentContext> dev_contexts;
  dev_contexts.reserve(dev.size());
  for (const Document& doc : dev.documents) dev_contexts.emplace_back(doc);

  std::mt19937_64 rng(options.seed);
  TrainResult result;
  double best = -1.0;
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    EpochStats stats;
    stats.epoch = epoch;
    stats.train_uas = trainer.run_epoch(rng);
    LinearModel snap = trainer.snapshot();
    if (!dev.documents.empty()) stats.dev_uas = dev_uas(snap, dev_contexts, dev, options);
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
    const bool better = dev.documents.empty() || stats.dev_uas > best;
    if (better) {
      best = stats.dev_uas;
      result.best_epoch = epoch;
      result.model = std::move(snap);
    }
  }
  return result;
}

void save_model(const LinearModel& model, std::ostream& out) {
  nlohmann::ordered_json j;
  j["template_version"] = model.template_version;
  j["update_count"] = model.update_count;
  j["labels"] = model.labels;
  j["arc_features"] = model.arc_features.symbols();
  j["weights"] = model.weights;
  j["averaged_weights"] = model.averaged_weights;
  j["label_features"] = model.label_features.symbols();
  j["label_weights"] = model.label_weights;
  j["averaged_label_weights"] = model.averaged_label_weights;
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing model");
}

void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  save_model(model, out);
}

LinearModel load_model(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what(), e.byte);
  }
  LinearModel m;
  try {
    m.template_version = j.at("template_version").get<std::string>();
    if (m.template_version != kFeatureTemplateVersion) {
      throw ValidationError("model uses feature templates '" + m.template_version +
                            "', this build expects '" + std::string(kFeatureTemplateVersion) + "'");
    }
    m.update_count = j.at("update_count").get<std::int64_t>();
    m.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& s : j.at("arc_features")) m.arc_features.add(s.get<std::string>());
    for (const auto& s : j.at("label_features")) m.label_features.add(s.get<std::string>());
    m.weights = j.at("weights").get<std::vector<double>>();
    m.averaged_weights = j.at("averaged_weights").get<std::vector<double>>();
    m.label_weights = j.at("label_weights").get<std::vector<double>>();
    m.averaged_label_weights = j.at("averaged_label_weights").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model: ") + e.what());
  }
  const std::size_t label_cells = static_cast<std::size_t>(m.label_features.size()) * m.labels.size();
  if (m.weights.size() != static_cast<std::size_t>(m.arc_features.size()) ||
      m.averaged_weights.size() != m.weights.size() || m.label_weights.size() != label_cells ||
      m.averaged_label_weights.size() != label_cells || m.update_count < 0) {
    throw ValidationError("model: weight arrays do not match the feature tables");
  }
  return m;
}

LinearModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_model(in);
}

}  // namespace discodep

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "discodep/corpus.hpp"
#include "discodep/decoders.hpp"
#include "discodep/features.hpp"
#include "discodep/score_set.hpp"
#include "discodep/vocab.hpp"

namespace discodep {

// Arc-factored linear model: score(h, d) = <w, f(doc, h, d)>. Relation
// labels are scored by a second weight block indexed [feature * R + label].
struct LinearModel {
  std::string template_version = std::string(kFeatureTemplateVersion);
  SymbolTable arc_features;
  SymbolTable label_features;
  std::vector<std::string> labels;

  std::vector<double> weights;
  std::vector<double> averaged_weights;
  std::vector<double> label_weights;
  std::vector<double> averaged_label_weights;
  std::int64_t update_count = 0;

  int num_labels() const { return static_cast<int>(labels.size()); }
  // Zero-initialise all weight blocks to match the interners.
  void resize_weights();

  friend bool operator==(const LinearModel& a, const LinearModel& b) {
    return a.template_version == b.template_version &&
           a.arc_features.symbols() == b.arc_features.symbols() &&
           a.label_features.symbols() == b.label_features.symbols() && a.labels == b.labels &&
           a.weights == b.weights && a.averaged_weights == b.averaged_weights &&
           a.label_weights == b.label_weights &&
           a.averaged_label_weights == b.averaged_label_weights &&
           a.update_count == b.update_count;
  }
};

double dot(const std::vector<double>& w, const FeatureVector& f);

// Arc scores for every legal arc and, when the model has labels, label scores.
ScoreSet score_document(const LinearModel& model, const DocumentContext& ctx,
                        bool averaged = true);
ScoreSet score_document(const LinearModel& model, const Document& doc, bool averaged = true);

enum class UpdateRule { kPerceptron, kMira };
UpdateRule parse_update_rule(std::string_view name);
std::string_view to_string(UpdateRule rule);

// Step size of the single-constraint MIRA update:
// min(C, max(0, loss - margin) / ||delta||^2); 0 when ||delta||^2 == 0.
double mira_step(double loss, double margin, double delta_sq_norm, double c);

struct TrainOptions {
  int epochs = 10;
  Algorithm decoder = Algorithm::kChuLiuEdmonds;
  UpdateRule update = UpdateRule::kPerceptron;
  std::uint64_t seed = 42;
  double mira_c = 0.1;
  bool single_root = false;
  // Select and decode with averaged weights.
  bool averaged = true;
};

struct EpochStats {
  int epoch = 0;
  double train_uas = 0.0;  // online accuracy during the epoch
  double dev_uas = -1.0;   // -1 without a dev corpus
};

struct TrainResult {
  LinearModel model;
  int best_epoch = 0;
  std::vector<EpochStats> history;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// Online structured training. Each epoch visits the training documents in a
// seeded shuffled order, decodes with the current weights and updates toward
// the gold tree. The returned model is the snapshot of the epoch with the
// best dev UAS (the last epoch when `dev` is empty). Throws UsageError on
// zero epochs or an empty training corpus.
TrainResult train(const Corpus& train_corpus, const Corpus& dev, const TrainOptions& options,
                  const EpochCallback& on_epoch = {});

// Features of an explicit tree summed over its arcs.
FeatureVector tree_features(const LinearModel& model, const DocumentContext& ctx,
                            const DepTree& tree);

// Applies w += scale * (f(gold) - f(pred)) to the non-averaged weights.
// Exposed for tests of the update arithmetic.
void apply_update(LinearModel& model, const DocumentContext& ctx, const DepTree& gold,
                  const DepTree& pred, double scale);

void save_model(const LinearModel& model, std::ostream& out);
void save_model(const LinearModel& model, const std::filesystem::path& path);
// Throws ValidationError when the stored template version differs.
LinearModel load_model(std::istream& in);
LinearModel load_model(const std::filesystem::path& path);

}  // namespace discodep

#include "discodep/evaluation.hpp"

#include <iomanip>
#include <ostream>

#include "discodep/errors.hpp"
#include "json.hpp"

namespace discodep {

AttachmentCounts count_attachments(const DepTree& pred, const DepTree& gold) {
  AttachmentCounts c;
  const bool labelled = pred.has_labels() && gold.has_labels();
  for (int d = 1; d <= gold.size(); ++d) {
    ++c.total;
    if (pred.head(d) != gold.head(d)) continue;
    ++c.correct_heads;
    if (labelled && pred.label(d) == gold.label(d)) ++c.correct_both;
  }
  return c;
}

EvalReport attachment_scores(std::span<const DepTree> pred, std::span<const DepTree> gold,
                             std::span<const std::string> names, NodeCount convention) {
  auto name = [&](std::size_t i) {
    return i < names.size() ? names[i] : "document #" + std::to_string(i);
  };
  if (pred.size() != gold.size()) {
    throw ValidationError("prediction count " + std::to_string(pred.size()) +
                          " does not match gold count " + std::to_string(gold.size()));
  }
  EvalReport report;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (pred[i].size() != gold[i].size()) {
      throw ValidationError(name(i) + ": predicted " + std::to_string(pred[i].size()) +
                            " EDUs, gold has " + std::to_string(gold[i].size()));
    }
    report.counts.merge(count_attachments(pred[i], gold[i]));
  }
  report.documents = static_cast<int>(gold.size());
  const auto& c = report.counts;
  if (c.total > 0) {
    report.uas = static_cast<double>(c.correct_heads) / c.total;
    report.las = static_cast<double>(c.correct_both) / c.total;
  }
  if (c.correct_heads > 0) {
    report.conditional_label_accuracy = static_cast<double>(c.correct_both) / c.correct_heads;
  }
  if (!pred.empty()) report.structure = structure_metrics(pred, convention);
  return report;
}

StructureMetrics structure_metrics(std::span<const DepTree> trees, NodeCount convention) {
  if (trees.empty()) throw ValidationError("structure metrics need at least one tree");
  double path = 0.0;
  double leaves = 0.0;
  for (const DepTree& t : trees) {
    path += max_path_length(t);
    leaves += leaf_proportion(t, convention);
  }
  const double n = static_cast<double>(trees.size());
  return {path / n, leaves / n};
}

std::string to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["documents"] = report.documents;
  j["edus"] = report.counts.total;
  j["correct_heads"] = report.counts.correct_heads;
  j["correct_heads_and_labels"] = report.counts.correct_both;
  j["uas"] = report.uas;
  j["las"] = report.las;
  j["conditional_label_accuracy"] = report.conditional_label_accuracy;
  j["avg_max_path_len"] = report.structure.avg_max_path_len;
  j["avg_leaf_proportion"] = report.structure.avg_leaf_proportion;
  return j.dump(2);
}

void print_table(const EvalReport& report, std::ostream& out) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(3);
  out << std::left << std::setw(28) << "" << std::setw(8) << "UAS" << "LAS\n";
  out << std::setw(28) << "attachment" << std::setw(8) << report.uas << report.las << '\n';
  out << std::setw(28) << "conditional label acc" << report.conditional_label_accuracy << '\n';
  out << std::setw(28) << "avg max path len" << report.structure.avg_max_path_len << '\n';
  out << std::setw(28) << "avg proportion leaf nodes" << report.structure.avg_leaf_proportion
      << '\n';
  out.flags(flags);
}

}  // namespace discodep

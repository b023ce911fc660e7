#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "discodep/dep_tree.hpp"
#include "discodep/structure.hpp"

namespace discodep {

struct AttachmentCounts {
  long total = 0;          // non-root EDUs
  long correct_heads = 0;
  long correct_both = 0;   // head and relation

  void merge(const AttachmentCounts& o) {
    total += o.total;
    correct_heads += o.correct_heads;
    correct_both += o.correct_both;
  }
};

struct StructureMetrics {
  double avg_max_path_len = 0.0;
  double avg_leaf_proportion = 0.0;
};

struct EvalReport {
  AttachmentCounts counts;
  // Micro-averaged over EDUs. las is joint head+label accuracy;
  // conditional_label_accuracy divides by correct heads instead.
  double uas = 0.0;
  double las = 0.0;
  double conditional_label_accuracy = 0.0;
  // Macro-averaged over predicted trees.
  StructureMetrics structure;
  int documents = 0;
};

AttachmentCounts count_attachments(const DepTree& pred, const DepTree& gold);

// pred and gold are aligned by document. `names`, when given, labels the
// documents in error messages. Throws ValidationError on a count or EDU-length
// mismatch. Labels are compared only when both trees carry them.
EvalReport attachment_scores(std::span<const DepTree> pred, std::span<const DepTree> gold,
                             std::span<const std::string> names = {},
                             NodeCount convention = kDefaultNodeCount);

// Averages of max_path_length and leaf_proportion, dividing by the number of
// trees. Throws ValidationError on an empty list.
StructureMetrics structure_metrics(std::span<const DepTree> trees,
                                   NodeCount convention = kDefaultNodeCount);

std::string to_json(const EvalReport& report);
// UAS / LAS row followed by the structure rows.
void print_table(const EvalReport& report, std::ostream& out);

}  // namespace discodep

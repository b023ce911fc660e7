#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "discodep/dep_tree.hpp"

namespace discodep {

struct Prediction {
  std::string doc_id;
  DepTree tree;
};

// TSV with header "doc_id edu_index predicted_head predicted_relation", one
// row per non-root EDU. Unlabelled trees write an empty relation column.
void write_predictions(const std::vector<Prediction>& preds, std::ostream& out);

// Rows for a document must be contiguous and list edu_index 1..n in order.
// Throws ParseError with the line number otherwise.
std::vector<Prediction> read_predictions(std::istream& in);

}  // namespace discodep

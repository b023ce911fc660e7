#include "discodep/score_set.hpp"

#include <cmath>

#include "discodep/errors.hpp"

namespace discodep {

ScoreSet::ScoreSet(int n) : n_(n), arcs_(static_cast<std::size_t>(n + 1) * (n + 1), 0.0) {
  if (n < 0) throw ValidationError("ScoreSet: negative EDU count");
  for (int h = 0; h <= n; ++h) {
    for (int d = 0; d <= n; ++d) {
      if (!legal(h, d)) arc(h, d) = kNegInf;
    }
  }
}

void ScoreSet::set_label_inventory(std::vector<std::string> inventory) {
  label_inventory_ = std::move(inventory);
  labels_.assign(arcs_.size() * label_inventory_.size(), 0.0);
}

void ScoreSet::set_inventory_only(std::vector<std::string> inventory) {
  label_inventory_ = std::move(inventory);
  labels_.clear();
}

void ScoreSet::validate() const {
  const std::size_t cells = static_cast<std::size_t>(width()) * width();
  if (arcs_.size() != cells) {
    throw ValidationError("ScoreSet: arc matrix has " + std::to_string(arcs_.size()) +
                          " cells, expected " + std::to_string(cells));
  }
  for (int h = 0; h <= n_; ++h) {
    for (int d = 1; d <= n_; ++d) {
      if (legal(h, d) && !std::isfinite(arc(h, d))) {
        throw ValidationError("ScoreSet: non-finite score on legal arc " + std::to_string(h) +
                              " -> " + std::to_string(d));
      }
    }
  }
  if (!labels_.empty() && labels_.size() != cells * label_inventory_.size()) {
    throw ValidationError("ScoreSet: label tensor has " + std::to_string(labels_.size()) +
                          " cells, expected " +
                          std::to_string(cells * label_inventory_.size()));
  }
}

double tree_score(const DepTree& tree, const ScoreSet& scores) {
  double total = 0.0;
  for (int d = 1; d <= tree.size(); ++d) total += scores.arc(tree.head(d), d);
  return total;
}

}  // namespace discodep

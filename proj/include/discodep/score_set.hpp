#pragma once

#include <limits>
#include <string>
#include <vector>

#include "discodep/dep_tree.hpp"

namespace discodep {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Arc scores for one document over nodes 0..n. arc(h, d) scores h -> d;
// column 0 and the diagonal are illegal and hold -inf. Label scores, when
// present, are an (n+1) x (n+1) x R tensor aligned with `label_inventory`.
class ScoreSet {
 public:
  ScoreSet() = default;
  // All legal cells start at 0, illegal cells at -inf.
  explicit ScoreSet(int n);

  int n() const { return n_; }
  int width() const { return n_ + 1; }

  double arc(int h, int d) const { return arcs_[index(h, d)]; }
  double& arc(int h, int d) { return arcs_[index(h, d)]; }
  static bool legal(int h, int d) { return d >= 1 && h != d; }

  const std::vector<double>& arc_data() const { return arcs_; }
  std::vector<double>& arc_data() { return arcs_; }

  bool has_labels() const { return !label_inventory_.empty() && !labels_.empty(); }
  int num_labels() const { return static_cast<int>(label_inventory_.size()); }
  const std::vector<std::string>& label_inventory() const { return label_inventory_; }
  // Allocates an all-zero label tensor over `inventory`.
  void set_label_inventory(std::vector<std::string> inventory);
  // Leaves label_scores absent but keeps the inventory.
  void set_inventory_only(std::vector<std::string> inventory);

  double label(int h, int d, int r) const { return labels_[label_index(h, d, r)]; }
  double& label(int h, int d, int r) { return labels_[label_index(h, d, r)]; }
  const std::vector<double>& label_data() const { return labels_; }
  std::vector<double>& label_data() { return labels_; }

  // Throws ValidationError when a legal arc is not finite or sizes disagree.
  void validate() const;

  friend bool operator==(const ScoreSet&, const ScoreSet&) = default;

 private:
  std::size_t index(int h, int d) const {
    return static_cast<std::size_t>(h) * width() + d;
  }
  std::size_t label_index(int h, int d, int r) const {
    return (index(h, d)) * label_inventory_.size() + r;
  }

  int n_ = 0;
  std::vector<double> arcs_;
  std::vector<std::string> label_inventory_;
  std::vector<double> labels_;
};

// Sum of arc scores of `tree`, accumulated over dependents 1..n in order.
double tree_score(const DepTree& tree, const ScoreSet& scores);

}  // namespace discodep

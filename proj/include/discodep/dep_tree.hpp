#pragma once

#include <span>
#include <string>
#include <vector>

namespace discodep {

// A rooted dependency tree over positions 0..n, where 0 is the artificial
// ROOT. heads[d - 1] is the head of node d. labels, when non-empty, is
// aligned with heads.
struct DepTree {
  std::vector<int> heads;
  std::vector<std::string> labels;

  DepTree() = default;
  explicit DepTree(std::vector<int> h, std::vector<std::string> l = {})
      : heads(std::move(h)), labels(std::move(l)) {}

  int size() const { return static_cast<int>(heads.size()); }
  int head(int d) const { return heads[d - 1]; }
  bool has_labels() const { return !labels.empty(); }
  const std::string& label(int d) const { return labels[d - 1]; }

  friend bool operator==(const DepTree&, const DepTree&) = default;
};

// Returns an empty string when `heads` encodes a tree rooted at 0, otherwise
// a message naming the first offending node.
std::string tree_violation(std::span<const int> heads);

// Throws ValidationError on a malformed tree (bad head range, self loop,
// cycle, label count mismatch).
void validate(const DepTree& tree);

bool is_tree(std::span<const int> heads);

// children[v] lists the dependents of v in increasing position order.
std::vector<std::vector<int>> children_of(const DepTree& tree);

}  // namespace discodep

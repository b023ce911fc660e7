#include "discodep/dep_tree.hpp"

#include <string>

#include "discodep/errors.hpp"

namespace discodep {

std::string tree_violation(std::span<const int> heads) {
  const int n = static_cast<int>(heads.size());
  for (int d = 1; d <= n; ++d) {
    const int h = heads[d - 1];
    if (h < 0 || h > n) {
      return "node " + std::to_string(d) + " has head " + std::to_string(h) +
             " outside 0.." + std::to_string(n);
    }
    if (h == d) return "node " + std::to_string(d) + " is its own head";
  }
  // 0 = unvisited, 1 = on current walk, 2 = known to reach ROOT
  std::vector<char> state(n + 1, 0);
  state[0] = 2;
  std::vector<int> walk;
  for (int start = 1; start <= n; ++start) {
    walk.clear();
    int v = start;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = heads[v - 1];
    }
    if (state[v] == 1) {
      return "node " + std::to_string(v) + " lies on a cycle";
    }
    for (int w : walk) state[w] = 2;
  }
  return {};
}

bool is_tree(std::span<const int> heads) { return tree_violation(heads).empty(); }

void validate(const DepTree& tree) {
  if (auto msg = tree_violation(tree.heads); !msg.empty()) {
    throw ValidationError("invalid dependency tree: " + msg);
  }
  if (tree.has_labels() && tree.labels.size() != tree.heads.size()) {
    throw ValidationError("label count " + std::to_string(tree.labels.size()) +
                          " does not match head count " +
                          std::to_string(tree.heads.size()));
  }
}

std::vector<std::vector<int>> children_of(const DepTree& tree) {
  std::vector<std::vector<int>> out(tree.size() + 1);
  for (int d = 1; d <= tree.size(); ++d) out[tree.head(d)].push_back(d);
  return out;
}

}  // namespace discodep

#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// calls into the decoder or structure code it is used to check.

#include <algorithm>
#include <limits>
#include <vector>

namespace discodep::testing {

// Every head assignment over nodes 1..n that forms a tree rooted at 0.
inline std::vector<std::vector<int>> all_trees(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> heads(n, 0);
  auto reaches_root = [&](int v) {
    for (int steps = 0; steps <= n; ++steps) {
      if (v == 0) return true;
      v = heads[v - 1];
    }
    return false;
  };
  while (true) {
    bool ok = true;
    for (int d = 1; d <= n && ok; ++d) ok = heads[d - 1] != d && reaches_root(d);
    if (ok) out.push_back(heads);
    int i = 0;
    while (i < n && ++heads[i] > n) heads[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Projectivity as "no two arcs cross" with ROOT drawn at the far left.
inline bool no_crossing_arcs(const std::vector<int>& heads) {
  const int n = static_cast<int>(heads.size());
  for (int a = 1; a <= n; ++a) {
    const int l1 = std::min(a, heads[a - 1]), r1 = std::max(a, heads[a - 1]);
    for (int b = 1; b <= n; ++b) {
      const int l2 = std::min(b, heads[b - 1]), r2 = std::max(b, heads[b - 1]);
      if (l1 < l2 && l2 < r1 && r1 < r2) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<int>> projective_trees(int n) {
  std::vector<std::vector<int>> out;
  for (auto& t : all_trees(n)) {
    if (no_crossing_arcs(t)) out.push_back(std::move(t));
  }
  return out;
}

inline int root_children(const std::vector<int>& heads) {
  return static_cast<int>(std::count(heads.begin(), heads.end(), 0));
}

// score(h, d) is any callable; sums over dependents 1..n in order.
template <class Score>
double brute_tree_score(const std::vector<int>& heads, const Score& score) {
  double s = 0.0;
  for (int d = 1; d <= static_cast<int>(heads.size()); ++d) s += score(heads[d - 1], d);
  return s;
}

template <class Score>
double brute_best(const std::vector<std::vector<int>>& trees, const Score& score,
                  bool single_root = false) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& t : trees) {
    if (single_root && root_children(t) != 1) continue;
    best = std::max(best, brute_tree_score(t, score));
  }
  return best;
}

// Subtree yield of v by explicit child lists (breadth-first).
inline std::vector<int> yield_of(const std::vector<int>& heads, int v) {
  std::vector<int> out{v};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (int d = 1; d <= static_cast<int>(heads.size()); ++d) {
      if (heads[d - 1] == out[i]) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace discodep::testing

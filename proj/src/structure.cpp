#include "discodep/structure.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "json.hpp"

namespace discodep {

namespace {

// dominates[a * (n+1) + b] == true iff a is an ancestor of b or a == b.
std::vector<char> dominance(const DepTree& tree) {
  const int n = tree.size();
  const int w = n + 1;
  std::vector<char> dom(static_cast<std::size_t>(w) * w, 0);
  for (int v = 0; v <= n; ++v) {
    int u = v;
    dom[u * w + v] = 1;
    while (u != 0) {
      u = tree.head(u);
      dom[u * w + v] = 1;
    }
  }
  return dom;
}

}  // namespace

bool is_projective(const DepTree& tree) {
  const int n = tree.size();
  const int w = n + 1;
  const auto dom = dominance(tree);
  for (int d = 1; d <= n; ++d) {
    const int h = tree.head(d);
    const int lo = std::min(h, d);
    const int hi = std::max(h, d);
    for (int k = lo + 1; k < hi; ++k) {
      if (!dom[h * w + k]) return false;
    }
  }
  return true;
}

int gap_degree(const DepTree& tree) {
  const int n = tree.size();
  const int w = n + 1;
  const auto dom = dominance(tree);
  int best = 0;
  for (int v = 0; v <= n; ++v) {
    // positions are scanned in order, so the yield comes out sorted
    int gaps = 0;
    int prev = -1;
    for (int k = 0; k <= n; ++k) {
      if (!dom[v * w + k]) continue;
      if (prev >= 0 && k != prev + 1) ++gaps;
      prev = k;
    }
    best = std::max(best, gaps);
  }
  return best;
}

int edge_degree(const DepTree& tree) {
  const int n = tree.size();
  const int w = n + 1;
  const auto dom = dominance(tree);
  int best = 0;
  for (int d = 1; d <= n; ++d) {
    const int h = tree.head(d);
    const int lo = std::min(h, d);
    const int hi = std::max(h, d);
    int components = 0;
    for (int k = lo + 1; k < hi; ++k) {
      // k roots a component of the span iff its head lies outside the span
      const int hk = tree.head(k);
      const bool root_of_component = hk <= lo || hk >= hi;
      if (root_of_component && !dom[h * w + k]) ++components;
    }
    best = std::max(best, components);
  }
  return best;
}

int max_path_length(const DepTree& tree) {
  const int n = tree.size();
  std::vector<int> depth(n + 1, -1);
  depth[0] = 0;
  int best = 0;
  for (int v = 1; v <= n; ++v) {
    // walk up to a node of known depth, then fill in on the way back
    std::vector<int> path;
    int u = v;
    while (depth[u] < 0) {
      path.push_back(u);
      u = tree.head(u);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it] = depth[tree.head(*it)] + 1;
    }
    best = std::max(best, depth[v]);
  }
  return best;
}

int leaf_count(const DepTree& tree) {
  const int n = tree.size();
  std::vector<char> has_child(n + 1, 0);
  for (int d = 1; d <= n; ++d) has_child[tree.head(d)] = 1;
  int leaves = 0;
  for (int v = 1; v <= n; ++v) leaves += has_child[v] ? 0 : 1;
  return leaves;
}

double leaf_proportion(const DepTree& tree, NodeCount convention) {
  const int nodes = convention == NodeCount::kWithRoot ? tree.size() + 1 : tree.size();
  if (nodes == 0) return 0.0;
  return static_cast<double>(leaf_count(tree)) / nodes;
}

void ComplexityReport::add(const DepTree& tree) {
  ++gap_degree_counts[gap_degree(tree)];
  ++edge_degree_counts[edge_degree(tree)];
  if (is_projective(tree)) ++projective;
  else ++nonprojective;
}

void ComplexityReport::merge(const ComplexityReport& other) {
  for (auto [k, c] : other.gap_degree_counts) gap_degree_counts[k] += c;
  for (auto [k, c] : other.edge_degree_counts) edge_degree_counts[k] += c;
  projective += other.projective;
  nonprojective += other.nonprojective;
}

ComplexityReport complexity_census(std::span<const Corpus> corpora) {
  ComplexityReport report;
  for (const Corpus& c : corpora) {
    for (const Document& doc : c.documents) {
      DepTree tree = doc.gold_tree();
      validate(tree);
      report.add(tree);
    }
  }
  return report;
}

std::string to_json(const ComplexityReport& report) {
  nlohmann::ordered_json j;
  j["documents"] = report.documents();
  nlohmann::ordered_json gap = nlohmann::ordered_json::object();
  for (auto [k, c] : report.gap_degree_counts) gap[std::to_string(k)] = c;
  nlohmann::ordered_json edge = nlohmann::ordered_json::object();
  for (auto [k, c] : report.edge_degree_counts) edge[std::to_string(k)] = c;
  j["gap_degree"] = gap;
  j["edge_degree"] = edge;
  j["projective"] = report.projective;
  j["non_projective"] = report.nonprojective;
  return j.dump(2);
}

void print_table(const ComplexityReport& report, std::ostream& out) {
  auto row = [&out](const std::string& name, int value) {
    out << std::left << std::setw(16) << name << value << '\n';
  };
  out << std::left << std::setw(16) << "Property" << "value\n";
  for (auto [k, c] : report.gap_degree_counts) row("gap degree " + std::to_string(k), c);
  for (auto [k, c] : report.edge_degree_counts) row("edge degree " + std::to_string(k), c);
  row("projective", report.projective);
  row("non-projective", report.nonprojective);
}

}  // namespace discodep

#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "discodep/corpus.hpp"
#include "discodep/dep_tree.hpp"

namespace discodep {

// Every arc (h, d) covers only descendants of h.
bool is_projective(const DepTree& tree);

// Max over nodes (ROOT included) of the number of gaps in the node's yield.
int gap_degree(const DepTree& tree);

// Max over arcs (h, d) of the number of components strictly inside the arc's
// span whose root is not dominated by h.
int edge_degree(const DepTree& tree);

// Edges on the longest downward path from ROOT.
int max_path_length(const DepTree& tree);

// Whether ROOT counts towards the denominator of the leaf proportion.
enum class NodeCount { kWithRoot, kWithoutRoot };

// Calibrated convention. ROOT is a node of the tree graph: it is the one node
// with in-degree zero, which the leaf definition explicitly rules out.
inline constexpr NodeCount kDefaultNodeCount = NodeCount::kWithRoot;

int leaf_count(const DepTree& tree);
double leaf_proportion(const DepTree& tree, NodeCount convention = kDefaultNodeCount);

struct ComplexityReport {
  std::map<int, int> gap_degree_counts;
  std::map<int, int> edge_degree_counts;
  int projective = 0;
  int nonprojective = 0;

  int documents() const { return projective + nonprojective; }
  void add(const DepTree& tree);
  void merge(const ComplexityReport& other);

  friend bool operator==(const ComplexityReport&, const ComplexityReport&) = default;
};

ComplexityReport complexity_census(std::span<const Corpus> corpora);

std::string to_json(const ComplexityReport& report);
// Property / value rows: gap degree k, edge degree k, projective, non-projective.
void print_table(const ComplexityReport& report, std::ostream& out);

}  // namespace discodep

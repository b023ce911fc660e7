#pragma once

#include <string_view>

#include "discodep/dep_tree.hpp"
#include "discodep/score_set.hpp"

namespace discodep {

enum class Algorithm { kEisner, kChuLiuEdmonds };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algo);

struct DecodeOptions {
  // Restrict ROOT to exactly one dependent.
  bool single_root = false;
};

// Highest-scoring projective tree, O(n^3) time and O(n^2) space. Ties go to
// the leftmost split point. Throws ValidationError when n == 0.
DepTree eisner_decode(const ScoreSet& scores, const DecodeOptions& options = {});

// Maximum spanning arborescence rooted at 0 (Chu-Liu-Edmonds with recursive
// cycle contraction). Greedy head choice prefers the smaller head index on
// ties. Throws ValidationError when n == 0.
DepTree cle_decode(const ScoreSet& scores, const DecodeOptions& options = {});

DepTree decode(const ScoreSet& scores, Algorithm algo, const DecodeOptions& options = {});

// Labels each arc with argmax_r label(head(d), d, r); ties go to the smaller
// label index. Throws ValidationError without label scores.
DepTree assign_labels(DepTree tree, const ScoreSet& scores);

}  // namespace discodep

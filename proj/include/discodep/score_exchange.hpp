#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "discodep/score_set.hpp"

namespace discodep {

inline constexpr std::string_view kScoreFormatVersion = "disco-scores/1";

struct ScoredDocument {
  std::string doc_id;
  ScoreSet scores;

  friend bool operator==(const ScoredDocument&, const ScoredDocument&) = default;
};

// Newline-delimited JSON. Line 1 is {"format_version":"disco-scores/1"};
// every further line is one record with fields, in order: doc_id, n,
// arc_scores (row-major, row = head), label_inventory, label_scores
// (row-major over head, dependent, label; null when absent). Non-finite
// values are written as the strings "-inf", "inf" and "nan".
void write_scores(std::span<const ScoredDocument> docs, std::ostream& out);
void write_scores(std::span<const ScoredDocument> docs, const std::filesystem::path& path);

// Throws ParseError carrying the 1-based line number for framing problems
// and version mismatches, ValidationError naming the doc_id for dimension
// mismatches, duplicate ids, or non-finite legal arcs.
std::vector<ScoredDocument> read_scores(std::istream& in);
std::vector<ScoredDocument> read_scores(const std::filesystem::path& path);

// Serializes one record (no trailing newline).
std::string score_record_line(const ScoredDocument& doc);

}  // namespace discodep

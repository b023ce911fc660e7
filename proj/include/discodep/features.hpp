#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "discodep/corpus.hpp"
#include "discodep/vocab.hpp"

namespace discodep {

// Bumped whenever a template below changes; models record it.
inline constexpr std::string_view kFeatureTemplateVersion = "discodep-arc-features/1";

// Per-EDU facts the templates read, computed once per document.
struct EduView {
  std::string first;        // lowercased first word
  std::string last;         // lowercased last word
  std::string first_two;    // lowercased first two words, joined by '_'
  std::string length;       // word-count bucket
  int sentence = 0;         // index of the sentence the EDU starts in
  bool ends_sentence = false;
};

class DocumentContext {
 public:
  explicit DocumentContext(const Document& doc);

  int size() const { return static_cast<int>(edus_.size()) - 1; }
  const EduView& edu(int i) const { return edus_[i]; }

 private:
  std::vector<EduView> edus_;
};

// Signed distance bucket for d - h: +1, +2, +3, +4..6, +7+ (and negatives).
std::string distance_bucket(int head, int dep);
std::string length_bucket(int words);

// Raw template instantiations for arc h -> d. Throws ValidationError when
// the arc is out of range or a self loop.
std::vector<std::string> arc_feature_strings(const DocumentContext& ctx, int head, int dep);
// Smaller template set, conjoined with each relation label by the model.
std::vector<std::string> label_feature_strings(const DocumentContext& ctx, int head, int dep);

// Sparse feature counts, sorted by id, ids unique.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Maps template strings through `interner`. With `grow` unseen strings are
// added; otherwise they are dropped.
FeatureVector to_feature_vector(const std::vector<std::string>& features, SymbolTable& interner,
                                bool grow);
FeatureVector to_feature_vector(const std::vector<std::string>& features,
                                const SymbolTable& interner);

FeatureVector extract_arc_features(const Document& doc, int head, int dep,
                                   SymbolTable& interner, bool grow = true);

}  // namespace discodep

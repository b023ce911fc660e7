#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "discodep/corpus.hpp"

namespace discodep {

// Dense string <-> id table. Ids are assigned in insertion order.
class SymbolTable {
 public:
  int add(std::string_view symbol);
  // -1 when absent.
  int find(std::string_view symbol) const;
  const std::string& symbol(int id) const { return symbols_.at(id); }
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> ids_;
};

// Word and character tables reserve ids 0..2 for PAD, UNK and ROOT. Their
// symbols are bracketed so that no corpus token can collide with them.
struct Vocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kRoot = 2;
  static constexpr int kReserved = 3;

  SymbolTable words;
  SymbolTable chars;
  SymbolTable relations;

  Vocab();

  int word_id(std::string_view word) const;
  int char_id(std::string_view ch) const;
  int relation_id(std::string_view relation) const { return relations.find(relation); }

  // Word ids for one EDU; the ROOT EDU maps to the single reserved ROOT id.
  std::vector<int> encode_edu(const Edu& edu) const;
};

// Builds the vocabularies from training EDUs. The ROOT EDU is never
// tokenized; its relation is not part of the relation inventory.
Vocab build_vocab(const Corpus& corpus);

// JSON: {"reserved": {...}, "words": [...], "chars": [...], "relations": [...]}
// with each array listing symbols in id order.
void write_vocab(const Vocab& vocab, std::ostream& out);
Vocab read_vocab(std::istream& in);

}  // namespace discodep

#include "discodep/vocab.hpp"

#include <istream>
#include <ostream>

#include "discodep/errors.hpp"
#include "discodep/tokenizer.hpp"
#include "json.hpp"

namespace discodep {

int SymbolTable::add(std::string_view symbol) {
  auto [it, inserted] = ids_.try_emplace(std::string(symbol), size());
  if (inserted) symbols_.emplace_back(symbol);
  return it->second;
}

int SymbolTable::find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  return it == ids_.end() ? -1 : it->second;
}

namespace {
constexpr const char* kPadSymbol = "<PAD>";
constexpr const char* kUnkSymbol = "<UNK>";
constexpr const char* kRootReserved = "<ROOT>";

void add_reserved(SymbolTable& t) {
  t.add(kPadSymbol);
  t.add(kUnkSymbol);
  t.add(kRootReserved);
}
}  // namespace

Vocab::Vocab() {
  add_reserved(words);
  add_reserved(chars);
}

int Vocab::word_id(std::string_view word) const {
  const int id = words.find(word);
  return id < kReserved ? kUnk : id;
}

int Vocab::char_id(std::string_view ch) const {
  const int id = chars.find(ch);
  return id < kReserved ? kUnk : id;
}

std::vector<int> Vocab::encode_edu(const Edu& edu) const {
  if (edu.index == 0) return {kRoot};
  std::vector<int> ids;
  for (const auto& w : tokenize_words(edu.text)) ids.push_back(word_id(w));
  return ids;
}

Vocab build_vocab(const Corpus& corpus) {
  Vocab vocab;
  for (const Document& doc : corpus.documents) {
    for (const Edu& edu : doc.edus) {
      if (edu.index == 0) continue;
      for (const auto& w : tokenize_words(edu.text)) {
        vocab.words.add(w);
        for (const auto& c : split_characters(w)) vocab.chars.add(c);
      }
      vocab.relations.add(edu.gold_relation);
    }
  }
  return vocab;
}

void write_vocab(const Vocab& vocab, std::ostream& out) {
  nlohmann::ordered_json j;
  j["reserved"] = {{"pad", Vocab::kPad}, {"unk", Vocab::kUnk}, {"root", Vocab::kRoot}};
  j["words"] = vocab.words.symbols();
  j["chars"] = vocab.chars.symbols();
  j["relations"] = vocab.relations.symbols();
  out << j.dump(1) << '\n';
}

Vocab read_vocab(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("vocab: ") + e.what(), e.byte);
  }
  Vocab v;
  v.words = {};
  v.chars = {};
  try {
    for (const auto& s : j.at("words")) v.words.add(s.get<std::string>());
    for (const auto& s : j.at("chars")) v.chars.add(s.get<std::string>());
    for (const auto& s : j.at("relations")) v.relations.add(s.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("vocab: ") + e.what());
  }
  if (v.words.size() < Vocab::kReserved || v.words.symbol(Vocab::kRoot) != kRootReserved ||
      v.chars.size() < Vocab::kReserved || v.chars.symbol(Vocab::kRoot) != kRootReserved) {
    throw ValidationError("vocab: reserved ids missing or out of place");
  }
  return v;
}

}  // namespace discodep

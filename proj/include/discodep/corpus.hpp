#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "discodep/dep_tree.hpp"

namespace discodep {

inline constexpr std::string_view kRootSymbol = "ROOT";
inline constexpr std::string_view kDefaultWrapperKey = "root";

struct Edu {
  int index = 0;
  std::string text;
  int gold_head = -1;
  std::string gold_relation;

  friend bool operator==(const Edu&, const Edu&) = default;
};

struct Document {
  std::string doc_id;
  std::vector<Edu> edus;  // edus[0] is ROOT

  // Number of non-root EDUs.
  int size() const { return static_cast<int>(edus.size()) - 1; }

  // Gold heads and relations as a tree over 0..size().
  DepTree gold_tree() const;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class Split { kTrain, kDev, kTest };

std::string_view to_string(Split split);
Split parse_split(std::string_view name);

struct Corpus {
  Split split = Split::kTrain;
  std::vector<Document> documents;

  std::size_t size() const { return documents.size(); }
};

struct LoadOptions {
  std::string wrapper_key = std::string(kDefaultWrapperKey);
};

// Parses one SciDTB-style JSON document. Throws ParseError (with byte offset)
// on malformed JSON and ValidationError (naming the EDU index) when the heads
// do not form a tree rooted at the ROOT EDU.
Document load_document(std::string_view bytes, std::string doc_id = {},
                       const LoadOptions& options = {});

Document load_document_file(const std::filesystem::path& path,
                            const LoadOptions& options = {});

// Loads every *.dep / *.json file in `dir`, ordered by filename. An empty
// directory is an error.
std::vector<Document> load_directory(const std::filesystem::path& dir,
                                     const LoadOptions& options = {});

// `root` is the dataset directory holding train/, dev/gold/ and test/gold/.
std::filesystem::path split_directory(const std::filesystem::path& root, Split split);
Corpus load_split(const std::filesystem::path& root, Split split,
                  const LoadOptions& options = {});

// Canonical SciDTB-shaped JSON: {"<wrapper>": [{"text","parent","relation"}...]}.
std::string serialize_document(const Document& doc, const LoadOptions& options = {});

// One line per document: {"doc_id": ..., "<wrapper>": [...]}.
void write_corpus_jsonl(const Corpus& corpus, std::ostream& out,
                        const LoadOptions& options = {});
std::vector<Document> read_corpus_jsonl(std::istream& in, const LoadOptions& options = {});

// doc_id, edu_index, text, gold_head, gold_relation. Tabs and newlines in the
// text are escaped as \t and \n, backslashes as \\.
void write_tsv_dump(const Corpus& corpus, std::ostream& out);

}  // namespace discodep

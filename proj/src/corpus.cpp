#include "discodep/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "discodep/errors.hpp"
#include "json.hpp"

namespace discodep {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

DepTree Document::gold_tree() const {
  DepTree tree;
  tree.heads.reserve(size());
  tree.labels.reserve(size());
  for (std::size_t i = 1; i < edus.size(); ++i) {
    tree.heads.push_back(edus[i].gold_head);
    tree.labels.push_back(edus[i].gold_relation);
  }
  return tree;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw UsageError("unknown split '" + std::string(name) + "' (expected train, dev or test)");
}

namespace {

std::string edu_context(const std::string& doc_id, std::size_t index) {
  std::string where = doc_id.empty() ? std::string("document") : doc_id;
  return where + ": EDU " + std::to_string(index);
}

Document document_from_records(const json& records, std::string doc_id) {
  if (!records.is_array()) {
    throw ValidationError((doc_id.empty() ? "document" : doc_id) +
                          ": EDU wrapper is not an array");
  }
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.edus.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const json& rec = records[i];
    if (!rec.is_object()) {
      throw ValidationError(edu_context(doc.doc_id, i) + ": record is not an object");
    }
    auto text = rec.find("text");
    auto parent = rec.find("parent");
    auto relation = rec.find("relation");
    if (text == rec.end() || !text->is_string()) {
      throw ValidationError(edu_context(doc.doc_id, i) + ": missing string field \"text\"");
    }
    if (parent == rec.end() || !parent->is_number_integer()) {
      throw ValidationError(edu_context(doc.doc_id, i) +
                            ": missing integer field \"parent\"");
    }
    Edu edu;
    edu.index = static_cast<int>(i);
    edu.text = text->get<std::string>();
    edu.gold_head = parent->get<int>();
    if (relation != rec.end() && !relation->is_null()) {
      if (!relation->is_string()) {
        throw ValidationError(edu_context(doc.doc_id, i) + ": \"relation\" is not a string");
      }
      edu.gold_relation = relation->get<std::string>();
    }
    doc.edus.push_back(std::move(edu));
  }

  if (doc.edus.empty()) {
    throw ValidationError((doc.doc_id.empty() ? "document" : doc.doc_id) + ": no EDUs");
  }
  const int n = doc.size();
  if (doc.edus[0].gold_head != -1 || doc.edus[0].text != kRootSymbol) {
    throw ValidationError(edu_context(doc.doc_id, 0) +
                          ": first EDU must be \"ROOT\" with parent -1");
  }
  for (int i = 1; i <= n; ++i) {
    const int h = doc.edus[i].gold_head;
    if (h == -1) {
      throw ValidationError(edu_context(doc.doc_id, i) + ": second root (parent -1)");
    }
    if (h == i) throw ValidationError(edu_context(doc.doc_id, i) + ": self-loop");
    if (h < 0 || h > n) {
      throw ValidationError(edu_context(doc.doc_id, i) + ": parent " + std::to_string(h) +
                            " out of range 0.." + std::to_string(n));
    }
  }
  // cycle check, reported at the smallest EDU that cannot reach ROOT
  std::vector<int> heads;
  for (int i = 1; i <= n; ++i) heads.push_back(doc.edus[i].gold_head);
  for (int i = 1; i <= n; ++i) {
    int v = i;
    for (int steps = 0; v != 0 && steps <= n; ++steps) v = heads[v - 1];
    if (v != 0) throw ValidationError(edu_context(doc.doc_id, i) + ": on or behind a cycle");
  }
  return doc;
}

std::string_view strip_bom(std::string_view bytes) {
  if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xEF &&
      static_cast<unsigned char>(bytes[1]) == 0xBB &&
      static_cast<unsigned char>(bytes[2]) == 0xBF) {
    bytes.remove_prefix(3);
  }
  return bytes;
}

ordered_json records_json(const Document& doc) {
  ordered_json arr = ordered_json::array();
  for (const Edu& edu : doc.edus) {
    ordered_json rec;
    rec["text"] = edu.text;
    rec["parent"] = edu.gold_head;
    rec["relation"] = edu.gold_relation;
    arr.push_back(std::move(rec));
  }
  return arr;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

bool is_document_file(const fs::directory_entry& entry) {
  if (!entry.is_regular_file()) return false;
  const std::string name = entry.path().filename().string();
  if (name.empty() || name.front() == '.') return false;
  const std::string ext = entry.path().extension().string();
  return ext == ".dep" || ext == ".json";
}

std::string doc_id_for(const fs::path& path) {
  // SciDTB names look like "P16-1001.edu.txt.dep"; the id keeps everything
  // up to the first dot-suffix that is not part of the document id.
  std::string name = path.filename().string();
  for (const char* suffix : {".edu.txt.dep", ".dep", ".json"}) {
    const std::string s(suffix);
    if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0) {
      return name.substr(0, name.size() - s.size());
    }
  }
  return path.stem().string();
}

}  // namespace

Document load_document(std::string_view bytes, std::string doc_id, const LoadOptions& options) {
  bytes = strip_bom(bytes);
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError((doc_id.empty() ? std::string("document") : doc_id) +
                         ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
  if (!root.is_object()) {
    throw ValidationError((doc_id.empty() ? std::string("document") : doc_id) +
                          ": top-level JSON value is not an object");
  }
  auto it = root.find(options.wrapper_key);
  if (it == root.end()) {
    throw ValidationError((doc_id.empty() ? std::string("document") : doc_id) +
                          ": missing \"" + options.wrapper_key + "\" array");
  }
  return document_from_records(*it, std::move(doc_id));
}

Document load_document_file(const fs::path& path, const LoadOptions& options) {
  return load_document(read_file(path), doc_id_for(path), options);
}

std::vector<Document> load_directory(const fs::path& dir, const LoadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (is_document_file(entry)) files.push_back(entry.path());
  }
  if (files.empty()) throw IoError("no .dep or .json documents in " + dir.string());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    try {
      docs.push_back(load_document_file(file, options));
    } catch (const ParseError& e) {
      throw ParseError(file.string() + ": " + e.what(), e.offset());
    } catch (const ValidationError& e) {
      throw ValidationError(file.string() + ": " + e.what());
    }
  }
  return docs;
}

fs::path split_directory(const fs::path& root, Split split) {
  switch (split) {
    case Split::kTrain: return root / "train";
    case Split::kDev: return root / "dev" / "gold";
    case Split::kTest: return root / "test" / "gold";
  }
  return root;
}

Corpus load_split(const fs::path& root, Split split, const LoadOptions& options) {
  Corpus corpus;
  corpus.split = split;
  corpus.documents = load_directory(split_directory(root, split), options);
  return corpus;
}

std::string serialize_document(const Document& doc, const LoadOptions& options) {
  ordered_json out;
  out[options.wrapper_key] = records_json(doc);
  return out.dump();
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out, const LoadOptions& options) {
  for (const Document& doc : corpus.documents) {
    ordered_json line;
    line["doc_id"] = doc.doc_id;
    line[options.wrapper_key] = records_json(doc);
    out << line.dump() << '\n';
  }
}

std::vector<Document> read_corpus_jsonl(std::istream& in, const LoadOptions& options) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
    auto id = obj.find("doc_id");
    auto recs = obj.find(options.wrapper_key);
    if (id == obj.end() || !id->is_string() || recs == obj.end()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected doc_id and \"" +
                           options.wrapper_key + "\"",
                       lineno);
    }
    docs.push_back(document_from_records(*recs, id->get<std::string>()));
  }
  return docs;
}

namespace {
std::string escape_tsv(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}
}  // namespace

void write_tsv_dump(const Corpus& corpus, std::ostream& out) {
  out << "doc_id\tedu_index\ttext\tgold_head\tgold_relation\n";
  for (const Document& doc : corpus.documents) {
    for (const Edu& edu : doc.edus) {
      out << doc.doc_id << '\t' << edu.index << '\t' << escape_tsv(edu.text) << '\t'
          << edu.gold_head << '\t' << escape_tsv(edu.gold_relation) << '\n';
    }
  }
}

}  // namespace discodep

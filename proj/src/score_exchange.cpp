#include "discodep/score_exchange.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "discodep/errors.hpp"
#include "json.hpp"

namespace discodep {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json encode_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

ordered_json encode_array(const std::vector<double>& values) {
  ordered_json arr = ordered_json::array();
  arr.get_ref<ordered_json::array_t&>().reserve(values.size());
  for (double v : values) arr.push_back(encode_value(v));
  return arr;
}

double decode_value(const json& v, std::size_t lineno) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError("line " + std::to_string(lineno) + ": score entry is not a number", lineno);
}

std::vector<double> decode_array(const json& arr, std::size_t lineno) {
  if (!arr.is_array()) {
    throw ParseError("line " + std::to_string(lineno) + ": expected an array of scores", lineno);
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(decode_value(v, lineno));
  return out;
}

json parse_line(const std::string& line, std::size_t lineno) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(lineno) + ": malformed JSON: " + e.what(), lineno);
  }
}

ScoredDocument decode_record(const json& rec, std::size_t lineno) {
  const std::string where = "line " + std::to_string(lineno);
  if (!rec.is_object()) throw ParseError(where + ": record is not an object", lineno);
  auto id = rec.find("doc_id");
  auto n = rec.find("n");
  auto arcs = rec.find("arc_scores");
  if (id == rec.end() || !id->is_string() || n == rec.end() || !n->is_number_integer() ||
      arcs == rec.end()) {
    throw ParseError(where + ": record needs doc_id, n and arc_scores", lineno);
  }
  ScoredDocument out;
  out.doc_id = id->get<std::string>();
  const long long count = n->get<long long>();
  if (count < 0 || count > 100000) {
    throw ValidationError(out.doc_id + ": invalid EDU count " + std::to_string(count));
  }
  ScoreSet set(static_cast<int>(count));
  std::vector<double> arc_values = decode_array(*arcs, lineno);
  if (arc_values.size() != set.arc_data().size()) {
    throw ValidationError(out.doc_id + ": arc_scores has " + std::to_string(arc_values.size()) +
                          " entries, n=" + std::to_string(count) + " requires " +
                          std::to_string(set.arc_data().size()));
  }
  set.arc_data() = std::move(arc_values);

  std::vector<std::string> inventory;
  if (auto inv = rec.find("label_inventory"); inv != rec.end() && !inv->is_null()) {
    if (!inv->is_array()) throw ParseError(where + ": label_inventory is not an array", lineno);
    for (const auto& s : *inv) {
      if (!s.is_string()) throw ParseError(where + ": label_inventory entry is not a string", lineno);
      inventory.push_back(s.get<std::string>());
    }
  }
  auto labels = rec.find("label_scores");
  if (labels != rec.end() && !labels->is_null()) {
    std::vector<double> label_values = decode_array(*labels, lineno);
    const std::size_t expected = set.arc_data().size() * inventory.size();
    if (label_values.size() != expected) {
      throw ValidationError(out.doc_id + ": label_scores has " +
                            std::to_string(label_values.size()) + " entries, expected " +
                            std::to_string(expected));
    }
    set.set_label_inventory(std::move(inventory));
    set.label_data() = std::move(label_values);
  } else {
    set.set_inventory_only(std::move(inventory));
  }
  try {
    set.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(out.doc_id + ": " + e.what());
  }
  out.scores = std::move(set);
  return out;
}

}  // namespace

std::string score_record_line(const ScoredDocument& doc) {
  ordered_json rec;
  rec["doc_id"] = doc.doc_id;
  rec["n"] = doc.scores.n();
  rec["arc_scores"] = encode_array(doc.scores.arc_data());
  rec["label_inventory"] = doc.scores.label_inventory();
  rec["label_scores"] =
      doc.scores.has_labels() ? encode_array(doc.scores.label_data()) : ordered_json(nullptr);
  return rec.dump();
}

void write_scores(std::span<const ScoredDocument> docs, std::ostream& out) {
  ordered_json header;
  header["format_version"] = kScoreFormatVersion;
  out << header.dump() << '\n';
  for (const auto& doc : docs) out << score_record_line(doc) << '\n';
  if (!out) throw IoError("failed writing score file");
}

void write_scores(std::span<const ScoredDocument> docs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_scores(docs, out);
}

std::vector<ScoredDocument> read_scores(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("line 1: missing format header", 1);
  const json header = parse_line(line, lineno);
  auto version = header.is_object() ? header.find("format_version") : header.end();
  if (!header.is_object() || version == header.end() || !version->is_string()) {
    throw ParseError("line 1: missing format_version", 1);
  }
  if (version->get<std::string>() != kScoreFormatVersion) {
    throw ParseError("line 1: unsupported format_version '" + version->get<std::string>() +
                         "' (expected " + std::string(kScoreFormatVersion) + ")",
                     1);
  }

  std::vector<ScoredDocument> docs;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ScoredDocument doc = decode_record(parse_line(line, lineno), lineno);
    if (!seen.insert(doc.doc_id).second) {
      throw ValidationError(doc.doc_id + ": duplicate doc_id at line " + std::to_string(lineno));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<ScoredDocument> read_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_scores(in);
}

}  // namespace discodep

#include "discodep/predictions.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "discodep/errors.hpp"

namespace discodep {

namespace {
constexpr const char* kHeader = "doc_id\tedu_index\tpredicted_head\tpredicted_relation";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

int to_int(const std::string& s, std::size_t lineno) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(lineno) + ": '" + s + "' is not an integer", lineno);
  }
  return v;
}
}  // namespace

void write_predictions(const std::vector<Prediction>& preds, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& p : preds) {
    for (int d = 1; d <= p.tree.size(); ++d) {
      out << p.doc_id << '\t' << d << '\t' << p.tree.head(d) << '\t'
          << (p.tree.has_labels() ? p.tree.label(d) : std::string()) << '\n';
    }
  }
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> preds;
  std::vector<bool> any_label;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == kHeader) continue;
    auto cols = split_tabs(line);
    if (cols.size() == 3) cols.emplace_back();
    if (cols.size() != 4) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 4 tab-separated columns",
                       lineno);
    }
    const int index = to_int(cols[1], lineno);
    const int head = to_int(cols[2], lineno);
    if (preds.empty() || preds.back().doc_id != cols[0]) {
      if (index != 1) {
        throw ParseError("line " + std::to_string(lineno) + ": document " + cols[0] +
                             " must start at edu_index 1",
                         lineno);
      }
      for (const auto& p : preds) {
        if (p.doc_id == cols[0]) {
          throw ParseError("line " + std::to_string(lineno) + ": rows for " + cols[0] +
                               " are not contiguous",
                           lineno);
        }
      }
      preds.push_back({cols[0], {}});
      any_label.push_back(false);
    }
    auto& tree = preds.back().tree;
    if (index != tree.size() + 1) {
      throw ParseError("line " + std::to_string(lineno) + ": expected edu_index " +
                           std::to_string(tree.size() + 1),
                       lineno);
    }
    tree.heads.push_back(head);
    tree.labels.push_back(cols[3]);
    if (!cols[3].empty()) any_label.back() = true;
  }
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!any_label[i]) preds[i].tree.labels.clear();
  }
  return preds;
}

}  // namespace discodep

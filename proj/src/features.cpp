#include "discodep/features.hpp"

#include <algorithm>
#include <cctype>

#include "discodep/errors.hpp"
#include "discodep/tokenizer.hpp"

namespace discodep {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// SciDTB marks sentence ends inside EDU text with this token.
constexpr std::string_view kSentenceMark = "<S>";

}  // namespace

std::string length_bucket(int words) {
  if (words <= 3) return "1-3";
  if (words <= 6) return "4-6";
  if (words <= 10) return "7-10";
  if (words <= 15) return "11-15";
  return "16+";
}

std::string distance_bucket(int head, int dep) {
  const int dist = dep - head;
  const int mag = dist < 0 ? -dist : dist;
  std::string bucket;
  if (mag <= 3) bucket = std::to_string(mag);
  else if (mag <= 6) bucket = "4..6";
  else bucket = "7+";
  return (dist < 0 ? "-" : "+") + bucket;
}

DocumentContext::DocumentContext(const Document& doc) {
  edus_.reserve(doc.edus.size());
  EduView root;
  root.first = root.last = root.first_two = "<root>";
  root.length = "root";
  edus_.push_back(root);
  int sentence = 0;
  for (std::size_t i = 1; i < doc.edus.size(); ++i) {
    const std::string& text = doc.edus[i].text;
    std::vector<std::string> words;
    for (auto& w : tokenize_words(text)) words.push_back(lower(std::move(w)));
    // the marker tokenizes to "<", "s", ">"; drop it from the word features
    const bool marked = text.find(kSentenceMark) != std::string::npos;
    if (marked && words.size() >= 3 && words[words.size() - 3] == "<" &&
        words[words.size() - 2] == "s" && words.back() == ">") {
      words.resize(words.size() - 3);
    }
    EduView v;
    v.first = words.empty() ? "<none>" : words.front();
    v.last = words.empty() ? "<none>" : words.back();
    v.first_two = v.first + "_" + (words.size() > 1 ? words[1] : std::string("<none>"));
    v.length = length_bucket(static_cast<int>(words.size()));
    v.sentence = sentence;
    v.ends_sentence = marked;
    if (marked) ++sentence;
    edus_.push_back(std::move(v));
  }
}

namespace {
void check_arc(const DocumentContext& ctx, int head, int dep) {
  const int n = ctx.size();
  if (head < 0 || head > n || dep < 1 || dep > n || head == dep) {
    throw ValidationError("arc " + std::to_string(head) + " -> " + std::to_string(dep) +
                          " is not legal for a document of " + std::to_string(n) + " EDUs");
  }
}
}  // namespace

std::vector<std::string> arc_feature_strings(const DocumentContext& ctx, int head, int dep) {
  check_arc(ctx, head, dep);
  const EduView& h = ctx.edu(head);
  const EduView& d = ctx.edu(dep);
  const std::string dir = head < dep ? "R" : "L";
  const std::string dist = distance_bucket(head, dep);
  const std::string same = head == 0 ? "root" : (h.sentence == d.sentence ? "same" : "diff");

  std::vector<std::string> f;
  f.reserve(32);
  f.push_back("bias");
  f.push_back("dir=" + dir);
  f.push_back("dist=" + dist);
  f.push_back("hf=" + h.first);
  f.push_back("hl=" + h.last);
  f.push_back("hf2=" + h.first_two);
  f.push_back("df=" + d.first);
  f.push_back("dl=" + d.last);
  f.push_back("df2=" + d.first_two);
  f.push_back("hlen=" + h.length);
  f.push_back("dlen=" + d.length);
  f.push_back("hf&df=" + h.first + "|" + d.first);
  f.push_back("hf&df&dir=" + h.first + "|" + d.first + "|" + dir);
  f.push_back("hf&dist=" + h.first + "|" + dist);
  f.push_back("df&dist=" + d.first + "|" + dist);
  f.push_back("df2&dir=" + d.first_two + "|" + dir);
  f.push_back("hl&df=" + h.last + "|" + d.first);
  f.push_back("hlen&dlen&dist=" + h.length + "|" + d.length + "|" + dist);
  f.push_back("sent=" + same + "|" + dist);
  f.push_back("hend=" + std::to_string(h.ends_sentence) + "|" + dir);
  f.push_back("dend=" + std::to_string(d.ends_sentence) + "|" + dir);
  if (head == 0) {
    f.push_back("root");
    f.push_back("root&dpos=" + std::to_string(std::min(dep, 5)));
    f.push_back("root&df=" + d.first);
    f.push_back("root&df2=" + d.first_two);
    f.push_back("root&dsent=" + std::to_string(std::min(d.sentence, 3)));
  }
  return f;
}

std::vector<std::string> label_feature_strings(const DocumentContext& ctx, int head, int dep) {
  check_arc(ctx, head, dep);
  const EduView& h = ctx.edu(head);
  const EduView& d = ctx.edu(dep);
  const std::string dir = head < dep ? "R" : "L";
  const std::string dist = distance_bucket(head, dep);
  std::vector<std::string> f;
  f.reserve(12);
  f.push_back("bias");
  f.push_back("dir=" + dir);
  f.push_back("dist=" + dist);
  f.push_back("df=" + d.first);
  f.push_back("df2=" + d.first_two);
  f.push_back("dl=" + d.last);
  f.push_back("hf=" + h.first);
  f.push_back("hl=" + h.last);
  f.push_back("dlen=" + d.length);
  f.push_back("df&dir=" + d.first + "|" + dir);
  f.push_back("sent=" + std::string(head == 0 ? "root" : (h.sentence == d.sentence ? "same" : "diff")));
  if (head == 0) f.push_back("root");
  return f;
}

namespace {
FeatureVector collect(std::vector<std::uint32_t>& ids) {
  std::sort(ids.begin(), ids.end());
  FeatureVector fv;
  for (std::uint32_t id : ids) {
    if (!fv.entries.empty() && fv.entries.back().first == id) ++fv.entries.back().second;
    else fv.entries.emplace_back(id, 1u);
  }
  return fv;
}
}  // namespace

FeatureVector to_feature_vector(const std::vector<std::string>& features, SymbolTable& interner,
                                bool grow) {
  std::vector<std::uint32_t> ids;
  ids.reserve(features.size());
  for (const auto& s : features) {
    const int id = grow ? interner.add(s) : interner.find(s);
    if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
  }
  return collect(ids);
}

FeatureVector to_feature_vector(const std::vector<std::string>& features,
                                const SymbolTable& interner) {
  std::vector<std::uint32_t> ids;
  ids.reserve(features.size());
  for (const auto& s : features) {
    const int id = interner.find(s);
    if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
  }
  return collect(ids);
}

FeatureVector extract_arc_features(const Document& doc, int head, int dep,
                                   SymbolTable& interner, bool grow) {
  return to_feature_vector(arc_feature_strings(DocumentContext(doc), head, dep), interner, grow);
}

}  // namespace discodep

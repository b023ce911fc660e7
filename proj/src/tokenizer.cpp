#include "discodep/tokenizer.hpp"

#include <regex>
#include <sstream>
#include <utility>

namespace discodep {

namespace {

struct Rule {
  std::regex pattern;
  std::string replacement;
};

Rule rule(const char* pattern, const char* replacement, bool icase = false) {
  auto flags = std::regex::ECMAScript;
  if (icase) flags |= std::regex::icase;
  return {std::regex(pattern, flags), replacement};
}

struct RuleSet {
  std::vector<Rule> starting_quotes;
  std::vector<Rule> punctuation;
  std::vector<Rule> brackets;
  std::vector<Rule> ending_quotes;
  std::vector<Rule> contractions;

  RuleSet() {
    starting_quotes = {
        rule("(\xC2\xAB|\xE2\x80\x9C|\xE2\x80\x98|\xE2\x80\x9E|`+)", " $1 "),
        rule("^\"", "``"),
        rule("(``)", " $1 "),
        rule("([ (\\[{<])(\"|'')", "$1 `` "),
        rule("(')(?!re|ve|ll|m|t|s|d|n)(\\w)\\b", "$1 $2", true),
    };
    punctuation = {
        rule("([^.])(\\.)([\\])}>\"']*)\\s*$", "$1 $2 $3 "),
        rule("([:,])([^\\d])", " $1 $2"),
        rule("([:,])$", " $1 "),
        rule("\\.{2,}", " $& "),
        rule("[;@#$%&]", " $& "),
        rule("([^.])(\\.)([\\])}>\"']*)\\s*$", "$1 $2$3 "),
        rule("[?!]", " $& "),
        rule("([^'])' ", "$1 ' "),
        rule("[*]", " $& "),
    };
    brackets = {
        rule("[\\]\\[(){}<>]", " $& "),
        rule("--", " -- "),
    };
    ending_quotes = {
        rule("(\xC2\xBB|\xE2\x80\x9D|\xE2\x80\x99)", " $1 "),
        rule("''", " '' "),
        rule("\"", " '' "),
        rule("([^' ])('[sS]|'[mM]|'[dD]|') ", "$1 $2 "),
        rule("([^' ])('ll|'LL|'re|'RE|'ve|'VE|n't|N'T) ", "$1 $2 "),
    };
    contractions = {
        rule("\\b(can)(not)\\b", " $1 $2 ", true),
        rule("\\b(d)('ye)\\b", " $1 $2 ", true),
        rule("\\b(gim)(me)\\b", " $1 $2 ", true),
        rule("\\b(gon)(na)\\b", " $1 $2 ", true),
        rule("\\b(got)(ta)\\b", " $1 $2 ", true),
        rule("\\b(lem)(me)\\b", " $1 $2 ", true),
        rule("\\b(more)('n)\\b", " $1 $2 ", true),
        rule("\\b(wan)(na)(?=\\s)", " $1 $2 ", true),
        rule(" ('t)(is)\\b", " $1 $2 ", true),
        rule(" ('t)(was)\\b", " $1 $2 ", true),
    };
  }
};

const RuleSet& rules() {
  static const RuleSet r;
  return r;
}

void apply(const std::vector<Rule>& rs, std::string& text) {
  for (const Rule& r : rs) text = std::regex_replace(text, r.pattern, r.replacement);
}

}  // namespace

std::vector<std::string> tokenize_words(std::string_view text) {
  std::string s(text);
  const RuleSet& r = rules();
  apply(r.starting_quotes, s);
  apply(r.punctuation, s);
  apply(r.brackets, s);
  s = " " + s + " ";
  apply(r.ending_quotes, s);
  apply(r.contractions, s);

  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

std::vector<std::string> split_characters(std::string_view word) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < word.size()) {
    const auto lead = static_cast<unsigned char>(word[i]);
    std::size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    if (lead >= 0xF8 || (lead >= 0x80 && lead < 0xC0) || i + len > word.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(word[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(word.substr(i, len));
    i += len;
  }
  return out;
}

}  // namespace discodep

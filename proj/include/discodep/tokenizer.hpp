#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace discodep {

// Penn-Treebank style word tokenizer (the rule cascade used by the common
// English NLP toolkits: quotes, punctuation, brackets, double dashes,
// clitics). Case is preserved. Sentence splitting is not performed; EDUs are
// sub-sentential.
std::vector<std::string> tokenize_words(std::string_view text);

// Splits UTF-8 text into Unicode scalar values, each returned as its UTF-8
// encoding. Invalid bytes are returned one at a time.
std::vector<std::string> split_characters(std::string_view word);

}  // namespace discodep

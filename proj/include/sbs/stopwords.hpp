#pragma once

#include <string>
#include <unordered_set>

namespace sbs {

/// Built-in English stopword list (the common NLTK set, 179 entries).
[[nodiscard]] const std::unordered_set<std::string>& default_english_stopwords();

/// Load a stopword file: one token per line, '#'-prefixed comment lines and
/// blank lines ignored. Tokens are lowercased.
/// Throws std::runtime_error if the file cannot be opened.
[[nodiscard]] std::unordered_set<std::string> load_stopwords(const std::string& path);

}  // namespace sbs

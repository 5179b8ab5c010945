#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "sbs/metrics.hpp"
#include "sbs/text_pipeline.hpp"

namespace sbs {

/// Read a JSONL corpus: one object per line with string fields "id", "text"
/// and RFC 3339 "timestamp". Throws IngestionError naming file and line on
/// malformed JSON, missing fields, duplicate ids or unparseable timestamps.
[[nodiscard]] std::vector<Document> read_corpus_jsonl(const std::string& path);

/// Read a CSV corpus with a header row containing "id", "text" and
/// "timestamp" columns (any order, extra columns ignored). Same error
/// contract as read_corpus_jsonl.
[[nodiscard]] std::vector<Document> read_corpus_csv(const std::string& path);

/// "word<TAB>polarity" lines, polarity a decimal in [-1, 1]; '#' comments
/// and blank lines ignored.
[[nodiscard]] PolarityLexicon load_polarity_lexicon(const std::string& path);

/// "alias phrase<TAB>canonical" lines; '#' comments and blank lines ignored.
[[nodiscard]] std::map<std::string, std::string> load_aliases(const std::string& path);

/// "word<TAB>lemma" lines; '#' comments and blank lines ignored.
[[nodiscard]] std::unordered_map<std::string, std::string> load_lemmas(const std::string& path);

}  // namespace sbs

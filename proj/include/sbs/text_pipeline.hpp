#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace sbs {

/// One raw text item; the unit of ingestion.
struct Document {
    std::string id;
    std::string text;
    std::int64_t timestamp = 0;  ///< seconds since the Unix epoch, UTC
};

/// A document after preprocessing: an ordered list of normalized tokens.
struct TokenizedDocument {
    std::string id;
    std::int64_t timestamp = 0;
    std::vector<std::string> tokens;
};

enum class StemmerKind {
    None,        ///< keep tokens as-is (default)
    Porter2,     ///< English Snowball suffix stripper
    Dictionary,  ///< lookup in PipelineConfig::lemma_dictionary, identity fallback
};

/// Settings for the preprocessing pipeline. Stage order is fixed: html/entity
/// cleanup, lowercasing, tokenization (hashtag handling, punctuation stripping,
/// number removal), brand-alias replacement, stopword removal, stemming.
/// Alias replacement runs before stopword removal and stemming so multi-word
/// brand names and brands colliding with stopwords survive; canonical brand
/// tokens are never stemmed, never removed, and never fused into bigrams.
struct PipelineConfig {
    std::unordered_set<std::string> stopwords;
    bool lowercase = true;
    bool remove_punctuation = true;
    bool remove_numbers = true;
    bool remove_hashtags = true;
    bool remove_html = true;
    StemmerKind stemmer = StemmerKind::None;
    int bigram_min_count = 0;  ///< 0 disables bigram fusion

    /// Alias phrase (one or more tokens, space separated, in normalized form)
    /// to canonical brand token. Longest phrase wins on overlap.
    std::map<std::string, std::string> brand_aliases;

    std::unordered_map<std::string, std::string> lemma_dictionary;

    /// Canonical tokens protected from removal, stemming and bigram fusion:
    /// the alias targets plus any extra entries (e.g. brand words used verbatim).
    std::unordered_set<std::string> protected_tokens;

    /// All canonical tokens, whether listed in brand_aliases or protected_tokens.
    [[nodiscard]] std::unordered_set<std::string> canonical_tokens() const;
};

/// Run the preprocessing pipeline on one document. Pure; never throws on any
/// text content (an empty token list is a valid result).
[[nodiscard]] TokenizedDocument preprocess(const Document& doc, const PipelineConfig& cfg);

/// Fuse adjacent token pairs occurring at least min_count times corpus-wide
/// into single "a_b" tokens. Fusion is left-to-right greedy, non-overlapping;
/// tokens in `protected_tokens` never fuse. min_count == 0 disables fusion.
[[nodiscard]] std::vector<TokenizedDocument> detect_bigrams(
    std::vector<TokenizedDocument> corpus, int min_count,
    const std::unordered_set<std::string>& protected_tokens = {});

/// Tokenize a string using the config's tokenizer settings, with no alias,
/// stopword or stemming stages. Exposed for alias-phrase normalization.
[[nodiscard]] std::vector<std::string> tokenize_only(const std::string& text,
                                                     const PipelineConfig& cfg);

}  // namespace sbs

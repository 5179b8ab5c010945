#include "sbs/text_pipeline.hpp"

#include <algorithm>
#include <cctype>

#include "sbs/stemmer.hpp"

namespace sbs {

namespace {

bool is_ascii_alnum(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Decode the UTF-8 codepoint starting at i; advances i past it. Malformed
// bytes are consumed one at a time and returned as-is.
char32_t next_codepoint(const std::string& s, std::size_t& i) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    char32_t cp = b0;
    if (b0 >= 0xF0)
        len = 4, cp = b0 & 0x07;
    else if (b0 >= 0xE0)
        len = 3, cp = b0 & 0x0F;
    else if (b0 >= 0xC0)
        len = 2, cp = b0 & 0x1F;
    if (i + len > s.size()) len = 1, cp = b0;
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            len = 1;
            cp = b0;
            break;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return (cp >= 0x2000 && cp <= 0x200B) || (cp < 0x80 && std::isspace(static_cast<int>(cp)));
    }
}

// Punctuation stripped from token edges. Unicode quotes/dashes included so
// curly-quoted words do not survive as distinct tokens.
bool is_strippable(char32_t cp) {
    if (cp < 0x80) return !is_ascii_alnum(static_cast<unsigned char>(cp));
    switch (cp) {
        case 0x2018: case 0x2019: case 0x201A: case 0x201C: case 0x201D: case 0x201E:
        case 0x2013: case 0x2014: case 0x2026: case 0x00AB: case 0x00BB:
        case 0x00A1: case 0x00BF: case 0x00B7:
            return true;
        default:
            return false;
    }
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

std::string strip_html(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_tag = false;
    for (const char c : text) {
        if (c == '<') {
            in_tag = true;
            out += ' ';
        } else if (c == '>') {
            in_tag = false;
        } else if (!in_tag) {
            out += c;
        }
    }
    replace_all(out, "&amp;", "&");
    replace_all(out, "&lt;", "<");
    replace_all(out, "&gt;", ">");
    replace_all(out, "&quot;", "\"");
    replace_all(out, "&#39;", "'");
    replace_all(out, "&apos;", "'");
    replace_all(out, "&nbsp;", " ");
    return out;
}

// A codepoint sequence with byte offsets, for edge stripping.
struct DecodedToken {
    std::vector<char32_t> cps;
    std::vector<std::size_t> offsets;  // byte offset of each codepoint
    std::size_t end = 0;               // byte offset past the last codepoint
};

bool is_pure_number(const DecodedToken& t, std::size_t from, std::size_t to) {
    bool has_digit = false;
    for (std::size_t i = from; i < to; ++i) {
        const char32_t cp = t.cps[i];
        if (cp >= '0' && cp <= '9')
            has_digit = true;
        else if (cp != '.' && cp != ',' && cp != '-' && cp != '+' && cp != '%')
            return false;
    }
    return has_digit;
}

}  // namespace

std::vector<std::string> tokenize_only(const std::string& text, const PipelineConfig& cfg) {
    std::string cleaned = cfg.remove_html ? strip_html(text) : text;
    if (cfg.lowercase) {
        std::transform(cleaned.begin(), cleaned.end(), cleaned.begin(), [](unsigned char c) {
            return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
        });
    }

    std::vector<std::string> tokens;
    std::size_t i = 0;
    const std::size_t n = cleaned.size();
    while (i < n) {
        // Skip whitespace.
        std::size_t start = i;
        char32_t cp = next_codepoint(cleaned, i);
        if (is_unicode_space(cp)) continue;

        // Collect one whitespace-delimited raw token.
        DecodedToken tok;
        tok.cps.push_back(cp);
        tok.offsets.push_back(start);
        tok.end = i;
        while (i < n) {
            const std::size_t at = i;
            cp = next_codepoint(cleaned, i);
            if (is_unicode_space(cp)) break;
            tok.cps.push_back(cp);
            tok.offsets.push_back(at);
            tok.end = i;
        }

        if (cfg.remove_hashtags && tok.cps.front() == '#') continue;

        std::size_t from = 0, to = tok.cps.size();
        if (cfg.remove_punctuation) {
            while (from < to && is_strippable(tok.cps[from])) ++from;
            while (to > from && is_strippable(tok.cps[to - 1])) --to;
        }
        if (from >= to) continue;
        if (cfg.remove_numbers && is_pure_number(tok, from, to)) continue;

        const std::size_t byte_from = tok.offsets[from];
        const std::size_t byte_to = to < tok.cps.size() ? tok.offsets[to] : tok.end;
        tokens.emplace_back(cleaned.substr(byte_from, byte_to - byte_from));
    }
    return tokens;
}

std::unordered_set<std::string> PipelineConfig::canonical_tokens() const {
    std::unordered_set<std::string> out = protected_tokens;
    for (const auto& [phrase, canonical] : brand_aliases) out.insert(canonical);
    return out;
}

namespace {

// Alias phrases as token sequences, longest first so overlapping phrases
// resolve to the most specific alias.
struct AliasMatcher {
    std::vector<std::pair<std::vector<std::string>, std::string>> phrases;

    AliasMatcher(const PipelineConfig& cfg) {
        for (const auto& [phrase, canonical] : cfg.brand_aliases) {
            std::vector<std::string> parts;
            std::size_t pos = 0;
            while (pos < phrase.size()) {
                const std::size_t sp = phrase.find(' ', pos);
                const std::size_t end = sp == std::string::npos ? phrase.size() : sp;
                if (end > pos) parts.push_back(phrase.substr(pos, end - pos));
                pos = end + 1;
            }
            if (!parts.empty()) phrases.emplace_back(std::move(parts), canonical);
        }
        std::stable_sort(phrases.begin(), phrases.end(),
                         [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
    }

    // Longest alias phrase starting at position i, or 0 if none.
    std::size_t match(const std::vector<std::string>& tokens, std::size_t i,
                      const std::string** canonical) const {
        for (const auto& [parts, target] : phrases) {
            if (i + parts.size() > tokens.size()) continue;
            if (std::equal(parts.begin(), parts.end(), tokens.begin() + i)) {
                *canonical = &target;
                return parts.size();
            }
        }
        return 0;
    }
};

}  // namespace

TokenizedDocument preprocess(const Document& doc, const PipelineConfig& cfg) {
    TokenizedDocument out;
    out.id = doc.id;
    out.timestamp = doc.timestamp;

    std::vector<std::string> tokens = tokenize_only(doc.text, cfg);

    // Brand-alias replacement before any removal stage.
    std::vector<std::string> replaced;
    std::vector<bool> protected_flag;
    const std::unordered_set<std::string> canonical = cfg.canonical_tokens();
    if (!cfg.brand_aliases.empty()) {
        const AliasMatcher matcher(cfg);
        replaced.reserve(tokens.size());
        std::size_t i = 0;
        while (i < tokens.size()) {
            const std::string* target = nullptr;
            const std::size_t len = matcher.match(tokens, i, &target);
            if (len > 0) {
                replaced.push_back(*target);
                protected_flag.push_back(true);
                i += len;
            } else {
                protected_flag.push_back(canonical.count(tokens[i]) > 0);
                replaced.push_back(std::move(tokens[i]));
                ++i;
            }
        }
    } else {
        replaced = std::move(tokens);
        protected_flag.resize(replaced.size());
        for (std::size_t i = 0; i < replaced.size(); ++i)
            protected_flag[i] = canonical.count(replaced[i]) > 0;
    }

    out.tokens.reserve(replaced.size());
    for (std::size_t i = 0; i < replaced.size(); ++i) {
        std::string& tok = replaced[i];
        if (protected_flag[i]) {
            out.tokens.push_back(std::move(tok));
            continue;
        }
        if (cfg.stopwords.count(tok)) continue;
        switch (cfg.stemmer) {
            case StemmerKind::None:
                break;
            case StemmerKind::Porter2:
                tok = porter2_stem(tok);
                break;
            case StemmerKind::Dictionary: {
                const auto it = cfg.lemma_dictionary.find(tok);
                if (it != cfg.lemma_dictionary.end()) tok = it->second;
                break;
            }
        }
        if (!tok.empty()) out.tokens.push_back(std::move(tok));
    }
    return out;
}

std::vector<TokenizedDocument> detect_bigrams(std::vector<TokenizedDocument> corpus, int min_count,
                                              const std::unordered_set<std::string>& protected_tokens) {
    if (min_count <= 0) return corpus;

    // Pass 1: corpus-wide adjacent-pair counts.
    std::unordered_map<std::string, std::int64_t> pair_counts;
    for (const auto& doc : corpus) {
        for (std::size_t i = 0; i + 1 < doc.tokens.size(); ++i) {
            if (protected_tokens.count(doc.tokens[i]) || protected_tokens.count(doc.tokens[i + 1]))
                continue;
            pair_counts[doc.tokens[i] + '\x1f' + doc.tokens[i + 1]] += 1;
        }
    }

    // Pass 2: greedy left-to-right non-overlapping fusion.
    for (auto& doc : corpus) {
        std::vector<std::string> fused;
        fused.reserve(doc.tokens.size());
        std::size_t i = 0;
        while (i < doc.tokens.size()) {
            if (i + 1 < doc.tokens.size() && !protected_tokens.count(doc.tokens[i]) &&
                !protected_tokens.count(doc.tokens[i + 1])) {
                const auto it = pair_counts.find(doc.tokens[i] + '\x1f' + doc.tokens[i + 1]);
                if (it != pair_counts.end() && it->second >= min_count) {
                    fused.push_back(doc.tokens[i] + '_' + doc.tokens[i + 1]);
                    i += 2;
                    continue;
                }
            }
            fused.push_back(std::move(doc.tokens[i]));
            ++i;
        }
        doc.tokens = std::move(fused);
    }
    return corpus;
}

}  // namespace sbs

#include "sbs/stemmer.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace sbs {

namespace {

// 'Y' marks a consonant y; lowercase y counts as a vowel.
bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_double(std::string_view w) {
    if (w.size() < 2) return false;
    const char c = w[w.size() - 1];
    if (c != w[w.size() - 2]) return false;
    constexpr std::string_view doubles = "bdfgmnprt";
    return doubles.find(c) != std::string_view::npos;
}

bool valid_li_ending(char c) {
    constexpr std::string_view endings = "cdeghkmnrt";
    return endings.find(c) != std::string_view::npos;
}

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// Short syllable at the end of w: non-vowel + vowel + non-vowel(not w/x/Y),
// or word-initial vowel + non-vowel.
bool ends_short_syllable(std::string_view w) {
    const std::size_t n = w.size();
    if (n == 2) return is_vowel(w[0]) && !is_vowel(w[1]);
    if (n >= 3) {
        const char c = w[n - 1];
        return !is_vowel(c) && c != 'w' && c != 'x' && c != 'Y' && is_vowel(w[n - 2]) &&
               !is_vowel(w[n - 3]);
    }
    return false;
}

struct Porter2 {
    std::string w;
    std::size_t p1 = 0;  // R1 start
    std::size_t p2 = 0;  // R2 start

    bool in_r1(std::size_t suffix_len) const { return w.size() - suffix_len >= p1; }
    bool in_r2(std::size_t suffix_len) const { return w.size() - suffix_len >= p2; }

    void mark_regions() {
        const std::size_t n = w.size();
        p1 = p2 = n;
        std::size_t i = 0;
        bool prefixed = false;
        for (std::string_view prefix : {"gener", "commun", "arsen"}) {
            if (n >= prefix.size() && w.compare(0, prefix.size(), prefix) == 0) {
                i = prefix.size();
                p1 = i;
                prefixed = true;
                break;
            }
        }
        if (!prefixed) {
            while (i < n && !is_vowel(w[i])) ++i;
            while (i < n && is_vowel(w[i])) ++i;
            if (i >= n) return;  // no vowel followed by a non-vowel: R1 = R2 = null
            p1 = ++i;
        }
        while (i < n && !is_vowel(w[i])) ++i;
        while (i < n && is_vowel(w[i])) ++i;
        if (i >= n) return;
        p2 = i + 1;
    }

    bool word_is_short() const { return p1 >= w.size() && ends_short_syllable(w); }

    void step_0() {
        for (std::string_view s : {"'s'", "'s", "'"}) {
            if (ends_with(w, s)) {
                w.resize(w.size() - s.size());
                return;
            }
        }
    }

    void step_1a() {
        if (ends_with(w, "sses")) {
            w.resize(w.size() - 2);
        } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
            w.resize(w.size() - (w.size() > 4 ? 2 : 1));
        } else if (ends_with(w, "us") || ends_with(w, "ss")) {
            // unchanged
        } else if (ends_with(w, "s")) {
            for (std::size_t i = 0; i + 2 < w.size(); ++i) {
                if (is_vowel(w[i])) {
                    w.pop_back();
                    break;
                }
            }
        }
    }

    void step_1b() {
        if (ends_with(w, "eedly")) {
            if (in_r1(5)) w.replace(w.size() - 5, 5, "ee");
            return;
        }
        if (ends_with(w, "eed")) {
            if (in_r1(3)) w.replace(w.size() - 3, 3, "ee");
            return;
        }
        std::size_t len = 0;
        for (std::string_view s : {"ingly", "edly", "ing", "ed"}) {
            if (ends_with(w, s)) {
                len = s.size();
                break;
            }
        }
        if (len == 0) return;
        const std::string_view stem_part(w.data(), w.size() - len);
        if (std::none_of(stem_part.begin(), stem_part.end(), is_vowel)) return;
        w.resize(w.size() - len);
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w += 'e';
        } else if (is_double(w)) {
            w.pop_back();
        } else if (word_is_short()) {
            w += 'e';
        }
    }

    void step_1c() {
        const std::size_t n = w.size();
        if (n >= 3 && (w[n - 1] == 'y' || w[n - 1] == 'Y') && !is_vowel(w[n - 2]))
            w[n - 1] = 'i';
    }

    // suffix -> replacement; empty replacement means delete.
    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    // Longest listed suffix wins; if its region test fails nothing is applied.
    template <std::size_t N>
    const Rule* longest_match(const std::array<Rule, N>& rules) const {
        const Rule* best = nullptr;
        for (const auto& r : rules) {
            if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
                best = &r;
        }
        return best;
    }

    void apply(const Rule& r) { w.replace(w.size() - r.suffix.size(), r.suffix.size(), r.replacement); }

    void step_2() {
        static constexpr std::array<Rule, 24> rules = {{
            {"ational", "ate"}, {"ization", "ize"}, {"ousness", "ous"}, {"iveness", "ive"},
            {"fulness", "ful"}, {"tional", "tion"}, {"biliti", "ble"},  {"lessli", "less"},
            {"entli", "ent"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
            {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},   {"enci", "ence"},
            {"anci", "ance"},   {"abli", "able"},   {"izer", "ize"},    {"ator", "ate"},
            {"alli", "al"},     {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
        }};
        const Rule* r = longest_match(rules);
        if (!r || !in_r1(r->suffix.size())) return;
        if (r->suffix == "ogi") {
            if (w.size() >= 4 && w[w.size() - 4] == 'l') apply(*r);
        } else if (r->suffix == "li") {
            if (w.size() >= 3 && valid_li_ending(w[w.size() - 3])) apply(*r);
        } else {
            apply(*r);
        }
    }

    void step_3() {
        static constexpr std::array<Rule, 9> rules = {{
            {"ational", "ate"}, {"tional", "tion"}, {"alize", "al"}, {"icate", "ic"},
            {"iciti", "ic"},    {"ative", ""},      {"ical", "ic"},  {"ness", ""},
            {"ful", ""},
        }};
        const Rule* r = longest_match(rules);
        if (!r || !in_r1(r->suffix.size())) return;
        if (r->suffix == "ative") {
            if (in_r2(5)) apply(*r);
        } else {
            apply(*r);
        }
    }

    void step_4() {
        static constexpr std::array<Rule, 18> rules = {{
            {"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""}, {"ible", ""}, {"ment", ""},
            {"ant", ""},   {"ent", ""},  {"ism", ""},  {"ate", ""},  {"iti", ""},  {"ous", ""},
            {"ive", ""},   {"ize", ""},  {"ion", ""},  {"al", ""},   {"er", ""},   {"ic", ""},
        }};
        const Rule* r = longest_match(rules);
        if (!r || !in_r2(r->suffix.size())) return;
        if (r->suffix == "ion") {
            if (w.size() >= 4 && (w[w.size() - 4] == 's' || w[w.size() - 4] == 't')) apply(*r);
        } else {
            apply(*r);
        }
    }

    void step_5() {
        if (ends_with(w, "e")) {
            if (in_r2(1)) {
                w.pop_back();
            } else if (in_r1(1)) {
                const std::string_view before(w.data(), w.size() - 1);
                if (!ends_short_syllable(before)) w.pop_back();
            }
        } else if (ends_with(w, "l")) {
            if (in_r2(1) && w.size() >= 2 && w[w.size() - 2] == 'l') w.pop_back();
        }
    }
};

constexpr std::array<std::pair<std::string_view, std::string_view>, 18> kExceptions1 = {{
    {"skis", "ski"},     {"skies", "sky"},   {"dying", "die"},   {"lying", "lie"},
    {"tying", "tie"},    {"idly", "idl"},    {"gently", "gentl"},{"ugly", "ugli"},
    {"early", "earli"},  {"only", "onli"},   {"singly", "singl"},{"sky", "sky"},
    {"news", "news"},    {"howe", "howe"},   {"atlas", "atlas"}, {"cosmos", "cosmos"},
    {"bias", "bias"},    {"andes", "andes"},
}};

constexpr std::array<std::string_view, 8> kExceptions2 = {
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed",
};

}  // namespace

std::string porter2_stem(std::string_view word) {
    for (const char c : word) {
        if ((c < 'a' || c > 'z') && c != '\'') return std::string(word);
    }
    for (const auto& [from, to] : kExceptions1) {
        if (word == from) return std::string(to);
    }
    if (word.size() < 3) return std::string(word);

    Porter2 st;
    st.w = word;
    if (st.w.front() == '\'') st.w.erase(0, 1);

    // Mark consonant y as 'Y': at the start or after a vowel.
    if (!st.w.empty() && st.w[0] == 'y') st.w[0] = 'Y';
    for (std::size_t i = 1; i < st.w.size(); ++i) {
        if (st.w[i] == 'y' && is_vowel(st.w[i - 1])) st.w[i] = 'Y';
    }

    st.mark_regions();
    st.step_0();
    st.step_1a();
    for (const auto& stop : kExceptions2) {
        if (st.w == stop) return st.w;
    }
    st.step_1b();
    st.step_1c();
    st.step_2();
    st.step_3();
    st.step_4();
    st.step_5();

    std::replace(st.w.begin(), st.w.end(), 'Y', 'y');
    return st.w;
}

}  // namespace sbs

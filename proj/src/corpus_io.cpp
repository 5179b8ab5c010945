#include "sbs/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "sbs/chrono_util.hpp"
#include "sbs/csv.hpp"
#include "sbs/errors.hpp"

namespace sbs {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

[[noreturn]] void fail_at(const std::string& path, std::size_t line, const std::string& what) {
    throw IngestionError(path + ":" + std::to_string(line) + ": " + what);
}

// Lines of a text file; '#' comments and blank lines skipped.
std::vector<std::pair<std::size_t, std::string>> data_lines(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string::npos ? text.size() : nl;
        ++line_no;
        std::string line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] != '#') out.emplace_back(line_no, std::move(line));
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::pair<std::string, std::string> split_tab(const std::string& line, const std::string& path,
                                              std::size_t line_no) {
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
        fail_at(path, line_no, "expected two tab-separated columns");
    return {line.substr(0, tab), line.substr(tab + 1)};
}

}  // namespace

std::vector<Document> read_corpus_jsonl(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::size_t end = nl == std::string::npos ? text.size() : nl;
        ++line_no;
        std::string line = text.substr(pos, end - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) fail_at(path, line_no, "malformed JSON object");
        for (const char* key : {"id", "text", "timestamp"}) {
            if (!obj.contains(key) || !obj[key].is_string())
                fail_at(path, line_no, std::string("missing or non-string field \"") + key + "\"");
        }

        Document doc;
        doc.id = obj["id"].get<std::string>();
        doc.text = obj["text"].get<std::string>();
        const auto ts = parse_rfc3339(obj["timestamp"].get<std::string>());
        if (!ts)
            fail_at(path, line_no,
                    "unparseable timestamp \"" + obj["timestamp"].get<std::string>() + "\"");
        doc.timestamp = *ts;
        if (!seen_ids.insert(doc.id).second)
            fail_at(path, line_no, "duplicate document id \"" + doc.id + "\"");
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<Document> read_corpus_csv(const std::string& path) {
    const std::vector<CsvRecord> records = parse_csv(read_file(path));
    if (records.empty()) fail_at(path, 1, "empty CSV corpus (header row required)");

    const auto& header = records.front().fields;
    auto column = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            fail_at(path, records.front().line, "header is missing column \"" + name + "\"");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t id_col = column("id");
    const std::size_t text_col = column("text");
    const std::size_t ts_col = column("timestamp");

    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t required = std::max({id_col, text_col, ts_col}) + 1;
        if (rec.fields.size() < required)
            fail_at(path, rec.line, "record has " + std::to_string(rec.fields.size()) +
                                        " fields, needs at least " + std::to_string(required));
        Document doc;
        doc.id = rec.fields[id_col];
        doc.text = rec.fields[text_col];
        const auto ts = parse_rfc3339(rec.fields[ts_col]);
        if (!ts) fail_at(path, rec.line, "unparseable timestamp \"" + rec.fields[ts_col] + "\"");
        doc.timestamp = *ts;
        if (!seen_ids.insert(doc.id).second)
            fail_at(path, rec.line, "duplicate document id \"" + doc.id + "\"");
        docs.push_back(std::move(doc));
    }
    return docs;
}

PolarityLexicon load_polarity_lexicon(const std::string& path) {
    PolarityLexicon lexicon;
    for (const auto& [line_no, line] : data_lines(path)) {
        const auto [word, value_text] = split_tab(line, path, line_no);
        char* parse_end = nullptr;
        const double value = std::strtod(value_text.c_str(), &parse_end);
        if (parse_end == value_text.c_str() || *parse_end != '\0')
            fail_at(path, line_no, "polarity is not a number: \"" + value_text + "\"");
        if (value < -1.0 || value > 1.0)
            fail_at(path, line_no, "polarity outside [-1, 1]: " + value_text);
        lexicon[word] = value;
    }
    return lexicon;
}

std::map<std::string, std::string> load_aliases(const std::string& path) {
    std::map<std::string, std::string> aliases;
    for (const auto& [line_no, line] : data_lines(path)) {
        const auto [phrase, canonical] = split_tab(line, path, line_no);
        aliases[phrase] = canonical;
    }
    return aliases;
}

std::unordered_map<std::string, std::string> load_lemmas(const std::string& path) {
    std::unordered_map<std::string, std::string> lemmas;
    for (const auto& [line_no, line] : data_lines(path)) {
        const auto [word, lemma] = split_tab(line, path, line_no);
        lemmas[word] = lemma;
    }
    return lemmas;
}

}  // namespace sbs

// brandscore: corpus analytics CLI computing prevalence, diversity,
// connectivity and the combined SBS for brand words over word co-occurrence
// networks, with threshold sweeps, multi-brand comparison and
// Granger-causality tests.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbs/analytics.hpp"
#include "sbs/centrality.hpp"
#include "sbs/cooc_graph.hpp"
#include "sbs/corpus_io.hpp"
#include "sbs/csv.hpp"
#include "sbs/errors.hpp"
#include "sbs/granger.hpp"
#include "sbs/metrics.hpp"
#include "sbs/parallel.hpp"
#include "sbs/stopwords.hpp"
#include "sbs/text_pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIngestion = 3;

/// Configuration error carrying the offending file/flag in its message.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    std::string corpus_path;
    std::string format = "auto";  // auto | jsonl | csv
    std::vector<std::string> brands;
    std::string stopword_path;
    std::string alias_path;
    std::string lexicon_path;
    std::string lemma_path;
    std::string stemmer = "none";  // none | porter | lemma
    int window = 5;
    std::uint64_t min_edge_weight = 1;
    int bigram_min_count = 0;
    std::string granularity = "all";  // all | day | week | month | quarter
    std::vector<double> weights = {1.0, 1.0, 1.0};
    std::string rescale_method = "none";  // none | minmax | percentile
    std::string output_dir = ".";
    unsigned threads = 1;
    bool export_graphs = false;
    bool lowercase = true;
    bool remove_numbers = true;
    bool remove_punctuation = true;
    bool remove_hashtags = true;
    bool remove_html = true;
    std::vector<std::string> merges;          // "name=a,b,c"
    std::string merge_stage = "after-filter";  // before-filter | after-filter
};

std::vector<std::string> split_list(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(sep, pos);
        const std::size_t end = next == std::string::npos ? text.size() : next;
        std::string item = text.substr(pos, end - pos);
        const auto b = item.find_first_not_of(" \t");
        if (b != std::string::npos) {
            const auto e = item.find_last_not_of(" \t");
            out.push_back(item.substr(b, e - b + 1));
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("config key \"" + key + "\": expected a boolean, got \"" + value + "\"");
}

long long parse_integer(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(value, &used);
        if (used != value.size()) throw ConfigError("");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key \"" + key + "\": expected an integer, got \"" + value + "\"");
    }
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw ConfigError("");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key \"" + key + "\": expected a number, got \"" + value + "\"");
    }
}

/// Flat key-value config file: "key = value", '#' comments, blank lines.
void apply_config_file(RunConfig& cfg, const std::string& path,
                       const std::set<std::string>& cli_set) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto x = s.find_first_not_of(" \t");
            if (x == std::string::npos) return std::string();
            const auto y = s.find_last_not_of(" \t");
            return s.substr(x, y - x + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (cli_set.count(key)) continue;  // command-line flags win

        if (key == "corpus") cfg.corpus_path = value;
        else if (key == "format") cfg.format = value;
        else if (key == "brands") cfg.brands = split_list(value);
        else if (key == "stopwords") cfg.stopword_path = value;
        else if (key == "alias_file") cfg.alias_path = value;
        else if (key == "lexicon") cfg.lexicon_path = value;
        else if (key == "lemma_file") cfg.lemma_path = value;
        else if (key == "stemmer") cfg.stemmer = value;
        else if (key == "window") cfg.window = static_cast<int>(parse_integer(value, key));
        else if (key == "min_edge_weight")
            cfg.min_edge_weight = static_cast<std::uint64_t>(parse_integer(value, key));
        else if (key == "bigram_min_count")
            cfg.bigram_min_count = static_cast<int>(parse_integer(value, key));
        else if (key == "granularity") cfg.granularity = value;
        else if (key == "rescale") cfg.rescale_method = value;
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_integer(value, key));
        else if (key == "export_graphs") cfg.export_graphs = parse_bool(value, key);
        else if (key == "lowercase") cfg.lowercase = parse_bool(value, key);
        else if (key == "remove_numbers") cfg.remove_numbers = parse_bool(value, key);
        else if (key == "remove_punctuation") cfg.remove_punctuation = parse_bool(value, key);
        else if (key == "remove_hashtags") cfg.remove_hashtags = parse_bool(value, key);
        else if (key == "remove_html") cfg.remove_html = parse_bool(value, key);
        else if (key == "merge_stage") cfg.merge_stage = value;
        else if (key == "merge") cfg.merges.push_back(value);
        else if (key == "weights") {
            cfg.weights.clear();
            for (const auto& part : split_list(value)) cfg.weights.push_back(parse_real(part, key));
        } else {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key \"" + key + "\"");
        }
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.corpus_path.empty()) throw ConfigError("no corpus given (--corpus or config)");
    if (cfg.window < 1) throw ConfigError("window must be >= 1 (got " + std::to_string(cfg.window) + ")");
    if (cfg.min_edge_weight < 1) throw ConfigError("min-edge-weight must be >= 1");
    if (cfg.weights.size() != 3)
        throw ConfigError("weights must list exactly three values (prevalence,diversity,connectivity)");
    for (const double w : cfg.weights) {
        if (w < 0.0) throw ConfigError("dimension weights must be nonnegative");
    }
    if (cfg.weights[0] == 0.0 && cfg.weights[1] == 0.0 && cfg.weights[2] == 0.0)
        throw ConfigError("dimension weights must not all be zero");
    if (cfg.brands.empty()) throw ConfigError("no brands given (--brands or config)");
    const bool granularity_ok =
        cfg.granularity == "all" || cfg.granularity == "day" || cfg.granularity == "week" ||
        cfg.granularity == "month" || cfg.granularity == "quarter";
    if (!granularity_ok) throw ConfigError("unknown granularity \"" + cfg.granularity + "\"");
    if (cfg.rescale_method != "none" && cfg.rescale_method != "minmax" &&
        cfg.rescale_method != "percentile")
        throw ConfigError("unknown rescale method \"" + cfg.rescale_method + "\"");
    if (cfg.stemmer != "none" && cfg.stemmer != "porter" && cfg.stemmer != "snowball" &&
        cfg.stemmer != "lemma")
        throw ConfigError("unknown stemmer \"" + cfg.stemmer + "\"");
    if (cfg.merge_stage != "before-filter" && cfg.merge_stage != "after-filter")
        throw ConfigError("merge-stage must be before-filter or after-filter");
}

std::string normalize_token(const RunConfig& cfg, const std::string& raw) {
    std::string out = raw;
    if (cfg.lowercase) {
        std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
            return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
        });
    }
    return out;
}

/// The fully prepared inputs for one scoring run.
struct PreparedCorpus {
    std::vector<sbs::TokenizedDocument> docs;
    sbs::PipelineConfig pipeline;
    std::vector<std::string> brands;  // normalized, deduplicated, user order
    sbs::PolarityLexicon lexicon;
    bool has_lexicon = false;
};

PreparedCorpus prepare_corpus(const RunConfig& cfg) {
    PreparedCorpus prep;

    sbs::PipelineConfig& pipeline = prep.pipeline;
    pipeline.lowercase = cfg.lowercase;
    pipeline.remove_numbers = cfg.remove_numbers;
    pipeline.remove_punctuation = cfg.remove_punctuation;
    pipeline.remove_hashtags = cfg.remove_hashtags;
    pipeline.remove_html = cfg.remove_html;
    pipeline.bigram_min_count = cfg.bigram_min_count;
    if (cfg.stemmer == "porter" || cfg.stemmer == "snowball")
        pipeline.stemmer = sbs::StemmerKind::Porter2;
    else if (cfg.stemmer == "lemma")
        pipeline.stemmer = sbs::StemmerKind::Dictionary;
    if (pipeline.stemmer == sbs::StemmerKind::Dictionary) {
        if (cfg.lemma_path.empty())
            throw ConfigError("stemmer \"lemma\" needs a lemma dictionary (--lemma-file)");
        pipeline.lemma_dictionary = sbs::load_lemmas(cfg.lemma_path);
    }
    pipeline.stopwords =
        cfg.stopword_path.empty() ? sbs::default_english_stopwords() : sbs::load_stopwords(cfg.stopword_path);

    if (!cfg.alias_path.empty()) {
        for (const auto& [phrase, canonical] : sbs::load_aliases(cfg.alias_path)) {
            const auto parts = sbs::tokenize_only(phrase, pipeline);
            if (parts.empty())
                throw ConfigError("alias phrase \"" + phrase + "\" is empty after normalization");
            std::string normalized;
            for (const auto& p : parts) {
                if (!normalized.empty()) normalized += ' ';
                normalized += p;
            }
            pipeline.brand_aliases[normalized] = normalize_token(cfg, canonical);
        }
    }

    // Brand words are canonical tokens: protected from stopword removal,
    // stemming and bigram fusion so they survive the pipeline verbatim.
    for (const auto& brand : cfg.brands) {
        const std::string normalized = normalize_token(cfg, brand);
        if (std::find(prep.brands.begin(), prep.brands.end(), normalized) == prep.brands.end())
            prep.brands.push_back(normalized);
        pipeline.protected_tokens.insert(normalized);
    }

    std::string format = cfg.format;
    if (format == "auto") {
        const auto dot = cfg.corpus_path.rfind('.');
        const std::string ext = dot == std::string::npos ? "" : cfg.corpus_path.substr(dot + 1);
        format = ext == "csv" ? "csv" : "jsonl";
    }
    std::vector<sbs::Document> raw;
    if (format == "jsonl")
        raw = sbs::read_corpus_jsonl(cfg.corpus_path);
    else if (format == "csv")
        raw = sbs::read_corpus_csv(cfg.corpus_path);
    else
        throw ConfigError("unknown corpus format \"" + cfg.format + "\"");

    prep.docs.resize(raw.size());
    sbs::parallel_for(raw.size(), cfg.threads,
                      [&](std::size_t i) { prep.docs[i] = sbs::preprocess(raw[i], pipeline); });
    if (pipeline.bigram_min_count > 0)
        prep.docs = sbs::detect_bigrams(std::move(prep.docs), pipeline.bigram_min_count,
                                        pipeline.canonical_tokens());

    if (!cfg.lexicon_path.empty()) {
        prep.lexicon = sbs::load_polarity_lexicon(cfg.lexicon_path);
        prep.has_lexicon = true;
    }
    return prep;
}

sbs::CoocGraph build_period_graph(const RunConfig& cfg,
                                  const std::vector<sbs::TokenizedDocument>& docs, int window,
                                  unsigned threads) {
    sbs::CoocGraph graph = sbs::build_graph(docs, window, threads);
    auto apply_merges = [&](sbs::CoocGraph g) {
        for (const auto& spec : cfg.merges) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos)
                throw ConfigError("merge spec must look like name=word1,word2 (got \"" + spec + "\")");
            const std::string name = normalize_token(cfg, spec.substr(0, eq));
            std::unordered_set<std::string> group;
            for (const auto& member : split_list(spec.substr(eq + 1)))
                group.insert(normalize_token(cfg, member));
            std::erase_if(group, [&](const std::string& m) { return !g.find(m).has_value(); });
            if (group.empty()) continue;  // nothing to contract in this period
            g = sbs::merge_nodes(g, group, name);
        }
        return g;
    };
    if (cfg.merge_stage == "before-filter") graph = apply_merges(std::move(graph));
    graph = sbs::filter_edges(graph, cfg.min_edge_weight);
    if (cfg.merge_stage == "after-filter") graph = apply_merges(std::move(graph));
    return graph;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

const std::string kScoresHeader =
    "brand,period,prevalence,prevalence_rel,diversity,diversity_norm,connectivity,"
    "connectivity_norm,sbs,polarity,n_nodes,tot_words";

std::string scores_row(const sbs::BrandScores& s) {
    return sbs::csv_line({
        s.brand,
        s.period,
        std::to_string(s.prevalence),
        sbs::format_fixed(s.prevalence_rel),
        std::to_string(s.diversity),
        sbs::format_fixed(s.diversity_norm),
        sbs::format_fixed(s.connectivity),
        sbs::format_fixed(s.connectivity_norm),
        sbs::format_fixed(s.sbs),
        s.polarity ? sbs::format_fixed(*s.polarity) : "",
        std::to_string(s.n_nodes),
        std::to_string(s.tot_words),
    });
}

struct PeriodResult {
    std::string label;
    std::vector<sbs::BrandScores> scores;
    std::string graph_export;    // edge list when --export-graphs
    std::string rescaled_lines;  // rows of rescaled.csv
};

PeriodResult score_period(const RunConfig& cfg, const PreparedCorpus& prep,
                          const std::string& label, const std::vector<sbs::TokenizedDocument>& docs,
                          unsigned threads) {
    PeriodResult result;
    result.label = label;

    const sbs::CoocGraph graph = build_period_graph(cfg, docs, cfg.window, threads);
    sbs::SbsOptions options;
    options.threads = threads;
    options.weights = {cfg.weights[0], cfg.weights[1], cfg.weights[2]};
    const sbs::NodeDimensions dims = sbs::node_dimensions(docs, graph, threads);
    result.scores = sbs::score_brands(dims, graph, prep.brands, options);

    for (auto& s : result.scores) {
        s.period = label;
        if (prep.has_lexicon && graph.find(s.brand))
            s.polarity = sbs::cooccurrence_polarity(graph, s.brand, prep.lexicon);
    }

    if (cfg.export_graphs) result.graph_export = sbs::to_edge_list(graph);

    if (cfg.rescale_method != "none") {
        const auto method = cfg.rescale_method == "minmax" ? sbs::RescaleMethod::MinMax
                                                           : sbs::RescaleMethod::PercentileRank;
        // Rescale over the same population the z-scores use: every node.
        std::map<std::string, double> prev_map, div_map, con_map, sbs_map;
        std::vector<double> zp = sbs::standardized(dims.prevalence);
        std::vector<double> zd = sbs::standardized(dims.diversity);
        std::vector<double> zc = sbs::standardized(dims.connectivity);
        for (std::size_t i = 0; i < graph.node_count(); ++i) {
            const auto& word = graph.word(static_cast<sbs::CoocGraph::NodeId>(i));
            prev_map[word] = dims.prevalence[i];
            div_map[word] = dims.diversity[i];
            con_map[word] = dims.connectivity[i];
            sbs_map[word] = cfg.weights[0] * zp[i] + cfg.weights[1] * zd[i] + cfg.weights[2] * zc[i];
        }
        if (!prev_map.empty()) {
            const auto rs_prev = sbs::rescale(prev_map, method);
            const auto rs_div = sbs::rescale(div_map, method);
            const auto rs_con = sbs::rescale(con_map, method);
            const auto rs_sbs = sbs::rescale(sbs_map, method);
            auto lookup = [](const std::map<std::string, double>& m, const std::string& k) {
                const auto it = m.find(k);
                return it == m.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
            };
            for (const auto& brand : prep.brands) {
                result.rescaled_lines += sbs::csv_line({
                    brand,
                    label,
                    sbs::format_fixed(lookup(rs_prev, brand)),
                    sbs::format_fixed(lookup(rs_div, brand)),
                    sbs::format_fixed(lookup(rs_con, brand)),
                    sbs::format_fixed(lookup(rs_sbs, brand)),
                });
                result.rescaled_lines += '\n';
            }
        }
    }
    return result;
}

int run_score(const RunConfig& cfg) {
    validate(cfg);
    const PreparedCorpus prep = prepare_corpus(cfg);

    std::vector<std::pair<std::string, std::vector<sbs::TokenizedDocument>>> slices;
    if (cfg.granularity == "all") {
        slices.emplace_back("all", prep.docs);
    } else {
        const auto granularity = cfg.granularity == "day"     ? sbs::Granularity::Day
                                 : cfg.granularity == "week"  ? sbs::Granularity::Week
                                 : cfg.granularity == "month" ? sbs::Granularity::Month
                                                              : sbs::Granularity::Quarter;
        slices = sbs::time_slice(prep.docs, granularity);
    }

    // One period: thread the betweenness sweep. Several: thread across periods.
    const unsigned inner_threads = slices.size() == 1 ? cfg.threads : 1;
    std::vector<PeriodResult> results(slices.size());
    sbs::parallel_for(slices.size(), slices.size() == 1 ? 1 : cfg.threads, [&](std::size_t p) {
        results[p] = score_period(cfg, prep, slices[p].first, slices[p].second, inner_threads);
    });

    std::string csv = kScoresHeader + "\n";
    std::string rescaled = "brand,period,prevalence_resc,diversity_resc,connectivity_resc,sbs_resc\n";
    for (const auto& r : results) {
        for (const auto& s : r.scores) csv += scores_row(s) + "\n";
        rescaled += r.rescaled_lines;
    }
    write_file(cfg.output_dir, "scores.csv", csv);
    if (cfg.rescale_method != "none") write_file(cfg.output_dir, "rescaled.csv", rescaled);
    if (cfg.export_graphs) {
        for (const auto& r : results) write_file(cfg.output_dir, "graph_" + r.label + ".tsv", r.graph_export);
    }
    std::cout << "wrote " << cfg.output_dir << "/scores.csv (" << results.size() << " period(s), "
              << prep.brands.size() << " brand(s))\n";
    return kExitOk;
}

std::vector<int> parse_thresholds(const std::string& spec) {
    std::vector<int> out;
    for (const auto& part : split_list(spec)) {
        const auto dash = part.find('-', 1);  // allow plain negative to fail below
        if (dash != std::string::npos) {
            const int from = std::stoi(part.substr(0, dash));
            const int to = std::stoi(part.substr(dash + 1));
            if (from > to) throw ConfigError("bad threshold range \"" + part + "\"");
            for (int t = from; t <= to; ++t) out.push_back(t);
        } else {
            out.push_back(std::stoi(part));
        }
    }
    return out;
}

int run_sweep(const RunConfig& cfg, const std::string& thresholds_spec) {
    validate(cfg);
    std::vector<int> thresholds;
    try {
        thresholds = parse_thresholds(thresholds_spec);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse thresholds \"" + thresholds_spec + "\"");
    }
    if (thresholds.empty()) throw ConfigError("threshold list is empty");
    for (const int t : thresholds) {
        if (t < 1) throw ConfigError("thresholds must be >= 1");
    }

    const PreparedCorpus prep = prepare_corpus(cfg);
    sbs::SbsOptions options;
    options.threads = cfg.threads;
    options.weights = {cfg.weights[0], cfg.weights[1], cfg.weights[2]};
    const sbs::SweepReport report =
        sbs::threshold_sweep(prep.docs, prep.brands, thresholds, cfg.min_edge_weight, options);

    std::string csv = "threshold,brand,sbs,rank\n";
    for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
        for (std::size_t b = 0; b < report.brands.size(); ++b) {
            csv += sbs::csv_line({std::to_string(report.thresholds[t]), report.brands[b],
                                  sbs::format_fixed(report.scores[t][b].sbs),
                                  std::to_string(report.ranks[t][b])}) +
                   "\n";
        }
    }
    csv += std::string("# stable: ") + (report.stable ? "true" : "false") + "\n";
    write_file(cfg.output_dir, "sweep.csv", csv);
    std::cout << "wrote " << cfg.output_dir << "/sweep.csv (" << report.thresholds.size()
              << " thresholds); stable: " << (report.stable ? "true" : "false") << "\n";
    return kExitOk;
}

int run_compare(const RunConfig& cfg, std::size_t associations_k) {
    validate(cfg);
    const PreparedCorpus prep = prepare_corpus(cfg);
    const PeriodResult result = score_period(cfg, prep, "all", prep.docs, cfg.threads);

    std::vector<double> sbs_values;
    for (const auto& s : result.scores) sbs_values.push_back(s.sbs);
    const std::vector<int> ranks = sbs::dense_min_ranks(sbs_values);

    std::string csv =
        "brand,prevalence,prevalence_rel,diversity,diversity_norm,connectivity,connectivity_norm,"
        "sbs,rank,polarity\n";
    for (std::size_t b = 0; b < result.scores.size(); ++b) {
        const auto& s = result.scores[b];
        csv += sbs::csv_line({s.brand, std::to_string(s.prevalence),
                              sbs::format_fixed(s.prevalence_rel), std::to_string(s.diversity),
                              sbs::format_fixed(s.diversity_norm), sbs::format_fixed(s.connectivity),
                              sbs::format_fixed(s.connectivity_norm), sbs::format_fixed(s.sbs),
                              std::to_string(ranks[b]),
                              s.polarity ? sbs::format_fixed(*s.polarity) : ""}) +
               "\n";
    }
    write_file(cfg.output_dir, "compare.csv", csv);

    std::printf("%-20s %12s %10s %14s %10s %6s\n", "brand", "prevalence", "diversity",
                "connectivity", "sbs", "rank");
    for (std::size_t b = 0; b < result.scores.size(); ++b) {
        const auto& s = result.scores[b];
        std::printf("%-20s %12llu %10llu %14.3f %10.3f %6d\n", s.brand.c_str(),
                    static_cast<unsigned long long>(s.prevalence),
                    static_cast<unsigned long long>(s.diversity), s.connectivity, s.sbs, ranks[b]);
    }

    if (associations_k > 0) {
        const sbs::CoocGraph graph = build_period_graph(cfg, prep.docs, cfg.window, cfg.threads);
        std::string assoc_csv = "brand,word,weight,unique\n";
        for (const auto& brand : prep.brands) {
            if (!graph.find(brand)) continue;
            for (const auto& a : sbs::association_profile(graph, brand, associations_k, prep.brands)) {
                assoc_csv += sbs::csv_line({brand, a.word, std::to_string(a.weight),
                                            a.unique ? "true" : "false"}) +
                             "\n";
            }
        }
        write_file(cfg.output_dir, "associations.csv", assoc_csv);
    }
    return kExitOk;
}

int run_granger(const std::string& scores_path, const std::string& external_path,
                const std::string& brand, const std::string& metric, int max_lag, bool diff_y,
                bool diff_x, const std::string& output_dir) {
    const std::vector<std::string> metrics = {"prevalence", "diversity", "connectivity", "sbs"};
    if (std::find(metrics.begin(), metrics.end(), metric) == metrics.end())
        throw ConfigError("unknown metric \"" + metric + "\" (use prevalence|diversity|connectivity|sbs)");
    if (max_lag < 1) throw ConfigError("max-lag must be >= 1");

    std::ifstream scores_in(scores_path, std::ios::binary);
    if (!scores_in) throw sbs::IngestionError("cannot open file: " + scores_path);
    std::string scores_text((std::istreambuf_iterator<char>(scores_in)),
                            std::istreambuf_iterator<char>());
    const auto records = sbs::parse_csv(scores_text);
    if (records.empty()) throw sbs::IngestionError(scores_path + ":1: empty scores file");
    const auto& header = records.front().fields;
    auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw sbs::IngestionError(scores_path + ":" + std::to_string(records.front().line) +
                                      ": missing column \"" + name + "\"");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t brand_col = col("brand"), period_col = col("period"), metric_col = col(metric);

    std::vector<std::string> periods;
    std::vector<double> metric_series;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() <= std::max({brand_col, period_col, metric_col})) continue;
        if (rec.fields[brand_col] != brand) continue;
        const std::string& cell = rec.fields[metric_col];
        if (cell.empty())
            throw sbs::IngestionError(scores_path + ":" + std::to_string(rec.line) +
                                      ": missing value for metric \"" + metric + "\"");
        periods.push_back(rec.fields[period_col]);
        try {
            metric_series.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw sbs::IngestionError(scores_path + ":" + std::to_string(rec.line) +
                                      ": metric value is not a number: \"" + cell + "\"");
        }
    }
    if (periods.empty())
        throw sbs::IngestionError(scores_path + ": no rows for brand \"" + brand + "\"");

    std::ifstream ext_in(external_path, std::ios::binary);
    if (!ext_in) throw sbs::IngestionError("cannot open file: " + external_path);
    std::string ext_text((std::istreambuf_iterator<char>(ext_in)), std::istreambuf_iterator<char>());
    std::map<std::string, double> external;
    for (const auto& rec : sbs::parse_csv(ext_text)) {
        if (rec.fields.size() < 2) continue;
        if (rec.fields[0] == "period") continue;  // optional header
        try {
            external[rec.fields[0]] = std::stod(rec.fields[1]);
        } catch (const std::exception&) {
            throw sbs::IngestionError(external_path + ":" + std::to_string(rec.line) +
                                      ": value is not a number: \"" + rec.fields[1] + "\"");
        }
    }
    std::vector<double> external_series;
    for (const auto& period : periods) {
        const auto it = external.find(period);
        if (it == external.end())
            throw sbs::IngestionError(external_path + ": no value for period \"" + period + "\"");
        external_series.push_back(it->second);
    }

    // The external series is the dependent variable: does the brand metric
    // help predict it beyond its own history?
    const auto results = sbs::granger_test(external_series, metric_series, max_lag, diff_y, diff_x);

    std::string csv = "lag,chi2,df,p_value\n";
    std::printf("%4s %12s %4s %10s\n", "lag", "chi2", "df", "p");
    for (const auto& r : results) {
        csv += sbs::csv_line({std::to_string(r.lag), sbs::format_fixed(r.chi2),
                              std::to_string(r.df), sbs::format_fixed(r.p_value)}) +
               "\n";
        std::printf("%4d %12.4f %4d %10.6f\n", r.lag, r.chi2, r.df, r.p_value);
    }
    write_file(output_dir, "granger.csv", csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"brandscore: brand importance scoring over word co-occurrence networks"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string brands_spec;
    std::string weights_spec;
    std::string thresholds_spec;
    std::size_t associations_k = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key-value config file; flags win");
        cmd->add_option("--corpus", cfg.corpus_path, "corpus path (JSONL or CSV)");
        cmd->add_option("--format", cfg.format, "corpus format: auto|jsonl|csv");
        cmd->add_option("--brands", brands_spec, "comma-separated brand words");
        cmd->add_option("--stopwords", cfg.stopword_path, "stopword file (default: built-in English)");
        cmd->add_option("--alias-file", cfg.alias_path, "alias file: phrase<TAB>canonical");
        cmd->add_option("--lexicon", cfg.lexicon_path, "polarity lexicon: word<TAB>value");
        cmd->add_option("--lemma-file", cfg.lemma_path, "lemma dictionary: word<TAB>lemma");
        cmd->add_option("--stemmer", cfg.stemmer, "none|porter|lemma");
        cmd->add_option("--window", cfg.window, "co-occurrence window (default 5)");
        cmd->add_option("--min-edge-weight", cfg.min_edge_weight, "drop edges below this weight");
        cmd->add_option("--bigram-min-count", cfg.bigram_min_count, "fuse bigrams seen this often (0 off)");
        cmd->add_option("--granularity", cfg.granularity, "all|day|week|month|quarter");
        cmd->add_option("--weights", weights_spec, "dimension weights, e.g. 1,1,1");
        cmd->add_option("--rescale", cfg.rescale_method, "none|minmax|percentile");
        cmd->add_option("--output-dir", cfg.output_dir, "output directory (default .)");
        cmd->add_option("--threads", cfg.threads, "worker threads (default 1)");
        cmd->add_flag("--export-graphs", cfg.export_graphs, "write per-period edge lists");
        cmd->add_option("--merge", cfg.merges, "contract nodes: name=word1,word2 (repeatable)");
        cmd->add_option("--merge-stage", cfg.merge_stage, "before-filter|after-filter");
        cmd->add_flag("--no-lowercase", "keep original casing");
        cmd->add_flag("--keep-numbers", "keep numeric tokens");
        cmd->add_flag("--keep-punctuation", "keep punctuation characters");
        cmd->add_flag("--keep-hashtags", "keep #hashtag tokens");
        cmd->add_flag("--keep-html", "skip html tag stripping");
    };

    CLI::App* score = app.add_subcommand("score", "score brands per period; writes scores.csv");
    add_common(score);
    CLI::App* sweep = app.add_subcommand("sweep", "rerun scoring across windows; writes sweep.csv");
    add_common(sweep);
    sweep->add_option("--thresholds", thresholds_spec, "e.g. 1-20 or 1,2,5")->required();
    CLI::App* compare =
        app.add_subcommand("compare", "multi-brand single-period comparison; writes compare.csv");
    add_common(compare);
    compare->add_option("--associations", associations_k, "also write top-K association profiles");

    std::string granger_scores, granger_external, granger_brand, granger_metric = "sbs";
    int granger_max_lag = 6;
    bool granger_diff_y = false, granger_diff_x = false;
    std::string granger_output = ".";
    CLI::App* granger = app.add_subcommand(
        "granger", "test whether a brand metric precedes an external series; writes granger.csv");
    granger->add_option("--scores", granger_scores, "scores.csv from the score command")->required();
    granger->add_option("--external", granger_external, "external series CSV: period,value")->required();
    granger->add_option("--brand", granger_brand, "brand row selector")->required();
    granger->add_option("--metric", granger_metric, "prevalence|diversity|connectivity|sbs");
    granger->add_option("--max-lag", granger_max_lag, "test lags 1..max (default 6)");
    granger->add_flag("--diff-y", granger_diff_y, "first-difference the external series");
    granger->add_flag("--diff-x", granger_diff_x, "first-difference the brand metric");
    granger->add_option("--output-dir", granger_output, "output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == granger) {
            return run_granger(granger_scores, granger_external, granger_brand, granger_metric,
                               granger_max_lag, granger_diff_y, granger_diff_x, granger_output);
        }

        // Config file values fill in whatever the command line left unset.
        std::set<std::string> cli_set;
        const std::map<std::string, std::string> flag_to_key = {
            {"--corpus", "corpus"},           {"--format", "format"},
            {"--brands", "brands"},           {"--stopwords", "stopwords"},
            {"--alias-file", "alias_file"},   {"--lexicon", "lexicon"},
            {"--lemma-file", "lemma_file"},   {"--stemmer", "stemmer"},
            {"--window", "window"},           {"--min-edge-weight", "min_edge_weight"},
            {"--bigram-min-count", "bigram_min_count"}, {"--granularity", "granularity"},
            {"--weights", "weights"},         {"--rescale", "rescale"},
            {"--output-dir", "output_dir"},   {"--threads", "threads"},
            {"--export-graphs", "export_graphs"}, {"--merge", "merge"},
            {"--merge-stage", "merge_stage"},
        };
        for (const auto& [flag, key] : flag_to_key) {
            if (active->count(flag) > 0) cli_set.insert(key);
        }
        if (active->count("--no-lowercase")) {
            cfg.lowercase = false;
            cli_set.insert("lowercase");
        }
        if (active->count("--keep-numbers")) {
            cfg.remove_numbers = false;
            cli_set.insert("remove_numbers");
        }
        if (active->count("--keep-punctuation")) {
            cfg.remove_punctuation = false;
            cli_set.insert("remove_punctuation");
        }
        if (active->count("--keep-hashtags")) {
            cfg.remove_hashtags = false;
            cli_set.insert("remove_hashtags");
        }
        if (active->count("--keep-html")) {
            cfg.remove_html = false;
            cli_set.insert("remove_html");
        }
        if (!brands_spec.empty()) cfg.brands = split_list(brands_spec);
        if (!weights_spec.empty()) {
            cfg.weights.clear();
            for (const auto& part : split_list(weights_spec))
                cfg.weights.push_back(parse_real(part, "--weights"));
        }
        if (!config_path.empty()) apply_config_file(cfg, config_path, cli_set);

        if (active == score) return run_score(cfg);
        if (active == sweep) return run_sweep(cfg, thresholds_spec);
        if (active == compare) return run_compare(cfg, associations_k);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const sbs::IngestionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIngestion;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.
//
// Usage: sbs_acceptance [scratch_dir]

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sbs/analytics.hpp"
#include "sbs/centrality.hpp"
#include "sbs/cooc_graph.hpp"
#include "sbs/csv.hpp"
#include "sbs/granger.hpp"
#include "sbs/metrics.hpp"
#include "sbs/stats.hpp"

#include "corpora.hpp"
#include "oracles.hpp"
#include "rng.hpp"

namespace {

using sbs::CoocGraph;

std::filesystem::path g_scratch;

std::string fail(const std::string& why) { return why; }

// ---------------------------------------------------------------------------
// 1. Worked-example graph reconstruction.

std::string criterion_graph_reconstruction() {
    const auto corpus = testsupport::fig2_corpus();
    const CoocGraph g = sbs::build_graph(corpus, 5);
    if (g.node_count() != 14)
        return fail("expected 14 nodes, got " + std::to_string(g.node_count()));
    if (g.weight("mysteri", "dark") != 2) return fail("weight(mysteri,dark) != 2");
    if (g.weight("dark", "night") != 2) return fail("weight(dark,night) != 2");

    const auto oracle = testsupport::oracle_cooc_edges(corpus, 5);
    testsupport::EdgeWeights actual;
    g.for_each_edge([&](CoocGraph::NodeId a, CoocGraph::NodeId b, std::uint64_t w) {
        auto key = std::minmax(g.word(a), g.word(b));
        actual[{key.first, key.second}] = w;
    });
    if (actual != oracle) return fail("edge set differs from the brute-force oracle");
    return {};
}

// ---------------------------------------------------------------------------
// 2. Worked metrics on that graph.

std::string criterion_worked_metrics() {
    const auto corpus = testsupport::fig2_corpus();
    const CoocGraph g = sbs::build_graph(corpus, 5);

    const auto [count, rel] = sbs::prevalence(corpus, "mysteri");
    if (count != 2) return fail("prevalence count != 2");
    if (std::fabs(rel - 2.0 / 17.0) > 1e-12) return fail("relative prevalence != 2/17");
    if (std::fabs(sbs::diversity(g, "mysteri", true) - 1.0) > 1e-12)
        return fail("diversity_norm(mysteri) != 1.0");

    const auto actual = sbs::betweenness_all(g);
    const auto expected = testsupport::oracle_betweenness(testsupport::SimpleGraph::from_cooc(g));
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (std::fabs(actual[i] - expected[i]) > 1e-9)
            return fail("betweenness mismatch at node " + g.word(static_cast<CoocGraph::NodeId>(i)));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 3. Betweenness equals exhaustive path enumeration.

CoocGraph graph_from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<std::string> words;
    std::vector<std::tuple<std::string, std::string, std::uint64_t>> edges;
    for (std::size_t i = 0; i < n; ++i) words.push_back("n" + std::to_string(i));
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++bit) {
            if (mask & (1ull << bit)) edges.emplace_back(words[i], words[j], 1);
        }
    }
    return CoocGraph::from_edges(words, edges);
}

std::string check_betweenness(const CoocGraph& g) {
    const auto actual = sbs::betweenness_all(g);
    const auto expected = testsupport::oracle_betweenness(testsupport::SimpleGraph::from_cooc(g));
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (std::fabs(actual[i] - expected[i]) > 1e-9) {
            return fail("betweenness differs from enumeration oracle by " +
                        std::to_string(std::fabs(actual[i] - expected[i])));
        }
    }
    return {};
}

std::string criterion_betweenness_oracle() {
    std::size_t connected_checked = 0;

    // Exhaustive edge subsets for 4- and 5-node graphs, connected ones kept.
    for (const std::size_t n : {4u, 5u}) {
        const std::size_t pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
            const CoocGraph g = graph_from_mask(n, mask);
            if (!testsupport::SimpleGraph::from_cooc(g).connected()) continue;
            ++connected_checked;
            if (const auto err = check_betweenness(g); !err.empty()) return err;
        }
    }

    // Random connected graphs at 6..8 nodes round out the small sample.
    testsupport::Rng rng(301);
    for (const std::size_t n : {6u, 7u, 8u}) {
        const std::size_t pairs = n * (n - 1) / 2;
        std::size_t accepted = 0;
        while (accepted < 50) {
            const std::uint64_t mask = rng.next_u64() & ((1ull << pairs) - 1);
            const CoocGraph g = graph_from_mask(n, mask);
            if (!testsupport::SimpleGraph::from_cooc(g).connected()) continue;
            ++accepted;
            ++connected_checked;
            if (const auto err = check_betweenness(g); !err.empty()) return err;
        }
    }
    if (connected_checked < 500 + 150)
        return fail("generator produced too few graphs: " + std::to_string(connected_checked));

    // 100 random graphs up to 30 nodes, connectivity not required.
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 9 + rng.next_index(22);
        const double p = 0.10 + 0.20 * rng.next_double();
        std::vector<std::string> words;
        std::vector<std::tuple<std::string, std::string, std::uint64_t>> edges;
        for (std::size_t i = 0; i < n; ++i) words.push_back("r" + std::to_string(i));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (rng.next_double() < p) edges.emplace_back(words[i], words[j], 1);
            }
        }
        if (const auto err = check_betweenness(CoocGraph::from_edges(words, edges)); !err.empty())
            return err;
    }
    return {};
}

// ---------------------------------------------------------------------------
// 4. Normalization identities and ranges.

std::string criterion_normalization() {
    for (int n = 3; n <= 12; ++n) {
        // Star: the center's normalized connectivity is exactly 1.
        std::vector<std::string> words = {"center"};
        std::vector<std::tuple<std::string, std::string, std::uint64_t>> edges;
        for (int i = 1; i < n; ++i) {
            words.push_back("leaf" + std::to_string(i));
            edges.emplace_back("center", words.back(), 1);
        }
        const CoocGraph star = CoocGraph::from_edges(words, edges);
        if (std::fabs(sbs::connectivity(star, "center", true) - 1.0) > 1e-12)
            return fail("star center connectivity_norm != 1 at n=" + std::to_string(n));

        // Complete graph: everyone's normalized diversity is exactly 1.
        words.clear();
        edges.clear();
        for (int i = 0; i < n; ++i) words.push_back("k" + std::to_string(i));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) edges.emplace_back(words[i], words[j], 1);
        }
        const CoocGraph complete = CoocGraph::from_edges(words, edges);
        for (const auto& w : words) {
            if (std::fabs(sbs::diversity(complete, w, true) - 1.0) > 1e-12)
                return fail("complete-graph diversity_norm != 1 at n=" + std::to_string(n));
        }
    }

    testsupport::Rng rng(401);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 3 + rng.next_index(30);
        std::vector<std::string> words;
        std::vector<std::tuple<std::string, std::string, std::uint64_t>> edges;
        for (std::size_t i = 0; i < n; ++i) words.push_back("w" + std::to_string(i));
        const double p = 0.05 + 0.4 * rng.next_double();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (rng.next_double() < p) edges.emplace_back(words[i], words[j], 1 + rng.next_index(5));
            }
        }
        const CoocGraph g = CoocGraph::from_edges(words, edges);
        const auto bc = sbs::betweenness_all(g);
        for (const auto& w : words) {
            const double div = sbs::diversity(g, w, true);
            const double con = sbs::connectivity(g, bc, w, true);
            if (div < 0.0 || div > 1.0) return fail("diversity_norm out of [0,1]");
            if (con < 0.0 || con > 1.0) return fail("connectivity_norm out of [0,1]");
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// 5. Standardization contract.

std::string criterion_standardization() {
    testsupport::Rng rng(501);
    for (int trial = 0; trial < 100; ++trial) {
        const auto corpus =
            testsupport::random_corpus(rng, 4 + rng.next_index(8), 15 + rng.next_index(20),
                                       6 + rng.next_index(12));
        const CoocGraph g = sbs::build_graph(corpus, 1 + static_cast<int>(rng.next_index(6)));
        const auto dims = sbs::node_dimensions(corpus, g);
        for (const auto* values : {&dims.prevalence, &dims.diversity, &dims.connectivity}) {
            const auto z = sbs::standardized(*values);
            const auto zm = sbs::stats::population_moments(z);
            if (std::fabs(zm.mean) >= 1e-9) return fail("standardized mean above 1e-9");
            const auto raw = sbs::stats::population_moments(*values);
            if (raw.stddev > 0.0 && std::fabs(zm.stddev - 1.0) >= 1e-9)
                return fail("standardized stddev not within 1e-9 of 1");
        }
    }

    // Fully degenerate corpus: every dimension constant, every score zero.
    sbs::TokenizedDocument d;
    d.id = "d";
    d.tokens = {"a", "b", "c"};
    const std::vector<sbs::TokenizedDocument> corpus = {d};
    const CoocGraph g = sbs::build_graph(corpus, 2);
    const auto scores = sbs::score_brands(corpus, g, {"a", "b", "c"});
    for (const auto& s : scores) {
        if (s.sbs != 0.0) return fail("degenerate corpus produced nonzero score");
    }
    return {};
}

// ---------------------------------------------------------------------------
// 6. Threshold-sweep rank stability and its engineered failure.

std::string criterion_threshold_sweep() {
    std::vector<int> thresholds;
    for (int t = 1; t <= 20; ++t) thresholds.push_back(t);

    const auto stable_report = sbs::threshold_sweep(testsupport::dominance_corpus("alpha", "beta"),
                                                    {"alpha", "beta"}, thresholds);
    if (!stable_report.stable) return fail("dominance corpus was not rank stable");
    for (const auto& ranks : stable_report.ranks) {
        if (ranks[0] != 1) return fail("dominant brand lost the top rank");
    }

    const auto unstable_report = sbs::threshold_sweep(
        testsupport::adversarial_corpus("alpha", "beta"), {"alpha", "beta"}, thresholds);
    if (unstable_report.stable) return fail("adversarial corpus failed to swap ranks");
    return {};
}

// ---------------------------------------------------------------------------
// 7. Statistical-test calibration and power.

std::string criterion_granger() {
    testsupport::Rng rng(701);
    const int trials = 1000;
    const int max_lag = 5;
    const std::size_t t_len = 200;
    std::vector<int> rejections(max_lag, 0);
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<double> y(t_len), x(t_len);
        for (auto& v : y) v = rng.next_normal();
        for (auto& v : x) v = rng.next_normal();
        const auto results = sbs::granger_test(y, x, max_lag);
        for (int lag = 0; lag < max_lag; ++lag) {
            if (results[lag].p_value < 0.05) ++rejections[lag];
        }
    }
    for (int lag = 0; lag < max_lag; ++lag) {
        const double rate = static_cast<double>(rejections[lag]) / trials;
        if (rate < 0.02 || rate > 0.08) {
            return fail("null rejection rate at lag " + std::to_string(lag + 1) + " is " +
                        std::to_string(rate) + ", outside [0.02, 0.08]");
        }
    }

    // Planted dependence three steps back, sample size 85.
    testsupport::Rng rng2(702);
    const std::size_t t85 = 85;
    std::vector<double> x(t85), y(t85);
    for (auto& v : x) v = rng2.next_normal();
    for (std::size_t t = 0; t < t85; ++t) {
        y[t] = 0.3 * rng2.next_normal();
        if (t >= 3) y[t] += 0.8 * x[t - 3];
    }
    const auto results = sbs::granger_test(y, x, 3);
    if (!(results[2].p_value < 0.01)) {
        return fail("planted lag-3 signal not detected: p = " +
                    std::to_string(results[2].p_value));
    }
    return {};
}

// ---------------------------------------------------------------------------
// 8. Determinism and scale on a large synthetic corpus.

std::string write_large_corpus(const std::filesystem::path& path, std::size_t docs) {
    // Zipf-like weights over a 1,202-word vocabulary.
    const std::size_t vocab = 1202;
    std::vector<double> cumulative(vocab);
    double total = 0.0;
    for (std::size_t k = 0; k < vocab; ++k) {
        total += 1.0 / static_cast<double>(k + 10);
        cumulative[k] = total;
    }
    for (auto& c : cumulative) c /= total;

    testsupport::Rng rng(801);
    std::ofstream out(path, std::ios::binary);
    if (!out) return "cannot write " + path.string();
    std::string buffer;
    buffer.reserve(1 << 20);
    for (std::size_t i = 0; i < docs; ++i) {
        const std::size_t len = 30 + (i * 7919) % 41;
        buffer += R"({"id":"d)";
        buffer += std::to_string(i);
        buffer += R"(","text":")";
        for (std::size_t t = 0; t < len; ++t) {
            const double u = rng.next_double();
            const std::size_t k = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
            if (t) buffer += ' ';
            buffer += 'w';
            buffer += std::to_string(k);
        }
        buffer += R"(","timestamp":"2021-)";
        char datepart[20];
        std::snprintf(datepart, sizeof(datepart), "%02zu-%02zuT00:00:00Z", 1 + (i / 2800) % 12,
                      1 + (i / 100) % 28);
        buffer += datepart;
        buffer += "\"}\n";
        if (buffer.size() > (1 << 20)) {
            out << buffer;
            buffer.clear();
        }
    }
    out << buffer;
    return {};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SBS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string criterion_scale_determinism() {
    const auto corpus = g_scratch / "large_corpus.jsonl";
    if (const auto err = write_large_corpus(corpus, 100000); !err.empty()) return err;

    const std::string common = "score --corpus " + corpus.string() + " --brands w12,w800 ";
    struct Run {
        const char* dir;
        const char* threads;
    };
    const Run runs[] = {{"t1", "1"}, {"t8", "8"}, {"t8b", "8"}};
    for (const auto& run : runs) {
        const auto started = std::chrono::steady_clock::now();
        const int code = run_cli(common + "--threads " + run.threads + " --output-dir " +
                                 (g_scratch / run.dir).string());
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (code != 0) return fail(std::string("scoring run failed in ") + run.dir);
        if (seconds > 600.0)
            return fail("scoring run exceeded 10 minutes: " + std::to_string(seconds) + "s");
    }

    const std::string bytes1 = read_file(g_scratch / "t1" / "scores.csv");
    const std::string bytes8 = read_file(g_scratch / "t8" / "scores.csv");
    const std::string bytes8b = read_file(g_scratch / "t8b" / "scores.csv");
    if (bytes1.empty()) return fail("scores.csv missing or empty");
    if (bytes1 != bytes8) return fail("1-thread and 8-thread outputs differ");
    if (bytes8 != bytes8b) return fail("repeated 8-thread runs differ");

    // Guard the scale claim: the corpus must really be ~5M tokens.
    const auto records = sbs::parse_csv(bytes1);
    if (records.size() < 2) return fail("scores.csv has no data rows");
    const std::uint64_t tot_words = std::stoull(records[1].fields.back());
    if (tot_words < 4'500'000 || tot_words > 5'500'000)
        return fail("synthetic corpus has " + std::to_string(tot_words) +
                    " tokens, expected ~5M");
    return {};
}

struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
    double limit_seconds;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) {
        g_scratch = argv[1];
    } else {
        g_scratch = std::filesystem::temp_directory_path() /
                    ("sbs_acceptance_" + std::to_string(::getpid()));
    }
    std::filesystem::create_directories(g_scratch);

    const std::vector<Criterion> criteria = {
        {1, "worked-example graph reconstruction", criterion_graph_reconstruction, 1.0},
        {2, "worked-example metrics", criterion_worked_metrics, 1.0},
        {3, "betweenness matches exhaustive enumeration", criterion_betweenness_oracle, 60.0},
        {4, "normalization identities and ranges", criterion_normalization, 600.0},
        {5, "standardization contract", criterion_standardization, 600.0},
        {6, "threshold-sweep stability pair", criterion_threshold_sweep, 300.0},
        {7, "lag-test calibration and power", criterion_granger, 120.0},
        {8, "large-corpus determinism and scale", criterion_scale_determinism, 1900.0},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto started = std::chrono::steady_clock::now();
        std::string error;
        try {
            error = criterion.run();
        } catch (const std::exception& e) {
            error = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (error.empty() && seconds > criterion.limit_seconds) {
            error = "time limit exceeded: " + std::to_string(seconds) + "s > " +
                    std::to_string(criterion.limit_seconds) + "s";
        }
        if (error.empty()) {
            std::printf("[PASS] criterion %d: %s (%.2fs)\n", criterion.id, criterion.name, seconds);
        } else {
            std::printf("[FAIL] criterion %d: %s (%.2fs) -- %s\n", criterion.id, criterion.name,
                        seconds, error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }

    std::error_code ec;
    std::filesystem::remove_all(g_scratch, ec);

    if (failures == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}

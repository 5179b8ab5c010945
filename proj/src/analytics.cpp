#include "sbs/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "sbs/chrono_util.hpp"
#include "sbs/cooc_graph.hpp"
#include "sbs/parallel.hpp"

namespace sbs {

namespace {

// Totally ordered period index for a given granularity.
std::int64_t period_key(std::int64_t unix_seconds, Granularity granularity) {
    std::int64_t days = unix_seconds / 86400;
    if (unix_seconds % 86400 < 0) --days;
    switch (granularity) {
        case Granularity::Day:
            return days;
        case Granularity::Week:
            // Key by the Monday of the ISO week.
            return days - weekday_from_days(days);
        case Granularity::Month: {
            const CivilDate d = civil_from_days(days);
            return static_cast<std::int64_t>(d.year) * 12 + (d.month - 1);
        }
        case Granularity::Quarter: {
            const CivilDate d = civil_from_days(days);
            return static_cast<std::int64_t>(d.year) * 4 + (d.month - 1) / 3;
        }
    }
    return days;
}

std::string label_for_key(std::int64_t key, Granularity granularity) {
    char buf[32];
    switch (granularity) {
        case Granularity::Day: {
            const CivilDate d = civil_from_days(key);
            std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", d.year, d.month, d.day);
            return buf;
        }
        case Granularity::Week: {
            const IsoWeek w = iso_week_from_days(key);
            std::snprintf(buf, sizeof(buf), "%04d-W%02u", w.year, w.week);
            return buf;
        }
        case Granularity::Month: {
            const std::int64_t year = key >= 0 ? key / 12 : (key - 11) / 12;
            const unsigned month = static_cast<unsigned>(key - year * 12) + 1;
            std::snprintf(buf, sizeof(buf), "%04lld-%02u", static_cast<long long>(year), month);
            return buf;
        }
        case Granularity::Quarter: {
            const std::int64_t year = key >= 0 ? key / 4 : (key - 3) / 4;
            const unsigned quarter = static_cast<unsigned>(key - year * 4) + 1;
            std::snprintf(buf, sizeof(buf), "%04lld-Q%u", static_cast<long long>(year), quarter);
            return buf;
        }
    }
    return {};
}

std::int64_t next_key(std::int64_t key, Granularity granularity) {
    if (granularity == Granularity::Week) return key + 7;
    return key + 1;
}

}  // namespace

std::string period_label(std::int64_t unix_seconds, Granularity granularity) {
    return label_for_key(period_key(unix_seconds, granularity), granularity);
}

std::vector<std::pair<std::string, std::vector<TokenizedDocument>>> time_slice(
    const std::vector<TokenizedDocument>& corpus, Granularity granularity) {
    std::vector<std::pair<std::string, std::vector<TokenizedDocument>>> out;
    if (corpus.empty()) return out;

    std::map<std::int64_t, std::vector<TokenizedDocument>> buckets;
    for (const auto& doc : corpus) buckets[period_key(doc.timestamp, granularity)].push_back(doc);

    // Emit every calendar period from first to last, including empty ones.
    const std::int64_t first = buckets.begin()->first;
    const std::int64_t last = buckets.rbegin()->first;
    for (std::int64_t key = first;; key = next_key(key, granularity)) {
        auto it = buckets.find(key);
        out.emplace_back(label_for_key(key, granularity),
                         it == buckets.end() ? std::vector<TokenizedDocument>{} : std::move(it->second));
        if (key >= last) break;
    }
    return out;
}

SeriesTable sbs_trajectory(const std::vector<TokenizedDocument>& corpus,
                           const std::vector<std::string>& brands, Granularity granularity,
                           int window, std::uint64_t min_edge_weight, const SbsOptions& options) {
    if (brands.empty()) throw std::invalid_argument("brand set must be nonempty");
    const auto slices = time_slice(corpus, granularity);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    SeriesTable table;
    table.periods.reserve(slices.size());
    for (const auto& [label, docs] : slices) table.periods.push_back(label);
    for (const auto& brand : brands) {
        for (const char* dim : {"_prevalence", "_diversity", "_connectivity", "_sbs"})
            table.columns[brand + dim].assign(slices.size(), nan);
    }

    // Periods are independent pipeline runs; write only slot p of each column.
    std::vector<std::vector<BrandScores>> per_period(slices.size());
    std::vector<char> prevalence_only(slices.size(), 0);
    parallel_for(slices.size(), options.threads, [&](std::size_t p) {
        const auto& docs = slices[p].second;
        const CoocGraph graph = filter_edges(build_graph(docs, window), min_edge_weight);
        if (graph.node_count() < 3) {
            prevalence_only[p] = 1;
            std::vector<BrandScores> rows;
            rows.reserve(brands.size());
            for (const auto& brand : brands) {
                BrandScores s;
                s.brand = brand;
                const auto [count, rel] = prevalence(docs, brand);
                s.prevalence = count;
                s.prevalence_rel = rel;
                rows.push_back(std::move(s));
            }
            per_period[p] = std::move(rows);
            return;
        }
        SbsOptions per_period_options = options;
        per_period_options.threads = 1;  // parallelism is across periods here
        per_period[p] = score_brands(docs, graph, brands, per_period_options);
    });

    for (std::size_t p = 0; p < slices.size(); ++p) {
        for (std::size_t b = 0; b < brands.size(); ++b) {
            const BrandScores& s = per_period[p][b];
            table.columns[brands[b] + "_prevalence"][p] = static_cast<double>(s.prevalence);
            if (!prevalence_only[p]) {
                table.columns[brands[b] + "_diversity"][p] = static_cast<double>(s.diversity);
                table.columns[brands[b] + "_connectivity"][p] = s.connectivity;
                table.columns[brands[b] + "_sbs"][p] = s.sbs;
            }
        }
    }
    return table;
}

std::vector<int> dense_min_ranks(const std::vector<double>& values) {
    std::vector<int> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int rank = 1;
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[j] > values[i]) ++rank;
        }
        ranks[i] = rank;
    }
    return ranks;
}

SweepReport threshold_sweep(const std::vector<TokenizedDocument>& corpus,
                            const std::vector<std::string>& brands,
                            const std::vector<int>& thresholds, std::uint64_t min_edge_weight,
                            const SbsOptions& options) {
    if (thresholds.empty()) throw std::invalid_argument("threshold list must be nonempty");
    for (const int t : thresholds) {
        if (t < 1) throw std::invalid_argument("thresholds must be >= 1");
    }
    if (brands.empty()) throw std::invalid_argument("brand set must be nonempty");

    SweepReport report;
    report.thresholds = thresholds;
    report.brands = brands;
    report.scores.resize(thresholds.size());
    report.ranks.resize(thresholds.size());

    parallel_for(thresholds.size(), options.threads, [&](std::size_t t) {
        SbsOptions per_run_options = options;
        per_run_options.threads = 1;  // parallelism is across thresholds here
        const CoocGraph graph =
            filter_edges(build_graph(corpus, thresholds[t]), min_edge_weight);
        report.scores[t] = score_brands(corpus, graph, brands, per_run_options);
        std::vector<double> sbs_values;
        sbs_values.reserve(brands.size());
        for (const auto& s : report.scores[t]) sbs_values.push_back(s.sbs);
        report.ranks[t] = dense_min_ranks(sbs_values);
    });

    report.stable = true;
    for (std::size_t t = 1; t < thresholds.size(); ++t) {
        if (report.ranks[t] != report.ranks[0]) {
            report.stable = false;
            break;
        }
    }
    return report;
}

}  // namespace sbs

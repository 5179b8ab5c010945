#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sbs/metrics.hpp"
#include "sbs/text_pipeline.hpp"

namespace sbs {

enum class Granularity { Day, Week, Month, Quarter };

/// Aligned time series: one label per period, all columns the same length.
/// NaN marks a missing value.
struct SeriesTable {
    std::vector<std::string> periods;
    std::map<std::string, std::vector<double>> columns;
};

/// Assign each document to exactly one period by its UTC timestamp (ISO
/// convention for weeks) and return periods in ascending order. Calendar
/// periods between the first and last document are emitted even when empty.
[[nodiscard]] std::vector<std::pair<std::string, std::vector<TokenizedDocument>>> time_slice(
    const std::vector<TokenizedDocument>& corpus, Granularity granularity);

/// Period label for a timestamp, e.g. "2017-07-01", "2017-W26", "2017-07",
/// "2017-Q3".
[[nodiscard]] std::string period_label(std::int64_t unix_seconds, Granularity granularity);

/// Per-period brand scores as aligned series. For every brand, four columns
/// are emitted: "<brand>_prevalence", "<brand>_diversity",
/// "<brand>_connectivity" and "<brand>_sbs". Periods whose graph has fewer
/// than 3 nodes report prevalence only; the other columns are NaN there.
[[nodiscard]] SeriesTable sbs_trajectory(const std::vector<TokenizedDocument>& corpus,
                                         const std::vector<std::string>& brands,
                                         Granularity granularity, int window,
                                         std::uint64_t min_edge_weight = 1,
                                         const SbsOptions& options = {});

/// Result of rerunning the scoring pipeline across co-occurrence windows.
struct SweepReport {
    std::vector<int> thresholds;
    std::vector<std::string> brands;
    /// scores[t] holds the BrandScores for thresholds[t], one per brand.
    std::vector<std::vector<BrandScores>> scores;
    /// ranks[t][b]: rank of brand b at thresholds[t]; descending SBS, ties
    /// share the minimum rank.
    std::vector<std::vector<int>> ranks;
    /// True iff every threshold produced the identical brand ordering.
    bool stable = false;
};

/// Rerun graph construction and scoring for each threshold on the same
/// preprocessed corpus. A single-threshold sweep is bit-identical to a
/// direct pipeline run at that window.
/// Throws std::invalid_argument when thresholds is empty or any threshold < 1.
[[nodiscard]] SweepReport threshold_sweep(const std::vector<TokenizedDocument>& corpus,
                                          const std::vector<std::string>& brands,
                                          const std::vector<int>& thresholds,
                                          std::uint64_t min_edge_weight = 1,
                                          const SbsOptions& options = {});

/// Ranks with ties sharing the minimum rank, by descending value.
[[nodiscard]] std::vector<int> dense_min_ranks(const std::vector<double>& values);

}  // namespace sbs

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sbs/centrality.hpp"
#include "sbs/cooc_graph.hpp"
#include "sbs/text_pipeline.hpp"

namespace sbs {

/// Per-brand, per-period scores. Normalized fields are NaN when undefined
/// (diversity_norm needs n >= 2 nodes, connectivity_norm n >= 3).
struct BrandScores {
    std::string brand;
    std::string period;
    std::uint64_t prevalence = 0;
    double prevalence_rel = 0.0;
    std::uint64_t diversity = 0;
    double diversity_norm = 0.0;
    double connectivity = 0.0;
    double connectivity_norm = 0.0;
    double sbs = 0.0;
    std::optional<double> polarity;  ///< empty when no lexicon coverage
    std::uint64_t n_nodes = 0;
    std::uint64_t tot_words = 0;
};

/// Word -> polarity in [-1, 1].
using PolarityLexicon = std::unordered_map<std::string, double>;

/// Term frequency of a word: (absolute count, count / total corpus tokens).
/// An absent word yields (0, 0.0); an empty corpus yields (0, 0.0).
[[nodiscard]] std::pair<std::uint64_t, double> prevalence(
    const std::vector<TokenizedDocument>& corpus, const std::string& word);

/// Degree of the brand node; divided by n - 1 when normalized.
/// Throws NotFoundError for an unknown word, std::invalid_argument when
/// normalized and the graph has fewer than 2 nodes.
[[nodiscard]] double diversity(const CoocGraph& g, const std::string& word, bool normalized);

/// Betweenness of the brand node; divided by (n-1)(n-2)/2 when normalized.
/// Computes the full betweenness of g; prefer the precomputed overload when
/// scoring several words on one graph.
/// Throws NotFoundError for an unknown word, std::invalid_argument when
/// normalized and the graph has fewer than 3 nodes.
[[nodiscard]] double connectivity(const CoocGraph& g, const std::string& word, bool normalized);
[[nodiscard]] double connectivity(const CoocGraph& g, const std::vector<double>& betweenness,
                                  const std::string& word, bool normalized);

enum class StandardizationPopulation {
    AllNodes,    ///< moments over every node of the graph (default)
    BrandsOnly,  ///< moments over the scored brands only (experimental)
};

struct SbsOptions {
    /// Coefficients for prevalence, diversity, connectivity. Equal weights
    /// is the supported default; other values are exposed but experimental.
    std::array<double, 3> weights = {1.0, 1.0, 1.0};
    StandardizationPopulation population = StandardizationPopulation::AllNodes;
    unsigned threads = 1;
};

/// Raw dimension values for every node of a graph, plus corpus-wide term
/// frequencies (which also cover words absent from the graph).
struct NodeDimensions {
    std::vector<double> prevalence;    ///< per node id
    std::vector<double> diversity;     ///< per node id
    std::vector<double> connectivity;  ///< per node id
    std::unordered_map<std::string, std::uint64_t> term_frequency;
    std::uint64_t tot_words = 0;
};

[[nodiscard]] NodeDimensions node_dimensions(const std::vector<TokenizedDocument>& corpus,
                                             const CoocGraph& g, unsigned threads = 1);

/// Score a set of brand words on a graph built from the same corpus.
///
/// Each dimension is standardized with population moments over all nodes of
/// the graph; a dimension whose standard deviation is zero contributes 0 for
/// every brand. A brand missing from the graph is never dropped: its raw
/// graph dimensions are 0 and its prevalence is counted from the corpus.
/// Throws std::invalid_argument when brands is empty.
[[nodiscard]] std::vector<BrandScores> score_brands(const std::vector<TokenizedDocument>& corpus,
                                                    const CoocGraph& g,
                                                    const std::vector<std::string>& brands,
                                                    const SbsOptions& options = {});

/// As above, with the per-node dimensions already computed.
[[nodiscard]] std::vector<BrandScores> score_brands(const NodeDimensions& dims, const CoocGraph& g,
                                                    const std::vector<std::string>& brands,
                                                    const SbsOptions& options = {});

enum class RescaleMethod {
    MinMax,          ///< affine map to [0, 1]; all-equal input maps to 0.5
    PercentileRank,  ///< mid-rank percentile in (0, 1)
};

/// Rescale a score map. Throws std::invalid_argument when scores is empty.
[[nodiscard]] std::map<std::string, double> rescale(const std::map<std::string, double>& scores,
                                                    RescaleMethod method);

/// Edge-weighted mean lexicon polarity of the brand's neighbors, in [-1, 1].
/// Returns nullopt when no neighbor is covered by the lexicon; a zero result
/// therefore always means balanced sentiment, never missing data.
/// Throws NotFoundError for an unknown brand.
[[nodiscard]] std::optional<double> cooccurrence_polarity(const CoocGraph& g,
                                                          const std::string& brand,
                                                          const PolarityLexicon& lexicon);

struct Association {
    std::string word;
    std::uint64_t weight = 0;
    bool unique = true;  ///< no competitor in the supplied set shares this neighbor
};

/// The brand's strongest associations: neighbors sorted by descending edge
/// weight, ties broken lexicographically, truncated to top_k. Neighbors also
/// adjacent to any word in `competitors` are flagged as not unique.
/// Throws NotFoundError for an unknown brand, std::invalid_argument when
/// top_k < 1.
[[nodiscard]] std::vector<Association> association_profile(
    const CoocGraph& g, const std::string& brand, std::size_t top_k,
    const std::vector<std::string>& competitors = {});

/// Population z-scores of a vector; all zeros when the deviation is zero.
[[nodiscard]] std::vector<double> standardized(const std::vector<double>& values);

}  // namespace sbs

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbs/cooc_graph.hpp"

namespace sbs {

/// Number of distinct neighbors of a node.
/// Throws NotFoundError for an unknown word.
[[nodiscard]] std::size_t degree(const CoocGraph& g, const std::string& word);

/// Sum of the weights of all edges adjacent to a node.
/// Throws NotFoundError for an unknown word.
[[nodiscard]] std::uint64_t weighted_degree(const CoocGraph& g, const std::string& word);

/// Exact betweenness centrality of every node, indexed by node id.
///
/// For node i this is the sum over unordered pairs {j, k} (i excluded) of
/// the fraction of shortest j-k paths passing through i. Shortest paths are
/// unweighted (hop count) on the symmetrized graph; pairs in different
/// components contribute nothing; endpoints never count as intermediaries.
///
/// Single-source accumulation (Brandes) from every node, parallelized over
/// sources. Per-source contributions are reduced in a fixed order, so the
/// result is bit-identical for any thread count.
[[nodiscard]] std::vector<double> betweenness_all(const CoocGraph& g, unsigned threads = 1);

/// Degree, weighted degree and betweenness for every node, computed in one
/// pass over the graph.
struct CentralityReport {
    std::vector<std::size_t> degree;
    std::vector<std::uint64_t> weighted_degree;
    std::vector<double> betweenness;
};

[[nodiscard]] CentralityReport centrality_report(const CoocGraph& g, unsigned threads = 1);

}  // namespace sbs

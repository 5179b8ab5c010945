#pragma once

// Brute-force reference implementations. These stay deliberately naive --
// direct transcriptions of the definitions -- and share no code with the
// library paths they check.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sbs/cooc_graph.hpp"
#include "sbs/text_pipeline.hpp"

namespace testsupport {

using EdgeWeights = std::map<std::pair<std::string, std::string>, std::uint64_t>;

/// Sliding-window arc enumeration: every ordered in-window pair, loops
/// dropped, symmetrized onto sorted string pairs.
EdgeWeights oracle_cooc_edges(const std::vector<sbs::TokenizedDocument>& corpus, int window);

/// Adjacency-list graph for oracle computations.
struct SimpleGraph {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> adj;

    static SimpleGraph from_edge_pairs(std::size_t n,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges);
    static SimpleGraph from_cooc(const sbs::CoocGraph& g);
    bool connected() const;
};

/// Betweenness by exhaustive shortest-path enumeration: for every node pair,
/// all shortest paths are materialized by backtracking over BFS layers and
/// interior nodes are credited path share by path share.
std::vector<double> oracle_betweenness(const SimpleGraph& g);

/// Naive contraction: relabel group members, recount every surviving edge.
EdgeWeights oracle_merge(const EdgeWeights& edges,
                         const std::vector<std::string>& group, const std::string& merged_name);

/// Total in-window ordered non-loop pairs in the corpus (arc conservation).
std::uint64_t oracle_arc_count(const std::vector<sbs::TokenizedDocument>& corpus, int window);

}  // namespace testsupport

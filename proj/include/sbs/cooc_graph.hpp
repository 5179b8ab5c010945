#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sbs/text_pipeline.hpp"

namespace sbs {

/// Undirected weighted word co-occurrence network.
///
/// Nodes are words; an edge's weight counts the directed precedence arcs
/// collapsed into it after symmetrization (arcs a->b plus arcs b->a). The
/// graph is immutable once built and safe to share across threads.
///
/// Invariants: no self loops, every weight >= 1, each unordered pair stored
/// once. Node ids follow first appearance in the corpus, so repeated builds
/// of the same corpus are identical.
class CoocGraph {
public:
    using NodeId = std::uint32_t;

    struct Neighbor {
        NodeId id;
        std::uint64_t weight;
    };

    CoocGraph() = default;

    /// Build directly from words and weighted edges. Unknown edge endpoints
    /// and self loops are rejected with std::invalid_argument.
    [[nodiscard]] static CoocGraph from_edges(
        const std::vector<std::string>& words,
        const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges,
        int window = 0);

    [[nodiscard]] std::size_t node_count() const { return words_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
    [[nodiscard]] int window() const { return window_; }

    [[nodiscard]] const std::string& word(NodeId id) const { return words_[id]; }
    [[nodiscard]] const std::vector<std::string>& words() const { return words_; }
    [[nodiscard]] std::optional<NodeId> find(const std::string& word) const;

    /// id for a word that must exist; throws NotFoundError otherwise.
    [[nodiscard]] NodeId at(const std::string& word) const;

    /// Neighbors of a node, ascending by neighbor id.
    [[nodiscard]] std::span<const Neighbor> neighbors(NodeId id) const {
        return {adjacency_[id].data(), adjacency_[id].size()};
    }

    /// Weight of the unordered pair {a, b}; 0 if no edge.
    [[nodiscard]] std::uint64_t weight(NodeId a, NodeId b) const;
    [[nodiscard]] std::uint64_t weight(const std::string& a, const std::string& b) const;

    /// Sum of all edge weights.
    [[nodiscard]] std::uint64_t total_weight() const { return total_weight_; }

    /// Visit each edge once with a < b.
    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (NodeId a = 0; a < adjacency_.size(); ++a) {
            for (const Neighbor& nb : adjacency_[a]) {
                if (nb.id > a) fn(a, nb.id, nb.weight);
            }
        }
    }

private:
    friend CoocGraph build_graph(const std::vector<TokenizedDocument>&, int, unsigned);
    friend CoocGraph filter_edges(const CoocGraph&, std::uint64_t);
    friend CoocGraph merge_nodes(const CoocGraph&, const std::unordered_set<std::string>&,
                                 const std::string&);

    void finalize(std::unordered_map<std::uint64_t, std::uint64_t>&& pair_weights);

    std::vector<std::string> words_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::size_t edge_count_ = 0;
    std::uint64_t total_weight_ = 0;
    int window_ = 0;
};

/// Build the co-occurrence network: within each document, a directed arc
/// token[p] -> token[q] for every 1 <= q - p <= window; self loops dropped;
/// arcs symmetrized and collapsed into weighted undirected edges. Windows do
/// not cross document boundaries.
///
/// Arc counting over document blocks runs on `threads` workers; counts merge
/// by integer addition, so the graph is identical for any thread count.
/// Throws std::invalid_argument if window < 1.
[[nodiscard]] CoocGraph build_graph(const std::vector<TokenizedDocument>& corpus, int window,
                                    unsigned threads = 1);

/// Drop edges with weight < min_weight. Nodes are retained even when they
/// become isolated, so vocabulary size and per-word scores stay defined.
[[nodiscard]] CoocGraph filter_edges(const CoocGraph& g, std::uint64_t min_weight);

/// Contract a group of nodes into one node named merged_name. Edges from
/// group members to an outside node collapse into one edge with summed
/// weight; edges internal to the group are dropped.
/// Throws std::invalid_argument for an empty group or a merged_name that
/// collides with a node outside the group; NotFoundError for unknown members.
[[nodiscard]] CoocGraph merge_nodes(const CoocGraph& g, const std::unordered_set<std::string>& group,
                                    const std::string& merged_name);

/// Serialize as "word_a<TAB>word_b<TAB>weight" lines (edges sorted
/// lexicographically, word_a < word_b), followed by a "#nodes" section
/// listing degree-0 nodes. UTF-8, LF line endings.
[[nodiscard]] std::string to_edge_list(const CoocGraph& g);

}  // namespace sbs

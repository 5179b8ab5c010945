#include "sbs/cooc_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "sbs/errors.hpp"
#include "sbs/parallel.hpp"

namespace sbs {

namespace {

constexpr std::uint64_t pair_key(CoocGraph::NodeId a, CoocGraph::NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::optional<CoocGraph::NodeId> CoocGraph::find(const std::string& word) const {
    const auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

CoocGraph::NodeId CoocGraph::at(const std::string& word) const {
    const auto it = index_.find(word);
    if (it == index_.end()) throw NotFoundError("unknown word: " + word);
    return it->second;
}

std::uint64_t CoocGraph::weight(NodeId a, NodeId b) const {
    const auto& adj = adjacency_[a];
    const auto it = std::lower_bound(adj.begin(), adj.end(), b,
                                     [](const Neighbor& nb, NodeId id) { return nb.id < id; });
    return it != adj.end() && it->id == b ? it->weight : 0;
}

std::uint64_t CoocGraph::weight(const std::string& a, const std::string& b) const {
    return weight(at(a), at(b));
}

void CoocGraph::finalize(std::unordered_map<std::uint64_t, std::uint64_t>&& pair_weights) {
    adjacency_.assign(words_.size(), {});
    std::vector<std::size_t> degrees(words_.size(), 0);
    for (const auto& [key, w] : pair_weights) {
        ++degrees[key >> 32];
        ++degrees[key & 0xFFFFFFFFu];
    }
    for (std::size_t i = 0; i < words_.size(); ++i) adjacency_[i].reserve(degrees[i]);

    edge_count_ = pair_weights.size();
    total_weight_ = 0;
    for (const auto& [key, w] : pair_weights) {
        const NodeId a = static_cast<NodeId>(key >> 32);
        const NodeId b = static_cast<NodeId>(key & 0xFFFFFFFFu);
        adjacency_[a].push_back({b, w});
        adjacency_[b].push_back({a, w});
        total_weight_ += w;
    }
    for (auto& adj : adjacency_) {
        std::sort(adj.begin(), adj.end(),
                  [](const Neighbor& x, const Neighbor& y) { return x.id < y.id; });
    }
}

CoocGraph CoocGraph::from_edges(
    const std::vector<std::string>& words,
    const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& edges, int window) {
    CoocGraph g;
    g.window_ = window;
    for (const auto& w : words) {
        if (g.index_.emplace(w, static_cast<NodeId>(g.words_.size())).second) g.words_.push_back(w);
    }
    std::unordered_map<std::uint64_t, std::uint64_t> pair_weights;
    for (const auto& [a, b, w] : edges) {
        const auto ia = g.find(a), ib = g.find(b);
        if (!ia || !ib) throw std::invalid_argument("edge endpoint not in node list");
        if (*ia == *ib) throw std::invalid_argument("self loop not allowed: " + a);
        if (w == 0) throw std::invalid_argument("edge weight must be >= 1");
        pair_weights[pair_key(*ia, *ib)] += w;
    }
    g.finalize(std::move(pair_weights));
    return g;
}

CoocGraph build_graph(const std::vector<TokenizedDocument>& corpus, int window, unsigned threads) {
    if (window < 1) throw std::invalid_argument("co-occurrence window must be >= 1");

    CoocGraph g;
    g.window_ = window;
    for (const auto& doc : corpus) {
        for (const auto& tok : doc.tokens) {
            if (g.index_.emplace(tok, static_cast<CoocGraph::NodeId>(g.words_.size())).second)
                g.words_.push_back(tok);
        }
    }

    using PairWeights = std::unordered_map<std::uint64_t, std::uint64_t>;
    auto count_arcs = [&](const TokenizedDocument& doc, PairWeights& weights) {
        thread_local std::vector<CoocGraph::NodeId> ids;
        ids.clear();
        ids.reserve(doc.tokens.size());
        for (const auto& tok : doc.tokens) ids.push_back(g.index_.at(tok));
        const std::size_t len = ids.size();
        for (std::size_t p = 0; p < len; ++p) {
            const std::size_t limit = std::min(len, p + static_cast<std::size_t>(window) + 1);
            for (std::size_t q = p + 1; q < limit; ++q) {
                if (ids[p] == ids[q]) continue;  // loop, dropped at symmetrization
                weights[pair_key(ids[p], ids[q])] += 1;
            }
        }
    };

    PairWeights pair_weights;
    threads = resolve_threads(threads);
    if (threads <= 1 || corpus.size() < 2) {
        for (const auto& doc : corpus) count_arcs(doc, pair_weights);
    } else {
        // Per-block counts merge by integer addition: order-independent.
        constexpr std::size_t kDocsPerBlock = 256;
        const std::size_t block_count = (corpus.size() + kDocsPerBlock - 1) / kDocsPerBlock;
        ordered_block_reduce<PairWeights>(
            block_count, threads,
            [&](std::size_t block) {
                PairWeights local;
                const std::size_t begin = block * kDocsPerBlock;
                const std::size_t end = std::min(corpus.size(), begin + kDocsPerBlock);
                for (std::size_t d = begin; d < end; ++d) count_arcs(corpus[d], local);
                return local;
            },
            [&](std::size_t, PairWeights&& local) {
                for (const auto& [key, w] : local) pair_weights[key] += w;
            });
    }
    g.finalize(std::move(pair_weights));
    return g;
}

CoocGraph filter_edges(const CoocGraph& g, std::uint64_t min_weight) {
    CoocGraph out;
    out.window_ = g.window_;
    out.words_ = g.words_;
    out.index_ = g.index_;
    std::unordered_map<std::uint64_t, std::uint64_t> pair_weights;
    g.for_each_edge([&](CoocGraph::NodeId a, CoocGraph::NodeId b, std::uint64_t w) {
        if (w >= min_weight) pair_weights[pair_key(a, b)] = w;
    });
    out.finalize(std::move(pair_weights));
    return out;
}

CoocGraph merge_nodes(const CoocGraph& g, const std::unordered_set<std::string>& group,
                      const std::string& merged_name) {
    if (group.empty()) throw std::invalid_argument("merge group must be nonempty");
    std::unordered_set<CoocGraph::NodeId> members;
    members.reserve(group.size());
    for (const auto& w : group) members.insert(g.at(w));
    if (const auto existing = g.find(merged_name); existing && !members.count(*existing))
        throw std::invalid_argument("merged name collides with node outside group: " + merged_name);

    // Keep first-appearance order; the merged node takes the slot of the
    // first group member encountered.
    CoocGraph out;
    out.window_ = g.window_;
    std::vector<CoocGraph::NodeId> remap(g.node_count());
    bool merged_placed = false;
    for (CoocGraph::NodeId id = 0; id < g.node_count(); ++id) {
        if (members.count(id)) {
            if (!merged_placed) {
                remap[id] = static_cast<CoocGraph::NodeId>(out.words_.size());
                out.words_.push_back(merged_name);
                out.index_.emplace(merged_name, remap[id]);
                merged_placed = true;
            } else {
                remap[id] = out.index_.at(merged_name);
            }
        } else {
            remap[id] = static_cast<CoocGraph::NodeId>(out.words_.size());
            out.words_.push_back(g.word(id));
            out.index_.emplace(g.word(id), remap[id]);
        }
    }

    std::unordered_map<std::uint64_t, std::uint64_t> pair_weights;
    g.for_each_edge([&](CoocGraph::NodeId a, CoocGraph::NodeId b, std::uint64_t w) {
        const CoocGraph::NodeId ra = remap[a], rb = remap[b];
        if (ra == rb) return;  // intra-group edge becomes a loop, dropped
        pair_weights[pair_key(ra, rb)] += w;
    });
    out.finalize(std::move(pair_weights));
    return out;
}

std::string to_edge_list(const CoocGraph& g) {
    std::vector<std::tuple<const std::string*, const std::string*, std::uint64_t>> rows;
    rows.reserve(g.edge_count());
    g.for_each_edge([&](CoocGraph::NodeId a, CoocGraph::NodeId b, std::uint64_t w) {
        const std::string* wa = &g.word(a);
        const std::string* wb = &g.word(b);
        if (*wb < *wa) std::swap(wa, wb);
        rows.emplace_back(wa, wb, w);
    });
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return std::tie(*std::get<0>(x), *std::get<1>(x)) < std::tie(*std::get<0>(y), *std::get<1>(y));
    });

    std::string out;
    for (const auto& [a, b, w] : rows) {
        out += *a;
        out += '\t';
        out += *b;
        out += '\t';
        out += std::to_string(w);
        out += '\n';
    }

    std::vector<const std::string*> isolated;
    for (CoocGraph::NodeId id = 0; id < g.node_count(); ++id) {
        if (g.neighbors(id).empty()) isolated.push_back(&g.word(id));
    }
    if (!isolated.empty()) {
        std::sort(isolated.begin(), isolated.end(),
                  [](const std::string* x, const std::string* y) { return *x < *y; });
        out += "#nodes\n";
        for (const auto* w : isolated) {
            out += *w;
            out += '\n';
        }
    }
    return out;
}

}  // namespace sbs

#include "sbs/centrality.hpp"

#include <algorithm>
#include <limits>
#include <memory>

#include "sbs/parallel.hpp"

namespace sbs {

std::size_t degree(const CoocGraph& g, const std::string& word) {
    return g.neighbors(g.at(word)).size();
}

std::uint64_t weighted_degree(const CoocGraph& g, const std::string& word) {
    std::uint64_t sum = 0;
    for (const auto& nb : g.neighbors(g.at(word))) sum += nb.weight;
    return sum;
}

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Scratch space for one Brandes sweep, reused across sources.
struct BrandesScratch {
    std::vector<std::uint32_t> dist;
    std::vector<double> sigma;  // shortest-path counts; double avoids overflow
    std::vector<double> delta;
    std::vector<CoocGraph::NodeId> order;  // nodes in BFS visit order

    explicit BrandesScratch(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }

    // Accumulate source s's dependency contributions into bc.
    void accumulate(const CoocGraph& g, CoocGraph::NodeId s, std::vector<double>& bc) {
        std::fill(dist.begin(), dist.end(), kUnreached);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const CoocGraph::NodeId v = order[head];
            for (const auto& nb : g.neighbors(v)) {
                if (dist[nb.id] == kUnreached) {
                    dist[nb.id] = dist[v] + 1;
                    order.push_back(nb.id);
                }
                if (dist[nb.id] == dist[v] + 1) sigma[nb.id] += sigma[v];
            }
        }

        // Dependency accumulation in reverse BFS order; predecessors are the
        // neighbors one BFS layer closer to the source.
        for (std::size_t idx = order.size(); idx-- > 1;) {
            const CoocGraph::NodeId w = order[idx];
            const double coeff = (1.0 + delta[w]) / sigma[w];
            for (const auto& nb : g.neighbors(w)) {
                if (dist[nb.id] + 1 == dist[w]) delta[nb.id] += sigma[nb.id] * coeff;
            }
            bc[w] += delta[w];
        }
    }
};

}  // namespace

std::vector<double> betweenness_all(const CoocGraph& g, unsigned threads) {
    const std::size_t n = g.node_count();
    std::vector<double> bc(n, 0.0);
    if (n == 0) return bc;

    // Fixed block size keeps the reduction order independent of thread count.
    constexpr std::size_t kBlock = 64;
    const std::size_t block_count = (n + kBlock - 1) / kBlock;

    ordered_block_reduce<std::vector<double>>(
        block_count, threads,
        [&](std::size_t block) {
            thread_local std::unique_ptr<BrandesScratch> scratch;
            if (!scratch || scratch->dist.size() != n) scratch = std::make_unique<BrandesScratch>(n);
            std::vector<double> partial(n, 0.0);
            const std::size_t begin = block * kBlock;
            const std::size_t end = std::min(n, begin + kBlock);
            for (std::size_t s = begin; s < end; ++s)
                scratch->accumulate(g, static_cast<CoocGraph::NodeId>(s), partial);
            return partial;
        },
        [&](std::size_t, std::vector<double>&& partial) {
            for (std::size_t i = 0; i < n; ++i) bc[i] += partial[i];
        });

    // Each undirected pair was visited from both endpoints.
    for (double& v : bc) v *= 0.5;
    return bc;
}

CentralityReport centrality_report(const CoocGraph& g, unsigned threads) {
    CentralityReport report;
    const std::size_t n = g.node_count();
    report.degree.resize(n);
    report.weighted_degree.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto nbs = g.neighbors(static_cast<CoocGraph::NodeId>(i));
        report.degree[i] = nbs.size();
        std::uint64_t sum = 0;
        for (const auto& nb : nbs) sum += nb.weight;
        report.weighted_degree[i] = sum;
    }
    report.betweenness = betweenness_all(g, threads);
    return report;
}

}  // namespace sbs

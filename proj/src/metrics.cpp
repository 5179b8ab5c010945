#include "sbs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "sbs/errors.hpp"
#include "sbs/stats.hpp"

namespace sbs {

std::pair<std::uint64_t, double> prevalence(const std::vector<TokenizedDocument>& corpus,
                                            const std::string& word) {
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    for (const auto& doc : corpus) {
        total += doc.tokens.size();
        for (const auto& tok : doc.tokens) {
            if (tok == word) ++count;
        }
    }
    return {count, total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total)};
}

double diversity(const CoocGraph& g, const std::string& word, bool normalized) {
    const auto deg = static_cast<double>(degree(g, word));
    if (!normalized) return deg;
    if (g.node_count() < 2)
        throw std::invalid_argument("normalized diversity needs at least 2 nodes");
    return deg / static_cast<double>(g.node_count() - 1);
}

double connectivity(const CoocGraph& g, const std::vector<double>& betweenness,
                    const std::string& word, bool normalized) {
    const double value = betweenness[g.at(word)];
    if (!normalized) return value;
    const double n = static_cast<double>(g.node_count());
    if (g.node_count() < 3)
        throw std::invalid_argument("normalized connectivity needs at least 3 nodes");
    return value / ((n - 1.0) * (n - 2.0) / 2.0);
}

double connectivity(const CoocGraph& g, const std::string& word, bool normalized) {
    return connectivity(g, betweenness_all(g), word, normalized);
}

std::vector<double> standardized(const std::vector<double>& values) {
    const auto m = stats::population_moments(values);
    std::vector<double> z(values.size(), 0.0);
    if (m.stddev == 0.0) return z;
    for (std::size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - m.mean) / m.stddev;
    return z;
}

NodeDimensions node_dimensions(const std::vector<TokenizedDocument>& corpus, const CoocGraph& g,
                               unsigned threads) {
    NodeDimensions dims;
    const std::size_t n = g.node_count();
    for (const auto& doc : corpus) {
        dims.tot_words += doc.tokens.size();
        for (const auto& tok : doc.tokens) dims.term_frequency[tok] += 1;
    }
    dims.prevalence.assign(n, 0.0);
    dims.diversity.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = dims.term_frequency.find(g.word(static_cast<CoocGraph::NodeId>(i)));
        if (it != dims.term_frequency.end()) dims.prevalence[i] = static_cast<double>(it->second);
        dims.diversity[i] = static_cast<double>(g.neighbors(static_cast<CoocGraph::NodeId>(i)).size());
    }
    dims.connectivity = betweenness_all(g, threads);
    return dims;
}

std::vector<BrandScores> score_brands(const std::vector<TokenizedDocument>& corpus,
                                      const CoocGraph& g, const std::vector<std::string>& brands,
                                      const SbsOptions& options) {
    return score_brands(node_dimensions(corpus, g, options.threads), g, brands, options);
}

std::vector<BrandScores> score_brands(const NodeDimensions& dims, const CoocGraph& g,
                                      const std::vector<std::string>& brands,
                                      const SbsOptions& options) {
    if (brands.empty()) throw std::invalid_argument("brand set must be nonempty");

    const std::size_t n = g.node_count();

    // Standardization moments. The population is every node of the graph by
    // default; a dimension with zero deviation contributes 0 for everyone.
    const std::array<const std::vector<double>*, 3> dim_values = {&dims.prevalence, &dims.diversity,
                                                                  &dims.connectivity};
    std::array<stats::Moments, 3> moments{};
    if (options.population == StandardizationPopulation::AllNodes) {
        for (std::size_t d = 0; d < 3; ++d) moments[d] = stats::population_moments(*dim_values[d]);
    } else {
        for (std::size_t d = 0; d < 3; ++d) {
            std::vector<double> subset;
            subset.reserve(brands.size());
            for (const auto& brand : brands) {
                const auto id = g.find(brand);
                if (d == 0) {
                    const auto it = dims.term_frequency.find(brand);
                    subset.push_back(it == dims.term_frequency.end()
                                         ? 0.0
                                         : static_cast<double>(it->second));
                } else {
                    subset.push_back(id ? (*dim_values[d])[*id] : 0.0);
                }
            }
            moments[d] = stats::population_moments(subset);
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<BrandScores> out;
    out.reserve(brands.size());
    for (const auto& brand : brands) {
        BrandScores s;
        s.brand = brand;
        s.n_nodes = n;
        s.tot_words = dims.tot_words;

        const auto tf = dims.term_frequency.find(brand);
        s.prevalence = tf == dims.term_frequency.end() ? 0 : tf->second;
        s.prevalence_rel = dims.tot_words == 0 ? 0.0
                                               : static_cast<double>(s.prevalence) /
                                                     static_cast<double>(dims.tot_words);

        const auto id = g.find(brand);
        double raw_div = 0.0, raw_con = 0.0;
        if (id) {
            raw_div = dims.diversity[*id];
            raw_con = dims.connectivity[*id];
        }
        s.diversity = static_cast<std::uint64_t>(raw_div);
        s.connectivity = raw_con;
        s.diversity_norm = n >= 2 ? raw_div / static_cast<double>(n - 1) : nan;
        s.connectivity_norm =
            n >= 3 ? raw_con / (static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0) : nan;

        const std::array<double, 3> raw = {static_cast<double>(s.prevalence), raw_div, raw_con};
        double score = 0.0;
        for (std::size_t d = 0; d < 3; ++d) {
            if (moments[d].stddev > 0.0)
                score += options.weights[d] * (raw[d] - moments[d].mean) / moments[d].stddev;
        }
        s.sbs = score;
        out.push_back(std::move(s));
    }
    return out;
}

std::map<std::string, double> rescale(const std::map<std::string, double>& scores,
                                      RescaleMethod method) {
    if (scores.empty()) throw std::invalid_argument("rescale needs a nonempty score map");
    std::map<std::string, double> out;
    if (method == RescaleMethod::MinMax) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& [k, v] : scores) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        for (const auto& [k, v] : scores)
            out[k] = hi == lo ? 0.5 : (v - lo) / (hi - lo);
        return out;
    }
    // Mid-rank percentile: (count below + half the ties) / N, always in (0, 1).
    std::vector<double> sorted;
    sorted.reserve(scores.size());
    for (const auto& [k, v] : scores) sorted.push_back(v);
    std::sort(sorted.begin(), sorted.end());
    const double count = static_cast<double>(sorted.size());
    for (const auto& [k, v] : scores) {
        const auto below = std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
        const auto upper = std::upper_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
        const double equal = static_cast<double>(upper - below);
        out[k] = (static_cast<double>(below) + 0.5 * equal) / count;
    }
    return out;
}

std::optional<double> cooccurrence_polarity(const CoocGraph& g, const std::string& brand,
                                            const PolarityLexicon& lexicon) {
    double weighted_sum = 0.0;
    double weight_total = 0.0;
    for (const auto& nb : g.neighbors(g.at(brand))) {
        const auto it = lexicon.find(g.word(nb.id));
        if (it == lexicon.end()) continue;
        weighted_sum += static_cast<double>(nb.weight) * it->second;
        weight_total += static_cast<double>(nb.weight);
    }
    if (weight_total == 0.0) return std::nullopt;
    return weighted_sum / weight_total;
}

std::vector<Association> association_profile(const CoocGraph& g, const std::string& brand,
                                             std::size_t top_k,
                                             const std::vector<std::string>& competitors) {
    if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
    const auto id = g.at(brand);

    std::unordered_set<CoocGraph::NodeId> shared;
    for (const auto& competitor : competitors) {
        if (competitor == brand) continue;
        const auto cid = g.find(competitor);
        if (!cid) continue;
        for (const auto& nb : g.neighbors(*cid)) shared.insert(nb.id);
    }

    std::vector<Association> out;
    for (const auto& nb : g.neighbors(id)) {
        out.push_back({g.word(nb.id), nb.weight, shared.count(nb.id) == 0});
    }
    std::sort(out.begin(), out.end(), [](const Association& a, const Association& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.word < b.word;
    });
    if (out.size() > top_k) out.resize(top_k);
    return out;
}

}  // namespace sbs

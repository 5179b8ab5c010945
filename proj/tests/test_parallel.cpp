#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sbs/parallel.hpp"

TEST_SUITE("parallel") {

TEST_CASE("parallel_for covers every index exactly once") {
    for (const unsigned threads : {1u, 2u, 5u}) {
        std::vector<std::atomic<int>> hits(257);
        sbs::parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("parallel_for propagates the first exception") {
    CHECK_THROWS_AS(sbs::parallel_for(100, 4,
                                      [&](std::size_t i) {
                                          if (i == 37) throw std::runtime_error("boom");
                                      }),
                    std::runtime_error);
}

TEST_CASE("ordered_block_reduce merges strictly in block order") {
    for (const unsigned threads : {1u, 3u, 8u}) {
        std::vector<std::size_t> merged;
        sbs::ordered_block_reduce<std::size_t>(
            64, threads, [](std::size_t block) { return block * block; },
            [&](std::size_t block, std::size_t&& value) {
                CHECK(value == block * block);
                merged.push_back(block);
            });
        REQUIRE(merged.size() == 64);
        for (std::size_t b = 0; b < merged.size(); ++b) CHECK(merged[b] == b);
    }
}

TEST_CASE("ordered_block_reduce survives a throwing mapper") {
    CHECK_THROWS_AS(sbs::ordered_block_reduce<int>(
                        40, 4,
                        [](std::size_t block) {
                            if (block == 11) throw std::runtime_error("bad block");
                            return static_cast<int>(block);
                        },
                        [](std::size_t, int&&) {}),
                    std::runtime_error);
}

TEST_CASE("floating-point accumulation is identical across thread counts") {
    // Sum many irrational-ish values per block; any reordering would show.
    auto run = [](unsigned threads) {
        double total = 0.0;
        sbs::ordered_block_reduce<double>(
            100, threads,
            [](std::size_t block) {
                double s = 0.0;
                for (int i = 0; i < 1000; ++i)
                    s += 1.0 / (1.0 + static_cast<double>(block) * 1000.0 + i);
                return s;
            },
            [&](std::size_t, double&& value) { total += value; });
        return total;
    };
    const double serial = run(1);
    CHECK(run(2) == serial);
    CHECK(run(8) == serial);
}

}  // TEST_SUITE

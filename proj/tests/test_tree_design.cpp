#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "neon/design_io.hpp"
#include "neon/neon_design.hpp"
#include "neon/noisy_design.hpp"
#include "neon/oracle.hpp"
#include "neon/params.hpp"
#include "neon/split_design.hpp"
#include "neon/tree.hpp"

using namespace neon;

TEST_CASE("node_children") {
    const auto [l, r] = node_children(NodeId{0, 0}, 4);
    CHECK(l == NodeId{1, 0});
    CHECK(r == NodeId{1, 1});

    const auto [l2, r2] = node_children(NodeId{2, 3}, 4); // N = 16
    CHECK(l2 == NodeId{3, 6});
    CHECK(r2 == NodeId{3, 7});

    CHECK_THROWS(node_children(NodeId{4, 5}, 4)); // leaf
}

TEST_CASE("node coverage arithmetic") {
    CHECK(ancestor_index(13, 2, 4) == 3);
    const auto [lo, hi] = item_range(NodeId{2, 3}, 4);
    CHECK(lo == 12);
    CHECK(hi == 16);
    // leaf node is exactly its item
    const auto [a, b2] = item_range(NodeId{4, 9}, 4);
    CHECK(a == 9);
    CHECK(b2 == 10);
}

TEST_CASE("build_split_design") {
    SUBCASE("N=16, t=2, zeta=2: 4 tests per level over levels 2..4") {
        const auto d = build_split_design(16, 2, 2.0, 1, split_start_level(2), 4, 99);
        CHECK(d.tests_per_level == 4);
        CHECK(d.start_level == 2);
        CHECK(d.levels() == 3);
        CHECK(d.total_tests() == 12);
    }

    SUBCASE("every node assigned exactly one in-range test per (level, rep)") {
        const auto d = build_split_design(64, 4, 3.0, 3, split_start_level(4), 6, 7);
        for (std::uint32_t level = d.start_level; level <= d.end_level; ++level) {
            const std::uint64_t nodes = std::uint64_t{1} << level;
            for (std::uint32_t rep = 0; rep < d.reps; ++rep) {
                const auto& bank = d.bank(level, rep);
                REQUIRE(bank.size() == nodes);
                for (std::uint64_t v = 0; v < nodes; ++v) CHECK(bank[v] < d.tests_per_level);
            }
        }
        CHECK(d.total_tests() == 3ull * 12 * 4); // reps * tpl * levels
    }

    SUBCASE("repetition banks partition the nodes into tests") {
        const auto d = build_split_design(512, 3, 3.0, 3, split_start_level(3), 9, 21);
        for (std::uint32_t level = d.start_level; level <= d.end_level; ++level)
            for (std::uint32_t rep = 0; rep < d.reps; ++rep) {
                const auto& bank = d.bank(level, rep);
                std::vector<std::set<std::uint64_t>> tests(d.tests_per_level);
                for (std::uint64_t v = 0; v < bank.size(); ++v) tests[bank[v]].insert(v);
                std::size_t covered = 0;
                for (const auto& t : tests) covered += t.size();
                CHECK(covered == bank.size()); // each node in exactly one test
            }
    }

    SUBCASE("same seed, same assignment") {
        const auto a = build_split_design(256, 4, 2.5, 2, 3, 8, 1234);
        const auto b = build_split_design(256, 4, 2.5, 2, 3, 8, 1234);
        CHECK(a.assignment == b.assignment);
        const auto c = build_split_design(256, 4, 2.5, 2, 3, 8, 1235);
        CHECK(a.assignment != c.assignment);
    }

    SUBCASE("rejections") {
        CHECK_THROWS(build_split_design(100, 2, 2.0, 1, 2, 6, 0));  // not pow2
        CHECK_THROWS(build_split_design(64, 2, 2.0, 1, 5, 3, 0));   // bad range
        CHECK_THROWS(build_split_design(64, 2, 2.0, 1, 2, 7, 0));   // past leaf
        CHECK_THROWS(build_split_design(64, 2, 2.0, 0, 2, 6, 0));   // reps = 0
    }
}

namespace {

SchemeParams empirical_params(std::uint64_t n, std::uint64_t k, std::uint32_t c, double zeta,
                              double lambda) {
    NoiselessOverrides ov;
    ov.zeta = zeta;
    ov.lambda = lambda;
    return derive_noiseless_params(n, k, c, 1, 0.1, 1.0, 0.0, ov);
}

} // namespace

TEST_CASE("build_neon_design") {
    SUBCASE("N=2^10, K=16, lambda=40, C=6: 160 blocks, every item in exactly 6") {
        const auto p = empirical_params(1 << 10, 16, 6, 16.0, 40.0);
        CHECK(p.blocks == 160);
        const auto d = build_neon_design(p, 5);
        for (std::uint64_t item = 0; item < p.n_items; ++item) {
            const auto blocks = d.circled_blocks(item);
            CHECK(blocks.size() == 6);
            for (std::size_t j = 1; j < blocks.size(); ++j) CHECK(blocks[j] > blocks[j - 1]);
            for (std::uint32_t bid : blocks) CHECK(bid < p.blocks);
        }
    }

    SUBCASE("M = blocks * block rows, structurally") {
        const auto p = empirical_params(1 << 10, 16, 6, 16.0, 40.0);
        const auto d = build_neon_design(p, 5);
        CHECK(d.total_tests() == p.blocks * d.block_rows());
        // B spans levels floor(log2 k)+1 .. log2 N with ceil(zeta k) tests each
        CHECK(d.block_rows() == 64ull * (10 - 2));
    }

    SUBCASE("C = L degenerates to plain repetition") {
        NoiselessOverrides ov;
        ov.zeta = 4.0;
        ov.lambda = 3.0; // blocks = ceil(3*4/2) = 6
        auto p = derive_noiseless_params(1 << 6, 4, 6, 1, 0.1, 1.0, 0.0, ov);
        REQUIRE(p.blocks == 6);
        const auto d = build_neon_design(p, 17);
        for (std::uint64_t item = 0; item < p.n_items; ++item)
            for (std::uint64_t block = 0; block < p.blocks; ++block)
                CHECK(d.is_circled(item, block));
    }

    SUBCASE("blocks < circles rejected") {
        NoiselessOverrides ov;
        ov.zeta = 4.0;
        ov.lambda = 1.0;
        auto p = derive_noiseless_params(1 << 6, 4, 6, 1, 0.1, 1.0, 0.0, ov);
        REQUIRE(p.blocks < p.circles);
        CHECK_THROWS(build_neon_design(p, 1));
    }

    SUBCASE("shared vs independent locals") {
        const auto p = empirical_params(1 << 8, 8, 4, 8.0, 20.0);
        const auto shared = build_neon_design(p, 7, true);
        CHECK(shared.locals.size() == 1);
        const auto indep = build_neon_design(p, 7, false);
        CHECK(indep.locals.size() == p.blocks);
        CHECK(indep.local(0).assignment != indep.local(1).assignment);
        CHECK(indep.local(0).total_tests() == indep.local(1).total_tests());
    }

    SUBCASE("circling uniformity: inclusion frequency C/L = 0.25 +- 0.02") {
        NoiselessOverrides ov;
        ov.zeta = 2.0;
        ov.lambda = 10.0; // blocks = ceil(10*16/4) = 40... want L=20: lambda=5
        ov.lambda = 5.0;
        auto p = derive_noiseless_params(1 << 6, 16, 5, 1, 0.1, 1.0, 0.0, ov);
        REQUIRE(p.blocks == 20);
        REQUIRE(p.circles == 5);
        // 64 items x 160 designs > 10^4 circling draws
        std::vector<std::uint64_t> per_block(p.blocks, 0);
        std::uint64_t draws = 0;
        for (std::uint64_t s = 0; s < 160; ++s) {
            const auto d = build_neon_design(p, 1000 + s);
            for (std::uint64_t item = 0; item < p.n_items; ++item, ++draws)
                for (std::uint32_t bid : d.circled_blocks(item)) ++per_block[bid];
        }
        REQUIRE(draws >= 10000);
        for (std::uint64_t bid = 0; bid < p.blocks; ++bid) {
            const double freq = static_cast<double>(per_block[bid]) / draws;
            CHECK(freq == doctest::Approx(0.25).epsilon(0.08)); // 0.25 +- 0.02
        }
    }
}

TEST_CASE("build_noisy_design") {
    SUBCASE("M formula: N=2^10, K=16, zeta=4, C'=3, eps=0.5 -> 1536") {
        const auto p = derive_noisy_params(NoisyMode::bsc, 1 << 10, 16, 4.0, 3, 0.5, 0.0, 0.0);
        CHECK(p.extra_levels == 2);
        const auto d = build_noisy_design(p, 3);
        CHECK(d.total_tests() == 1536);
        // exact closed form zeta C' K (log2(N/K) + r')
        CHECK(d.total_tests() == 4ull * 3 * 16 * (6 + 2));
    }

    SUBCASE("BAC extra levels from C'' ln K") {
        NoisyOverrides ov;
        ov.subtree_depth = 2;
        const auto p =
            derive_noisy_params(NoisyMode::bac, 1 << 10, 16, 4.0, 3, 0.5, 0.01, 0.01, 2.0, ov);
        const auto d = build_noisy_design(p, 3);
        CHECK(p.extra_levels == 6);
        CHECK(d.total_tests() == 4ull * 3 * 16 * (6 + 6));
    }

    SUBCASE("chain slots stay within their banks") {
        const auto p = derive_noisy_params(NoisyMode::bsc, 1 << 8, 8, 3.0, 4, 0.5, 0.0, 0.0);
        const auto d = build_noisy_design(p, 11);
        for (std::uint32_t e = 0; e < p.extra_levels; ++e)
            for (std::uint32_t rep = 0; rep < p.reps; ++rep)
                for (std::uint64_t item = 0; item < p.n_items; ++item) {
                    const auto t = d.chain_global_test(e, rep, item);
                    const auto base = d.branch_tests() +
                                      (static_cast<std::uint64_t>(e) * p.reps + rep) *
                                          d.bank_size();
                    CHECK(t >= base);
                    CHECK(t < base + d.bank_size());
                }
    }
}

TEST_CASE("materialize_matrix column weights") {
    SUBCASE("NEON: exactly C * levels ones per column") {
        const auto p = empirical_params(1 << 6, 4, 3, 4.0, 6.0);
        const auto d = build_neon_design(p, 13);
        const auto a = oracle::materialize_matrix(d);
        const std::uint64_t levels = d.local(0).levels();
        for (std::uint64_t item = 0; item < p.n_items; ++item)
            CHECK(a.column_weight(item) == p.circles * levels);
    }

    SUBCASE("noisy: exactly C' * (log2(N/K) + r') ones per column") {
        const auto p = derive_noisy_params(NoisyMode::bsc, 1 << 6, 4, 3.0, 3, 0.5, 0.0, 0.0);
        const auto d = build_noisy_design(p, 13);
        const auto a = oracle::materialize_matrix(d);
        const std::uint64_t chains = 4 + p.extra_levels; // log2(64/4) = 4
        for (std::uint64_t item = 0; item < p.n_items; ++item)
            CHECK(a.column_weight(item) == p.reps * chains);
    }

    SUBCASE("size guard") {
        const auto p = empirical_params(1 << 12, 16, 6, 16.0, 40.0);
        const auto d = build_neon_design(p, 1);
        CHECK_THROWS(oracle::materialize_matrix(d, 1 << 20));
    }
}

TEST_CASE("design serialization round-trips bit-exactly") {
    SUBCASE("neon") {
        const auto p = empirical_params(1 << 8, 8, 4, 8.0, 20.0);
        const auto d = build_neon_design(p, 99, false);
        const auto doc = to_json(d);
        const auto d2 = neon_design_from_json(nlohmann::json::parse(doc.dump()));
        CHECK(to_json(d2).dump() == doc.dump());
        CHECK(d2.circling == d.circling);
        CHECK(d2.locals.size() == d.locals.size());
        for (std::size_t i = 0; i < d.locals.size(); ++i)
            CHECK(d2.locals[i].assignment == d.locals[i].assignment);
    }

    SUBCASE("noisy") {
        const auto p = derive_noisy_params(NoisyMode::bsc, 1 << 8, 8, 3.0, 4, 0.5, 0.0, 0.0);
        const auto d = build_noisy_design(p, 5);
        const auto doc = to_json(d);
        const auto d2 = noisy_design_from_json(nlohmann::json::parse(doc.dump()));
        CHECK(to_json(d2).dump() == doc.dump());
        CHECK(d2.branch.assignment == d.branch.assignment);
        CHECK(d2.chain == d.chain);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "neon/channel.hpp"
#include "neon/oracle.hpp"
#include "neon/rng.hpp"

using namespace neon;

namespace {

SchemeParams small_neon_params(std::uint64_t n, std::uint64_t k) {
    NoiselessOverrides ov;
    ov.zeta = 4.0;
    ov.lambda = 8.0;
    return derive_noiseless_params(n, k, 3, 1, 0.1, 1.0, 0.0, ov);
}

} // namespace

TEST_CASE("OutcomeVector basics") {
    OutcomeVector y(130);
    y.set(0);
    y.set(64);
    y.set(129);
    CHECK(y.count_ones() == 3);
    CHECK(y.get(64));
    CHECK_FALSE(y.get(63));

    const auto s = y.slice(60, 10);
    CHECK(s.size() == 10);
    CHECK(s.get(4)); // bit 64
    CHECK(s.count_ones() == 1);

    OutcomeVector z(130);
    z.set(1);
    CHECK_FALSE(z.is_subset_of(y));
    z = y;
    z.set(1);
    CHECK(y.is_subset_of(z));

    std::stringstream ss;
    y.serialize(ss);
    const auto back = OutcomeVector::deserialize(ss);
    CHECK(back == y);
    CHECK(back.hex_digest() == y.hex_digest());
    CHECK(back.hex_digest().size() == 16);
    CHECK(z.hex_digest() != y.hex_digest());
}

TEST_CASE("encode") {
    SUBCASE("no defectives -> all-zero vector") {
        const auto d = build_neon_design(small_neon_params(64, 4), 2);
        const auto y = encode(d, {});
        CHECK(y.count_ones() == 0);
        const auto p = derive_noisy_params(NoisyMode::bsc, 64, 4, 3.0, 2, 0.5, 0.0, 0.0);
        const auto nd = build_noisy_design(p, 2);
        CHECK(encode(nd, {}).count_ones() == 0);
    }

    SUBCASE("single defective in a noisy design: exactly C'(log2(N/K) + r') ones") {
        const auto p = derive_noisy_params(NoisyMode::bsc, 1 << 8, 8, 3.0, 4, 0.5, 0.0, 0.0);
        const auto d = build_noisy_design(p, 9);
        for (std::uint64_t item : {std::uint64_t{0}, std::uint64_t{77}, std::uint64_t{255}}) {
            const std::uint64_t ids[] = {item};
            const auto y = encode(d, ids);
            CHECK(y.count_ones() == p.reps * (5 + p.extra_levels)); // log2(256/8) = 5
        }
    }

    SUBCASE("N=16, defectives {3, 14}: both root-to-leaf chains fully positive") {
        const auto p = derive_noisy_params(NoisyMode::bsc, 16, 2, 4.0, 1, 0.5, 0.0, 0.0);
        const auto d = build_noisy_design(p, 31);
        const std::uint64_t ids[] = {3, 14};
        const auto y = encode(d, ids);
        for (std::uint64_t item : ids) {
            for (std::uint32_t level = d.branch.start_level; level <= 4; ++level) {
                const auto node = ancestor_index(item, level, 4);
                CHECK(y.get(d.branch.global_test(level, 0, node)));
            }
            for (std::uint32_t e = 0; e < p.extra_levels; ++e)
                CHECK(y.get(d.chain_global_test(e, 0, item)));
        }
    }

    SUBCASE("monotone and OR-linear") {
        const auto d = build_neon_design(small_neon_params(64, 4), 5);
        Rng rng(77);
        for (int trial = 0; trial < 20; ++trial) {
            auto s_big = sample_without_replacement(rng, 64, 4);
            std::vector<std::uint64_t> s_small(s_big.begin(), s_big.begin() + 2);
            const auto y_small = encode(d, s_small);
            const auto y_big = encode(d, s_big);
            CHECK(y_small.is_subset_of(y_big));

            OutcomeVector ored(d.total_tests());
            for (std::uint64_t item : s_big) {
                const std::uint64_t one[] = {item};
                ored |= encode(d, one);
            }
            CHECK(ored == y_big);
        }
    }

    SUBCASE("id out of range always throws; overweight only in strict mode") {
        const auto d = build_neon_design(small_neon_params(64, 4), 5);
        const std::uint64_t bad[] = {64};
        CHECK_THROWS(encode(d, bad));
        const std::uint64_t heavy[] = {1, 2, 3, 4, 5};
        CHECK_NOTHROW(encode(d, heavy));
        CHECK_THROWS(encode(d, heavy, true));
    }
}

TEST_CASE("sparse encode equals the dense OR oracle") {
    Rng rng(4242);
    for (int i = 0; i < 50; ++i) {
        const auto d = build_neon_design(small_neon_params(64, 4), 9000 + i);
        const auto a = oracle::materialize_matrix(d);
        const auto truth = sample_without_replacement(rng, 64, 1 + rng.bounded(4));
        CHECK(encode(d, truth) == oracle::dense_or_encode(a, truth));
    }
    for (int i = 0; i < 50; ++i) {
        const auto p = derive_noisy_params(NoisyMode::bsc, 64, 4, 3.0, 3, 0.5, 0.0, 0.0);
        const auto d = build_noisy_design(p, 500 + i);
        const auto a = oracle::materialize_matrix(d);
        const auto truth = sample_without_replacement(rng, 64, 1 + rng.bounded(4));
        CHECK(encode(d, truth) == oracle::dense_or_encode(a, truth));
    }
}

TEST_CASE("apply_channel") {
    SUBCASE("noiseless and zero-rate specs are the identity") {
        OutcomeVector y(1000);
        for (std::size_t i = 0; i < y.size(); i += 7) y.set(i);
        CHECK(apply_channel(y, ChannelSpec::noiseless(), 1) == y);
        CHECK(apply_channel(y, ChannelSpec::bac(0.0, 0.0), 99) == y);
    }

    SUBCASE("FPC flip count on 1e5 zero bits stays within 3 sigma of 3125") {
        OutcomeVector zeros(100000);
        const auto out = apply_channel(zeros, ChannelSpec::fpc(1.0 / 32.0), 2024);
        const double sigma = std::sqrt(100000.0 * (1.0 / 32.0) * (31.0 / 32.0));
        CHECK(std::abs(static_cast<double>(out.count_ones()) - 3125.0) <= 3.0 * sigma);
    }

    SUBCASE("BSC on all-ones flips each bit with probability rho") {
        OutcomeVector ones(100000);
        for (std::size_t i = 0; i < ones.size(); ++i) ones.set(i);
        const double rho = 0.1;
        const auto out = apply_channel(ones, ChannelSpec::bsc(rho), 7);
        const double flips = 100000.0 - static_cast<double>(out.count_ones());
        const double sigma = std::sqrt(100000.0 * rho * (1.0 - rho));
        CHECK(std::abs(flips - 10000.0) <= 3.0 * sigma);
    }

    SUBCASE("deterministic given (y, spec, seed); sensitive to seed") {
        OutcomeVector y(5000);
        for (std::size_t i = 0; i < y.size(); i += 3) y.set(i);
        const auto spec = ChannelSpec::bac(0.05, 0.2);
        CHECK(apply_channel(y, spec, 11) == apply_channel(y, spec, 11));
        CHECK(apply_channel(y, spec, 11) != apply_channel(y, spec, 12));
    }

    SUBCASE("serial and parallel paths agree bit-exactly") {
        OutcomeVector y(100001);
        for (std::size_t i = 0; i < y.size(); i += 5) y.set(i);
        const auto spec = ChannelSpec::bsc(0.25);
        CHECK(apply_channel(y, spec, 3, Exec::serial) ==
              apply_channel(y, spec, 3, Exec::parallel));
    }

    SUBCASE("spec shapes are enforced") {
        CHECK_THROWS(ChannelSpec{ChannelKind::noiseless, 0.1, 0.0}.validate());
        CHECK_THROWS(ChannelSpec{ChannelKind::fpc, 0.1, 0.1}.validate());
        CHECK_THROWS(ChannelSpec{ChannelKind::fnc, 0.1, 0.1}.validate());
        CHECK_THROWS(ChannelSpec{ChannelKind::bsc, 0.1, 0.2}.validate());
        CHECK_THROWS(ChannelSpec::bac(0.5, 0.1).validate()); // rate >= 1/2
        CHECK_NOTHROW(ChannelSpec::fnc(0.2).validate());
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwqram/pipeline.hpp"
#include "qwqram/sampling.hpp"
#include "test_support.hpp"

using namespace qwqram;
using namespace qwqram::testing;

TEST_CASE("route delivers the bucket to the addressed leaves") {
    SUBCASE("worked example") {
        const SparseState routed = route(make_initial_state(kFigShape, AddressSuperposition::uniform(kFigAddresses)));
        CHECK(approx_equal(routed, fig_routing_state(3)));
    }
    SUBCASE("all-zero address goes left") {
        const TreeShape shape(1, 1);
        const SparseState routed = route(make_initial_state(shape, AddressSuperposition::uniform({0})));
        REQUIRE(routed.size() == 1);
        CHECK(routed.entries()[0].first == basis(0, 1, 0, 0, 0));
    }
    SUBCASE("random single addresses at n = 4") {
        Rng rng(101);
        const TreeShape shape(4, 2);
        for (int trial = 0; trial < 64; ++trial) {
            const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, 15)(rng);
            const SparseState routed = route(make_initial_state(shape, AddressSuperposition::uniform({a})));
            const auto expected = routing_oracle(a, 4, 4);
            REQUIRE(routed.size() == 1);
            CHECK(routed.entries()[0].first == basis(expected.position, 4, expected.chirality, a, 0));
            CHECK(expected.position == a);
            CHECK(expected.chirality == (a & 1u));
        }
    }
    SUBCASE("exactly n level steps") {
        StepCounts counts;
        route(make_initial_state(TreeShape(7, 1), AddressSuperposition::uniform({3, 90})), {}, &counts);
        CHECK(counts == StepCounts{7, 0, 0});
    }
}

TEST_CASE("query XORs cell contents into the data register") {
    const SparseState leaves = fig_routing_state(3);
    SUBCASE("worked example") { CHECK(approx_equal(query(leaves, fig_memory()), fig_query_state())); }
    SUBCASE("all-zero memory is the identity") { CHECK(query(leaves, MemoryTable(kFigShape)) == leaves); }
    SUBCASE("query is an involution") {
        const MemoryTable memory = fig_memory();
        CHECK(query(query(leaves, memory), memory) == leaves);
    }
    SUBCASE("entries above the leaves are untouched") {
        MemoryTable memory(kFigShape);
        for (std::uint64_t a = 0; a < 8; ++a) memory.set(a, 3);
        const SparseState inner(kFigShape, {{basis(0, 0, 0, 1, 2), 0.6}, {basis(3, 2, 1, 6, 1), 0.8}});
        CHECK(query(inner, memory) == inner);
    }
    SUBCASE("shape mismatch") {
        CHECK_THROWS_AS(query(leaves, MemoryTable(TreeShape(3, 1))), ShapeError);
        CHECK_THROWS_AS(query(leaves, MemoryTable(TreeShape(2, 2))), ShapeError);
    }
}

TEST_CASE("unroute pulls the filled bucket back to the root") {
    SUBCASE("worked example") { CHECK(approx_equal(unroute(fig_query_state()), fig_output_state())); }
    SUBCASE("n = 1, m = 2") {
        const TreeShape shape(1, 2);
        const double h = 1.0 / std::sqrt(2.0);
        const SparseState filled(shape, {{basis(0, 1, 0, 0, 0b10), h}, {basis(1, 1, 1, 1, 0b01), h}});
        const SparseState expected(shape, {{basis(0, 0, 0, 0, 0b10), h}, {basis(0, 0, 0, 1, 0b01), h}});
        CHECK(unroute(filled) == expected);
    }
    SUBCASE("unroute inverts route on random states") {
        Rng rng(9);
        for (int trial = 0; trial < 100; ++trial) {
            const TreeShape shape(std::uniform_int_distribution<unsigned>(1, 5)(rng), 2);
            const SparseState s = random_state(shape, 20, rng);
            CHECK(unroute(route(s)) == s);
            CHECK(route(unroute(s)) == s);
        }
    }
}

TEST_CASE("qram end to end") {
    SUBCASE("worked example against the classical lookup") {
        const auto addrs = AddressSuperposition::uniform(kFigAddresses);
        const SparseState out = qram(kFigShape, addrs, fig_memory());
        CHECK(approx_equal(out, lookup_oracle(kFigShape, addrs, fig_memory())));
        CHECK(approx_equal(out, fig_output_state()));
        for (const auto& [b, amp] : out.entries()) CHECK(std::abs(amp - 1.0 / std::sqrt(3.0)) <= 1e-12);
    }
    SUBCASE("zero memory returns the initial state") {
        const auto addrs = AddressSuperposition({{2, {0.3, 0.1}}, {5, {-0.2, 0.7}}, {7, {0.0, 1.0}}});
        CHECK(qram(kFigShape, addrs, MemoryTable(kFigShape)) == make_initial_state(kFigShape, addrs));
    }
    SUBCASE("two calls restore the initial state") {
        const auto addrs = AddressSuperposition::uniform(kFigAddresses);
        const SparseState once = qram(kFigShape, addrs, fig_memory());
        const SparseState twice = unroute(query(route(once), fig_memory()));
        CHECK(approx_equal(twice, make_initial_state(kFigShape, addrs), 1e-12));
    }
    SUBCASE("2n + 1 primitive steps") {
        for (unsigned n : {1u, 4u, 8u, 13u}) {
            StepCounts counts;
            qram(TreeShape(n, 2), AddressSuperposition::uniform({0}), MemoryTable(TreeShape(n, 2)),
                 Normalization::On, {}, &counts);
            CHECK(counts == StepCounts{n, 1, n});
            CHECK(counts.total() == 2 * n + 1);
        }
    }
    SUBCASE("shape mismatch") {
        CHECK_THROWS_AS(qram(kFigShape, AddressSuperposition::uniform({1}), MemoryTable(TreeShape(2, 2))), ShapeError);
    }
}

TEST_CASE("qram matches the classical lookup on random instances") {
    Rng rng(2024);
    for (unsigned n = 1; n <= 6; ++n) {
        for (unsigned m = 1; m <= 4; ++m) {
            const TreeShape shape(n, m);
            for (int trial = 0; trial < 20; ++trial) {
                const MemoryTable memory = random_memory(shape, rng);
                const std::size_t count = std::uniform_int_distribution<std::size_t>(1, shape.leaf_count())(rng);
                const auto addrs = random_addresses(shape, count, rng).canonical();
                const SparseState out = qram(shape, addrs, memory);
                CHECK(max_abs_difference(out, lookup_oracle(shape, addrs, memory)) <= 1e-9);
                // Address register untouched, bus and chirality reset.
                REQUIRE(out.size() == addrs.terms().size());
                for (std::size_t i = 0; i < out.size(); ++i) {
                    const auto& [b, amp] = out.entries()[i];
                    CHECK(b.node == NodeIndex{0, 0});
                    CHECK(b.chirality == 0);
                    CHECK(b.address == addrs.terms()[i].address);
                    CHECK(amp == addrs.terms()[i].amplitude);
                }
            }
        }
    }
}

TEST_CASE("qram_traced") {
    const TracedRun run = qram_traced(kFigShape, AddressSuperposition::uniform(kFigAddresses), fig_memory());
    REQUIRE(run.trace.steps.size() == 8);
    const std::vector<std::string> labels{"psi0_0", "psi0_1", "psi0_2", "psi0_3", "query", "psix_2", "psix_1", "psix_0"};
    for (std::size_t i = 0; i < labels.size(); ++i) CHECK(run.trace.steps[i].label == labels[i]);
    for (unsigned l = 0; l <= 3; ++l) CHECK(approx_equal(run.trace.steps[l].state, fig_routing_state(l)));
    CHECK(approx_equal(run.trace.steps[4].state, fig_query_state()));
    CHECK(approx_equal(run.trace.steps[7].state, fig_output_state()));
    CHECK(run.trace.steps.back().state == run.state);
    CHECK(run.state == qram(kFigShape, AddressSuperposition::uniform(kFigAddresses), fig_memory()));
    CHECK(run.counts == StepCounts{3, 1, 3});
    for (const auto& step : run.trace.steps) CHECK(step.state.size() == 3);

    Rng rng(4);
    for (unsigned n = 1; n <= 8; ++n) {
        const TreeShape shape(n, 1);
        const auto traced = qram_traced(shape, random_addresses(shape, 3, rng), random_memory(shape, rng));
        CHECK(traced.trace.steps.size() == 2 * n + 2);
    }
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "qwqram/cli.hpp"
#include "qwqram/dense.hpp"
#include "qwqram/io.hpp"
#include "qwqram/pipeline.hpp"
#include "qwqram/sampling.hpp"
#include "qwqram/walk.hpp"
#include "test_support.hpp"

using namespace qwqram;
using namespace qwqram::testing;

namespace {

constexpr double kAmplitudeTol = 1e-9;
constexpr double kUnitaryTol = 1e-10;
constexpr double kExactTol = 1e-12;

struct Outcome {
    bool passed = true;
    std::string detail;
};

// Accumulates failures with a message; keeps the worst observed deviation.
class Checker {
public:
    void expect(bool condition, const std::string& what) {
        if (!condition && ok_) {
            ok_ = false;
            first_failure_ = what;
        }
    }
    void deviation(double value, double tol, const std::string& what) {
        worst_ = std::max(worst_, value);
        expect(value <= tol, what + " deviation " + std::to_string(value));
    }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream s;
        s << summary << "; max deviation " << worst_;
        if (!ok_) s << "; first failure: " << first_failure_;
        return {ok_, s.str()};
    }

private:
    bool ok_ = true;
    double worst_ = 0.0;
    std::string first_failure_;
};

Outcome figure_captions() {
    Checker c;
    const TracedRun run = qram_traced(kFigShape, AddressSuperposition::uniform(kFigAddresses), fig_memory());
    c.expect(run.trace.steps.size() == 8, "trace length");
    for (unsigned l = 0; l <= 3 && l < run.trace.steps.size(); ++l) {
        c.deviation(max_abs_difference(run.trace.steps[l].state, fig_routing_state(l)), kAmplitudeTol,
                    "routing level " + std::to_string(l));
    }
    c.deviation(max_abs_difference(run.trace.steps.at(4).state, fig_query_state()), kAmplitudeTol, "query");
    // Output steps retrace the routing states with the data attached.
    for (unsigned l = 0; l < 3; ++l) {
        const SparseState routed = fig_routing_state(l);
        std::vector<SparseState::Entry> filled;
        for (auto [b, amp] : routed.entries()) {
            b.data = fig_memory().at(b.address);
            filled.push_back({b, amp});
        }
        c.deviation(max_abs_difference(run.trace.steps.at(7 - l).state, SparseState(kFigShape, filled)), kAmplitudeTol,
                    "output level " + std::to_string(l));
    }
    c.deviation(max_abs_difference(run.state, fig_output_state()), kAmplitudeTol, "final state");
    for (const auto& [b, amp] : run.state.entries()) {
        c.deviation(std::abs(amp - 1.0 / std::sqrt(3.0)), kAmplitudeTol, "amplitude 1/sqrt(3)");
    }
    return c.outcome("8 trace states vs routing/query/output captions");
}

Outcome end_to_end_contract() {
    Checker c;
    Rng rng(20240601);
    std::size_t instances = 0;
    for (unsigned n = 1; n <= 6; ++n) {
        for (unsigned m = 1; m <= 4; ++m) {
            const TreeShape shape(n, m);
            for (int trial = 0; trial < 200; ++trial) {
                const MemoryTable memory = random_memory(shape, rng);
                const std::size_t count = std::uniform_int_distribution<std::size_t>(1, shape.leaf_count())(rng);
                const auto addrs = random_addresses(shape, count, rng).canonical();
                const SparseState out = qram(shape, addrs, memory);
                c.deviation(max_abs_difference(out, lookup_oracle(shape, addrs, memory)), kAmplitudeTol,
                            "n=" + std::to_string(n) + " m=" + std::to_string(m));
                ++instances;
            }
        }
    }
    return c.outcome(std::to_string(instances) + " random instances, n 1..6, m 1..4");
}

Outcome unitarity_and_reversibility() {
    Checker c;
    Rng rng(99);
    std::size_t matrices = 0;
    for (unsigned n = 1; n <= 3; ++n) {
        for (unsigned m = 1; m <= 2; ++m) {
            const TreeShape shape(n, m);
            const std::string tag = " n=" + std::to_string(n) + " m=" + std::to_string(m);
            for (const auto& spec : all_operator_specs(random_memory(shape, rng))) {
                const DenseMatrix mat = build_dense(spec);
                c.deviation(check_unitary(mat), kUnitaryTol, "unitarity " + spec.name() + tag);
                c.expect(is_permutation_matrix(mat), "permutation " + spec.name() + tag);
                ++matrices;
            }
            for (unsigned l = 0; l < n; ++l) {
                c.deviation(check_adjoint(shape, l), kExactTol, "adjoint l=" + std::to_string(l) + tag);
            }
        }
    }
    for (int trial = 0; trial < 100; ++trial) {
        const TreeShape shape(std::uniform_int_distribution<unsigned>(1, 5)(rng), 2);
        const SparseState s = random_state(shape, 24, rng);
        c.deviation(max_abs_difference(unroute(route(s)), s), kExactTol, "unroute(route(s))");
    }
    return c.outcome(std::to_string(matrices) + " dense operators, adjoint pairs, 100 unroute∘route states");
}

Outcome involutions() {
    Checker c;
    Rng rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        const unsigned n = std::uniform_int_distribution<unsigned>(1, 5)(rng);
        const unsigned m = std::uniform_int_distribution<unsigned>(1, 4)(rng);
        const TreeShape shape(n, m);
        const SparseState s = random_state(shape, 32, rng);
        const MemoryTable memory = random_memory(shape, rng);
        const unsigned l = std::uniform_int_distribution<unsigned>(0, n - 1)(rng);
        const unsigned k = std::uniform_int_distribution<unsigned>(0, n)(rng);
        c.deviation(max_abs_difference(apply_shift_level(apply_shift_level(s, l), l), s), kExactTol, "shift^2");
        c.deviation(max_abs_difference(apply_coin(apply_coin(s, k), k), s), kExactTol, "coin^2");
        c.deviation(max_abs_difference(query(query(s, memory), memory), s), kExactTol, "Q^2");

        const auto addrs = random_addresses(shape, 1 + trial % 8, rng);
        const SparseState initial = make_initial_state(shape, addrs);
        const SparseState once = qram(shape, addrs, memory);
        const SparseState twice = unroute(query(route(once), memory));
        c.deviation(max_abs_difference(twice, initial), kExactTol, "qram^2");
        c.deviation(max_abs_difference(unroute(query(route(unroute(query(route(s), memory))), memory)), s), kExactTol,
                    "qram^2 on arbitrary state");
    }
    return c.outcome("300 random states/instances, n <= 5");
}

Outcome complexity() {
    Checker c;
    Rng rng(555);
    for (unsigned n = 1; n <= 24; ++n) {
        const TreeShape shape(n, 3);
        const auto addrs = random_addresses(shape, 16, rng);
        MemoryTable memory(shape);
        for (const auto& t : addrs.terms()) memory.set(t.address, t.address % 8);
        const TracedRun run = qram_traced(shape, addrs, memory);
        c.expect(run.counts == StepCounts{n, 1, n}, "step split n=" + std::to_string(n));
        c.expect(run.counts.total() == 2 * n + 1, "2n+1 steps n=" + std::to_string(n));
        for (const auto& step : run.trace.steps) {
            c.expect(step.state.size() == addrs.terms().size(), "support size n=" + std::to_string(n));
        }
    }

    std::vector<double> xs;
    std::vector<double> ys;
    std::ostringstream timings;
    for (unsigned n : {4u, 8u, 16u, 20u}) {
        const cli::BenchPoint p = cli::measure_qram(n, 4, 16, 2000, 7);
        c.expect(p.steps == 2 * n + 1, "bench steps");
        c.expect(p.min_support == 16 && p.max_support == 16, "bench support");
        xs.push_back(n);
        ys.push_back(p.seconds_per_call);
        timings << " n=" << n << ":" << static_cast<long>(p.seconds_per_call * 1e9) << "ns";
    }
    const cli::LinearFit fit = cli::fit_linear(xs, ys);
    c.expect(fit.slope > 0.0, "positive slope");
    c.expect(fit.worst_ratio <= 2.0, "timing within factor 2 of linear fit (worst " +
                                         std::to_string(fit.worst_ratio) + ")");
    return c.outcome("steps 2n+1 for n 1..24, |A|=16 support;" + timings.str() +
                     " worst fit ratio " + std::to_string(fit.worst_ratio));
}

Outcome routing_invariant() {
    Checker c;
    Rng rng(61);
    for (int trial = 0; trial < 500; ++trial) {
        const unsigned n = std::uniform_int_distribution<unsigned>(1, 10)(rng);
        const TreeShape shape(n, 1);
        const std::uint64_t a = std::uniform_int_distribution<std::uint64_t>(0, shape.leaf_count() - 1)(rng);
        SparseState s = make_initial_state(shape, AddressSuperposition::uniform({a}));
        for (unsigned j = 1; j <= n; ++j) {
            s = level_step_down(s, j - 1);
            const auto expected = routing_oracle(a, n, j);
            c.expect(s.size() == 1 && s.entries()[0].first == basis(expected.position, j, expected.chirality, a, 0),
                     "address " + std::to_string(a) + " level " + std::to_string(j));
        }
    }
    return c.outcome("500 random single addresses, n <= 10");
}

std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    status = pclose(pipe);
    return out;
}

Outcome round_trips() {
    Checker c;
    Rng rng(777);
    for (int trial = 0; trial < 300; ++trial) {
        const TreeShape shape(std::uniform_int_distribution<unsigned>(1, 6)(rng),
                              std::uniform_int_distribution<unsigned>(1, 4)(rng));
        const SparseState s = random_state(shape, 40, rng);
        c.expect(parse_state(serialize_state(s)) == s, "state round trip");
        const MemoryTable memory = random_memory(shape, rng);
        c.expect(parse_memory(serialize_memory(memory), shape) == memory, "memory round trip");
        const auto addrs = random_addresses(shape, 6, rng).canonical(Normalization::Off);
        c.expect(parse_addresses(serialize_addresses(addrs, shape), shape, Normalization::Off) == addrs,
                 "address round trip");
        if (trial % 10 == 0) {
            const auto traced = qram_traced(shape, random_addresses(shape, 4, rng), memory);
            c.expect(parse_trace(serialize_trace(traced.trace)) == traced.trace, "trace round trip");
        }
    }

    const std::string base = std::string(QWQRAM_CLI_PATH) + " run --n 3 --m 2 --memory " +
                             fixture_path("fig_memory.tsv") + " --addresses " + fixture_path("fig_addresses.tsv");
    for (const std::string extra : {"", " --trace", " --trace --format json", " --threads 4"}) {
        int first_status = 0;
        int second_status = 0;
        const std::string first = capture(base + extra, first_status);
        const std::string second = capture(base + extra, second_status);
        c.expect(first_status == 0 && second_status == 0, "cli exit status" + extra);
        c.expect(!first.empty() && first == second, "byte-identical rerun" + extra);
    }
    return c.outcome("300 randomized state/memory/address instances, 30 traces, 4 CLI rerun pairs");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "figure-caption golden states", 1.0, figure_captions},
        {2, "end-to-end qRAM contract vs classical lookup", 10.0, end_to_end_contract},
        {3, "unitarity, permutation, adjoint, reversibility", 30.0, unitarity_and_reversibility},
        {4, "involutions (shift, coin, Q, qram)", 0.0, involutions},
        {5, "step count, support size, linear runtime", 0.0, complexity},
        {6, "routing level closed form", 0.0, routing_invariant},
        {7, "format round trips and byte-identical reruns", 0.0, round_trips},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0 && elapsed >= criterion.budget_seconds) {
            outcome.passed = false;
            outcome.detail += "; runtime over budget";
        }
        if (!outcome.passed) ++failures;
        std::printf("[%s] criterion %d: %s (%.3f s) -- %s\n", outcome.passed ? "PASS" : "FAIL", criterion.id,
                    criterion.name, elapsed, outcome.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

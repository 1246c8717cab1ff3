#include "qwqram/pipeline.hpp"

#include <string>

namespace qwqram {

namespace {

void require_same_shape(const TreeShape& state, const TreeShape& memory) {
    if (!(state == memory)) {
        throw ShapeError("memory shape n=" + std::to_string(memory.address_bits()) + " m=" +
                         std::to_string(memory.data_bits()) + " does not match state shape n=" +
                         std::to_string(state.address_bits()) + " m=" + std::to_string(state.data_bits()));
    }
}

} // namespace

SparseState route(const SparseState& state, ExecOptions exec, StepCounts* counts) {
    SparseState current = state;
    for (unsigned level = 0; level < state.shape().address_bits(); ++level) {
        current = level_step_down(current, level, exec);
        if (counts) ++counts->level_down;
    }
    return current;
}

SparseState query(const SparseState& state, const MemoryTable& memory, ExecOptions /*exec*/, StepCounts* counts) {
    require_same_shape(state.shape(), memory.shape());
    const unsigned n = state.shape().address_bits();
    std::vector<SparseState::Entry> out = state.entries();
    for (auto& [basis, amp] : out) {
        if (basis.node.level == n) basis.data ^= memory.at(basis.node.position);
    }
    if (counts) ++counts->query;
    return SparseState::from_permuted(state.shape(), std::move(out));
}

SparseState unroute(const SparseState& state, ExecOptions exec, StepCounts* counts) {
    SparseState current = state;
    for (unsigned level = state.shape().address_bits(); level-- > 0;) {
        current = level_step_up(current, level, exec);
        if (counts) ++counts->level_up;
    }
    return current;
}

SparseState qram(const TreeShape& shape, const AddressSuperposition& addresses, const MemoryTable& memory,
                 Normalization normalization, ExecOptions exec, StepCounts* counts) {
    require_same_shape(shape, memory.shape());
    const SparseState initial = make_initial_state(shape, addresses, normalization);
    return unroute(query(route(initial, exec, counts), memory, exec, counts), exec, counts);
}

TracedRun qram_traced(const TreeShape& shape, const AddressSuperposition& addresses, const MemoryTable& memory,
                      Normalization normalization, ExecOptions exec) {
    require_same_shape(shape, memory.shape());
    const unsigned n = shape.address_bits();
    TracedRun run{make_initial_state(shape, addresses, normalization), {}, {}};
    run.trace.steps.reserve(2 * n + 2);
    run.trace.steps.push_back({"psi0_0", run.state});
    for (unsigned level = 0; level < n; ++level) {
        run.state = level_step_down(run.state, level, exec);
        ++run.counts.level_down;
        run.trace.steps.push_back({"psi0_" + std::to_string(level + 1), run.state});
    }
    run.state = query(run.state, memory, exec, &run.counts);
    run.trace.steps.push_back({"query", run.state});
    for (unsigned level = n; level-- > 0;) {
        run.state = level_step_up(run.state, level, exec);
        ++run.counts.level_up;
        run.trace.steps.push_back({"psix_" + std::to_string(level), run.state});
    }
    return run;
}

} // namespace qwqram

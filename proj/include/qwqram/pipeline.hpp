#pragma once

// qRAM = F^dagger Q F: route the bucket to the leaves, XOR the cell words
// into the data register, and walk back to the root.

#include <string>
#include <vector>

#include "qwqram/state.hpp"
#include "qwqram/walk.hpp"

namespace qwqram {

// Primitive pipeline steps executed by one call. A full qRAM call is n level
// steps down, one query pass and n level steps up.
struct StepCounts {
    unsigned level_down = 0;
    unsigned query = 0;
    unsigned level_up = 0;

    unsigned total() const noexcept { return level_down + query + level_up; }

    friend bool operator==(const StepCounts&, const StepCounts&) = default;
};

// Labeled snapshots of a qRAM run: psi0_0 .. psi0_n, query, psix_{n-1} .. psix_0.
struct TraceRecord {
    struct Step {
        std::string label;
        SparseState state;

        friend bool operator==(const Step&, const Step&) = default;
    };

    std::vector<Step> steps;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// F = F^(n|n-1) ... F^(1|0).
SparseState route(const SparseState& state, ExecOptions exec = {}, StepCounts* counts = nullptr);

// Q: on every leaf entry (a, n), d -> d XOR x^(a). Entries above the leaves
// are untouched. Throws ShapeError if the memory's shape differs.
SparseState query(const SparseState& state, const MemoryTable& memory, ExecOptions exec = {},
                  StepCounts* counts = nullptr);

// F^dagger: level_step_up for l = n-1 down to 0.
SparseState unroute(const SparseState& state, ExecOptions exec = {}, StepCounts* counts = nullptr);

// Full qRAM on the initial state built from `addresses`.
SparseState qram(const TreeShape& shape, const AddressSuperposition& addresses, const MemoryTable& memory,
                 Normalization normalization = Normalization::On, ExecOptions exec = {},
                 StepCounts* counts = nullptr);

struct TracedRun {
    SparseState state;
    TraceRecord trace;
    StepCounts counts;
};

TracedRun qram_traced(const TreeShape& shape, const AddressSuperposition& addresses, const MemoryTable& memory,
                      Normalization normalization = Normalization::On, ExecOptions exec = {});

} // namespace qwqram

#pragma once

// Coined walk on the binary tree: the level shift, the chirality CNOT coin
// and the one-level routing step built from them. Every operator permutes
// basis labels, so each is applied entrywise and never combines amplitudes.

#include "qwqram/state.hpp"

namespace qwqram {

// Entry-parallel application. Output is identical for any thread count.
struct ExecOptions {
    unsigned threads = 1;
};

// Direct sum over w of the local shifts S_(w,l), extended by identity on
// every level other than l and l+1. A walker at (w,l) with chirality c moves
// to (2w+c, l+1); a child whose side matches its chirality moves back to
// (w,l); a mismatched child stays. Requires l < n, else DomainError.
SparseState apply_shift_level(const SparseState& state, unsigned level, ExecOptions exec = {});

// CNOT with address bit a_k as control and the chirality as target. k == n
// is the identity coin. Requires k <= n, else DomainError.
SparseState apply_coin(const SparseState& state, unsigned address_bit, ExecOptions exec = {});

// F^(l+1|l) = S_l C_{n-(l+1)} C_{n-l}, rightmost factor applied first.
SparseState level_step_down(const SparseState& state, unsigned level, ExecOptions exec = {});

// Adjoint of level_step_down: C_{n-l} C_{n-(l+1)} S_l. Both factors are
// involutions so no conjugation is needed.
SparseState level_step_up(const SparseState& state, unsigned level, ExecOptions exec = {});

} // namespace qwqram

#pragma once

// Seeded random instances for property checks and benchmarks.

#include <cstddef>
#include <random>

#include "qwqram/state.hpp"

namespace qwqram {

using Rng = std::mt19937_64;

// Up to `max_entries` random labels anywhere in the tree (all levels, both
// chiralities, any address and data word) with random complex amplitudes.
SparseState random_state(const TreeShape& shape, std::size_t max_entries, Rng& rng);

// Every cell drawn uniformly from [0, 2^m). Requires n <= 20.
MemoryTable random_memory(const TreeShape& shape, Rng& rng);

// `count` distinct addresses (clamped to 2^n) with random complex amplitudes,
// not normalized.
AddressSuperposition random_addresses(const TreeShape& shape, std::size_t count, Rng& rng);

} // namespace qwqram

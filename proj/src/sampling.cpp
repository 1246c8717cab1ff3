#include "qwqram/sampling.hpp"

#include <algorithm>
#include <set>

namespace qwqram {

namespace {

Amplitude random_amplitude(Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Amplitude amp{gauss(rng), gauss(rng)};
    // Keep clear of the prune threshold.
    if (std::abs(amp) < 1e-3) amp = {1.0, 0.0};
    return amp;
}

std::uint64_t random_below(std::uint64_t bound, Rng& rng) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

} // namespace

SparseState random_state(const TreeShape& shape, std::size_t max_entries, Rng& rng) {
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_entries))(rng);
    std::vector<SparseState::Entry> entries;
    entries.reserve(count);
    std::set<BasisState> seen;
    for (std::size_t i = 0; i < count; ++i) {
        BasisState b;
        b.node = NodeIndex::from_flat_id(random_below(shape.node_count(), rng));
        b.chirality = static_cast<std::uint8_t>(random_below(2, rng));
        b.address = random_below(shape.leaf_count(), rng);
        b.data = random_below(shape.data_limit(), rng);
        if (!seen.insert(b).second) continue;
        entries.push_back({b, random_amplitude(rng)});
    }
    return SparseState(shape, std::move(entries));
}

MemoryTable random_memory(const TreeShape& shape, Rng& rng) {
    if (shape.address_bits() > 20) throw DomainError("random_memory supports n <= 20");
    MemoryTable memory(shape);
    for (std::uint64_t a = 0; a < shape.leaf_count(); ++a) memory.set(a, random_below(shape.data_limit(), rng));
    return memory;
}

AddressSuperposition random_addresses(const TreeShape& shape, std::size_t count, Rng& rng) {
    count = static_cast<std::size_t>(std::min<std::uint64_t>(std::max<std::size_t>(count, 1), shape.leaf_count()));
    std::set<std::uint64_t> chosen;
    while (chosen.size() < count) chosen.insert(random_below(shape.leaf_count(), rng));
    std::vector<AddressSuperposition::Term> terms;
    terms.reserve(count);
    for (const auto a : chosen) terms.push_back({a, random_amplitude(rng)});
    return AddressSuperposition(std::move(terms));
}

} // namespace qwqram

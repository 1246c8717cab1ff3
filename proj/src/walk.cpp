#include "qwqram/walk.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace qwqram {

namespace {

constexpr std::size_t kMinEntriesPerThread = 4096;

// Applies a basis-label map to every entry, then re-sorts. The map must be
// injective; SparseState::from_permuted enforces that.
template <typename LabelMap>
SparseState map_labels(const SparseState& state, LabelMap&& map, ExecOptions exec) {
    std::vector<SparseState::Entry> out = state.entries();
    const auto apply = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i].first = map(out[i].first);
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, exec.threads), out.size() / kMinEntriesPerThread + 1);
    if (workers <= 1) {
        apply(0, out.size());
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (out.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < out.size(); begin += chunk) {
            pool.emplace_back(apply, begin, std::min(out.size(), begin + chunk));
        }
    }
    return SparseState::from_permuted(state.shape(), std::move(out));
}

void require_level(const TreeShape& shape, unsigned level) {
    if (level >= shape.address_bits()) {
        throw DomainError("level " + std::to_string(level) + " out of range [0, " +
                          std::to_string(shape.address_bits() - 1) + "]");
    }
}

void require_coin(const TreeShape& shape, unsigned address_bit) {
    if (address_bit > shape.address_bits()) {
        throw DomainError("coin target " + std::to_string(address_bit) + " out of range [0, " +
                          std::to_string(shape.address_bits()) + "]");
    }
}

BasisState shift_label(BasisState b, unsigned level) {
    if (b.node.level == level) {
        b.node = b.node.child(b.chirality);
    } else if (b.node.level == level + 1 && (b.node.position & 1u) == b.chirality) {
        b.node = b.node.parent();
    }
    return b;
}

} // namespace

SparseState apply_shift_level(const SparseState& state, unsigned level, ExecOptions exec) {
    require_level(state.shape(), level);
    return map_labels(state, [level](const BasisState& b) { return shift_label(b, level); }, exec);
}

SparseState apply_coin(const SparseState& state, unsigned address_bit, ExecOptions exec) {
    require_coin(state.shape(), address_bit);
    if (address_bit == state.shape().address_bits()) return state;
    return map_labels(
        state,
        [address_bit](BasisState b) {
            b.chirality ^= static_cast<std::uint8_t>((b.address >> address_bit) & 1u);
            return b;
        },
        exec);
}

// The two coins and the shift are fused into one label map per step; the
// composition order is the one documented in the header.
SparseState level_step_down(const SparseState& state, unsigned level, ExecOptions exec) {
    const unsigned n = state.shape().address_bits();
    require_level(state.shape(), level);
    const unsigned first = n - level;
    const unsigned second = n - (level + 1);
    return map_labels(
        state,
        [=](BasisState b) {
            if (first < n) b.chirality ^= static_cast<std::uint8_t>((b.address >> first) & 1u);
            b.chirality ^= static_cast<std::uint8_t>((b.address >> second) & 1u);
            return shift_label(b, level);
        },
        exec);
}

SparseState level_step_up(const SparseState& state, unsigned level, ExecOptions exec) {
    const unsigned n = state.shape().address_bits();
    require_level(state.shape(), level);
    const unsigned first = n - (level + 1);
    const unsigned second = n - level;
    return map_labels(
        state,
        [=](BasisState b) {
            b = shift_label(b, level);
            b.chirality ^= static_cast<std::uint8_t>((b.address >> first) & 1u);
            if (second < n) b.chirality ^= static_cast<std::uint8_t>((b.address >> second) & 1u);
            return b;
        },
        exec);
}

} // namespace qwqram

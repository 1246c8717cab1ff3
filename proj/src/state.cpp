#include "qwqram/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace qwqram {

namespace {

bool finite(const Amplitude& amp) { return std::isfinite(amp.real()) && std::isfinite(amp.imag()); }

bool negligible(const Amplitude& amp) { return std::abs(amp) < kPruneThreshold; }

bool label_less(const SparseState::Entry& lhs, const SparseState::Entry& rhs) { return lhs.first < rhs.first; }

} // namespace

TreeShape::TreeShape(unsigned address_bits, unsigned data_bits) : n_(address_bits), m_(data_bits) {
    if (n_ < 1 || n_ > kMaxAddressBits) {
        throw DomainError("address width n must be in [1, " + std::to_string(kMaxAddressBits) + "], got " +
                          std::to_string(n_));
    }
    if (m_ < 1 || m_ > kMaxDataBits) {
        throw DomainError("data width m must be in [1, " + std::to_string(kMaxDataBits) + "], got " +
                          std::to_string(m_));
    }
}

NodeIndex NodeIndex::from_flat_id(std::uint64_t id) noexcept {
    const auto level = static_cast<unsigned>(std::bit_width(id + 1) - 1);
    return {level, id + 1 - (std::uint64_t{1} << level)};
}

bool NodeIndex::valid_for(const TreeShape& shape) const noexcept {
    return level <= shape.address_bits() && position < (std::uint64_t{1} << level);
}

bool BasisState::valid_for(const TreeShape& shape) const noexcept {
    return node.valid_for(shape) && chirality <= 1 && address < shape.leaf_count() && data < shape.data_limit();
}

SparseState::SparseState(TreeShape shape, std::vector<Entry> entries) : shape_(shape) {
    for (const auto& [basis, amp] : entries) {
        if (!basis.valid_for(shape_)) {
            throw DomainError("basis label out of range for shape n=" + std::to_string(shape_.address_bits()) +
                              " m=" + std::to_string(shape_.data_bits()));
        }
        if (!finite(amp)) throw DomainError("non-finite amplitude");
    }
    std::stable_sort(entries.begin(), entries.end(), label_less);
    entries_.reserve(entries.size());
    for (auto& entry : entries) {
        if (!entries_.empty() && entries_.back().first == entry.first) {
            entries_.back().second += entry.second;
        } else {
            entries_.push_back(entry);
        }
    }
    std::erase_if(entries_, [](const Entry& e) { return negligible(e.second); });
}

SparseState SparseState::from_permuted(TreeShape shape, std::vector<Entry> entries) {
    std::erase_if(entries, [](const Entry& e) { return negligible(e.second); });
    std::sort(entries.begin(), entries.end(), label_less);
    const auto dup = std::adjacent_find(entries.begin(), entries.end(),
                                        [](const Entry& lhs, const Entry& rhs) { return lhs.first == rhs.first; });
    if (dup != entries.end()) throw std::logic_error("basis map is not injective: two entries share a label");
    return SparseState(shape, std::move(entries), 0);
}

Amplitude SparseState::amplitude(const BasisState& basis) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), basis,
                                     [](const Entry& e, const BasisState& b) { return e.first < b; });
    if (it != entries_.end() && it->first == basis) return it->second;
    return {};
}

double norm_squared(const SparseState& state) {
    double total = 0.0;
    for (const auto& entry : state.entries()) total += std::norm(entry.second);
    return total;
}

const std::vector<SparseState::Entry>& canonical_entries(const SparseState& state) { return state.entries(); }

double max_abs_difference(const SparseState& lhs, const SparseState& rhs) {
    if (!(lhs.shape() == rhs.shape())) throw ShapeError("cannot compare states of different shapes");
    // Merge walk over the two sorted supports.
    const auto& a = lhs.entries();
    const auto& b = rhs.entries();
    double worst = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            worst = std::max(worst, std::abs(a[i++].second));
        } else if (i == a.size() || b[j].first < a[i].first) {
            worst = std::max(worst, std::abs(b[j++].second));
        } else {
            worst = std::max(worst, std::abs(a[i++].second - b[j++].second));
        }
    }
    return worst;
}

void MemoryTable::set(std::uint64_t address, std::uint64_t word) {
    if (address >= shape_.leaf_count()) {
        throw ShapeError("memory address " + std::to_string(address) + " out of range for n=" +
                         std::to_string(shape_.address_bits()));
    }
    if (word >= shape_.data_limit()) {
        throw ShapeError("memory word " + std::to_string(word) + " out of range for m=" +
                         std::to_string(shape_.data_bits()));
    }
    if (word == 0) {
        cells_.erase(address);
    } else {
        cells_[address] = word;
    }
}

std::uint64_t MemoryTable::at(std::uint64_t address) const {
    const auto it = cells_.find(address);
    return it == cells_.end() ? 0 : it->second;
}

AddressSuperposition AddressSuperposition::uniform(const std::vector<std::uint64_t>& addresses) {
    std::vector<Term> terms;
    terms.reserve(addresses.size());
    for (const auto a : addresses) terms.push_back({a, {1.0, 0.0}});
    return AddressSuperposition(std::move(terms)).canonical();
}

AddressSuperposition AddressSuperposition::canonical(Normalization normalization) const {
    if (terms_.empty()) throw DomainError("address superposition is empty");
    std::vector<Term> sorted = terms_;
    for (const auto& t : sorted) {
        if (!finite(t.amplitude)) throw DomainError("non-finite address amplitude");
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Term& lhs, const Term& rhs) { return lhs.address < rhs.address; });
    std::vector<Term> merged;
    for (const auto& t : sorted) {
        if (!merged.empty() && merged.back().address == t.address) {
            merged.back().amplitude += t.amplitude;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term& t) { return negligible(t.amplitude); });
    if (merged.empty()) throw DomainError("address superposition has zero norm");

    if (normalization == Normalization::On) {
        double norm2 = 0.0;
        for (const auto& t : merged) norm2 += std::norm(t.amplitude);
        // Already-unit inputs are left bit-identical so canonical() is idempotent.
        if (std::abs(norm2 - 1.0) > 4 * std::numeric_limits<double>::epsilon()) {
            const double scale = 1.0 / std::sqrt(norm2);
            for (auto& t : merged) t.amplitude *= scale;
        }
    }
    return AddressSuperposition(std::move(merged));
}

SparseState make_initial_state(const TreeShape& shape, const AddressSuperposition& addresses,
                               Normalization normalization) {
    const auto canonical = addresses.canonical(normalization);
    std::vector<SparseState::Entry> entries;
    entries.reserve(canonical.terms().size());
    for (const auto& t : canonical.terms()) {
        if (t.address >= shape.leaf_count()) {
            throw DomainError("address " + std::to_string(t.address) + " out of range for n=" +
                              std::to_string(shape.address_bits()));
        }
        entries.push_back({BasisState{NodeIndex{0, 0}, 0, t.address, 0}, t.amplitude});
    }
    return SparseState::from_permuted(shape, std::move(entries));
}

} // namespace qwqram

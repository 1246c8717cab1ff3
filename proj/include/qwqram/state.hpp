#pragma once

// Basis labels and the sparse state vector for the quantum-walk qRAM.
//
// The simulated space is V_B (x) V_C (x) V_A (x) V_D: a walker position on a
// full binary tree of depth n, one chirality bit, an n-bit address register
// and an m-bit data register. Every operator of the qRAM pipeline permutes
// these basis labels, so a state is stored as a sorted list of
// (label, amplitude) pairs rather than as a 2^k dense vector.

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qwqram/errors.hpp"

namespace qwqram {

using Amplitude = std::complex<double>;

// Entries with |amp| below this are dropped after every operator application.
inline constexpr double kPruneThreshold = 1e-12;

// Default tolerance for comparing two states entrywise.
inline constexpr double kStateTolerance = 1e-9;

class TreeShape {
public:
    static constexpr unsigned kMaxAddressBits = 62;
    static constexpr unsigned kMaxDataBits = 63;

    // Throws DomainError unless 1 <= n <= 62 and 1 <= m <= 63.
    TreeShape(unsigned address_bits, unsigned data_bits);

    unsigned address_bits() const noexcept { return n_; }
    unsigned data_bits() const noexcept { return m_; }

    // 2^n: number of leaves, and the exclusive upper bound of an address.
    std::uint64_t leaf_count() const noexcept { return std::uint64_t{1} << n_; }
    // 2^(n+1) - 1 tree nodes.
    std::uint64_t node_count() const noexcept { return (std::uint64_t{1} << (n_ + 1)) - 1; }
    // 2^m: exclusive upper bound of a data word.
    std::uint64_t data_limit() const noexcept { return std::uint64_t{1} << m_; }

    friend bool operator==(const TreeShape&, const TreeShape&) = default;

private:
    unsigned n_;
    unsigned m_;
};

// Node |w,l> of the bus space. Flat id 2^l - 1 + w is the heap layout.
struct NodeIndex {
    unsigned level = 0;
    std::uint64_t position = 0;

    std::uint64_t flat_id() const noexcept { return ((std::uint64_t{1} << level) - 1) + position; }
    static NodeIndex from_flat_id(std::uint64_t id) noexcept;

    bool valid_for(const TreeShape& shape) const noexcept;
    NodeIndex child(unsigned side) const noexcept { return {level + 1, 2 * position + side}; }
    NodeIndex parent() const noexcept { return {level - 1, position >> 1}; }

    friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
    friend std::strong_ordering operator<=>(const NodeIndex& lhs, const NodeIndex& rhs) noexcept {
        return lhs.flat_id() <=> rhs.flat_id();
    }
};

// One computational basis label. Address bit a_{n-1} is the MSB and steers the
// first routing decision; data bit 0 is register D_0.
struct BasisState {
    NodeIndex node;
    std::uint8_t chirality = 0;
    std::uint64_t address = 0;
    std::uint64_t data = 0;

    bool valid_for(const TreeShape& shape) const noexcept;

    friend bool operator==(const BasisState&, const BasisState&) = default;
    // Canonical order: (flat node id, chirality, address, data).
    friend std::strong_ordering operator<=>(const BasisState&, const BasisState&) = default;
};

// A state vector restricted to its support. Entries are kept sorted in
// canonical order, free of duplicates, and above the prune threshold.
// Instances are values: operators return new states.
class SparseState {
public:
    using Entry = std::pair<BasisState, Amplitude>;

    explicit SparseState(TreeShape shape) : shape_(shape) {}

    // General constructor: validates every label and amplitude against the
    // shape, sums duplicate labels, prunes and sorts. Throws DomainError.
    SparseState(TreeShape shape, std::vector<Entry> entries);

    // For images of injective basis maps: entries are only sorted and pruned.
    // A repeated label means the map was not injective and throws
    // std::logic_error.
    static SparseState from_permuted(TreeShape shape, std::vector<Entry> entries);

    const TreeShape& shape() const noexcept { return shape_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    // Zero when the label is not in the support.
    Amplitude amplitude(const BasisState& basis) const;

    // Exact equality of shape, labels and amplitude bits.
    friend bool operator==(const SparseState&, const SparseState&) = default;

private:
    SparseState(TreeShape shape, std::vector<Entry> entries, int /*trusted*/)
        : shape_(shape), entries_(std::move(entries)) {}

    TreeShape shape_;
    std::vector<Entry> entries_;
};

double norm_squared(const SparseState& state);

// The state's entries in canonical order.
const std::vector<SparseState::Entry>& canonical_entries(const SparseState& state);

// Max |amp_a(s) - amp_b(s)| over the union of supports. Shapes must match.
double max_abs_difference(const SparseState& lhs, const SparseState& rhs);

inline bool approx_equal(const SparseState& lhs, const SparseState& rhs, double tol = kStateTolerance) {
    return lhs.shape() == rhs.shape() && max_abs_difference(lhs, rhs) <= tol;
}

// Classical cell contents x^(a). Unset addresses read as 0.
class MemoryTable {
public:
    explicit MemoryTable(TreeShape shape) : shape_(shape) {}

    const TreeShape& shape() const noexcept { return shape_; }

    // Throws ShapeError when the address or word does not fit the shape.
    void set(std::uint64_t address, std::uint64_t word);
    std::uint64_t at(std::uint64_t address) const;

    // Explicitly stored nonzero cells, ordered by address.
    const std::map<std::uint64_t, std::uint64_t>& cells() const noexcept { return cells_; }

    friend bool operator==(const MemoryTable&, const MemoryTable&) = default;

private:
    TreeShape shape_;
    std::map<std::uint64_t, std::uint64_t> cells_;
};

enum class Normalization { On, Off };

// Weighted set of addresses sum_a amp_a |a>.
class AddressSuperposition {
public:
    struct Term {
        std::uint64_t address = 0;
        Amplitude amplitude{1.0, 0.0};

        friend bool operator==(const Term&, const Term&) = default;
    };

    AddressSuperposition() = default;
    explicit AddressSuperposition(std::vector<Term> terms) : terms_(std::move(terms)) {}

    // Equal-amplitude superposition over the given addresses.
    static AddressSuperposition uniform(const std::vector<std::uint64_t>& addresses);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    // Sums duplicate addresses, drops pruned terms, sorts by address and
    // (with Normalization::On) scales to unit norm. Throws DomainError when
    // the result would be empty or of zero norm.
    AddressSuperposition canonical(Normalization normalization = Normalization::On) const;

    friend bool operator==(const AddressSuperposition&, const AddressSuperposition&) = default;

private:
    std::vector<Term> terms_;
};

// sum_a amp_a |0,0>_B |0>_C |a>_A |0>_D, after canonicalizing the input.
// Throws DomainError for an empty superposition or an address >= 2^n.
SparseState make_initial_state(const TreeShape& shape, const AddressSuperposition& addresses,
                               Normalization normalization = Normalization::On);

} // namespace qwqram

#pragma once

// Dense-matrix oracle. Each operator is transcribed from its bra-ket sum into
// an explicit matrix over the full space and composite operators are formed
// by matrix products, independently of the sparse label maps. Only usable at
// small sizes: the dimension is (2^(n+1) - 1) * 2 * 2^n * 2^m.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwqram/state.hpp"

namespace qwqram {

inline constexpr std::size_t kDefaultDenseCap = 4096;

class OperatorSpec {
public:
    enum class Kind { ShiftLevel, Coin, LevelStepDown, LevelStepUp, Route, Query, Unroute, QRam };

    static OperatorSpec shift_level(const TreeShape& shape, unsigned level);
    static OperatorSpec coin(const TreeShape& shape, unsigned address_bit);
    static OperatorSpec level_step_down(const TreeShape& shape, unsigned level);
    static OperatorSpec level_step_up(const TreeShape& shape, unsigned level);
    static OperatorSpec route(const TreeShape& shape);
    static OperatorSpec query(const MemoryTable& memory);
    static OperatorSpec unroute(const TreeShape& shape);
    static OperatorSpec qram(const MemoryTable& memory);

    Kind kind() const noexcept { return kind_; }
    const TreeShape& shape() const noexcept { return shape_; }
    // Level for shift/step kinds, address bit for Coin, 0 otherwise.
    unsigned index() const noexcept { return index_; }
    // Present for Query and QRam.
    const std::optional<MemoryTable>& memory() const noexcept { return memory_; }

    std::string name() const;

private:
    OperatorSpec(Kind kind, TreeShape shape, unsigned index, std::optional<MemoryTable> memory)
        : kind_(kind), shape_(shape), index_(index), memory_(std::move(memory)) {}

    Kind kind_;
    TreeShape shape_;
    unsigned index_;
    std::optional<MemoryTable> memory_;
};

// Row-major square complex matrix.
class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static DenseMatrix identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    Amplitude& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Amplitude& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    DenseMatrix adjoint() const;
    // Skips zero entries of the left factor; exact for permutation factors.
    DenseMatrix operator*(const DenseMatrix& rhs) const;
    std::vector<Amplitude> operator*(const std::vector<Amplitude>& vec) const;

private:
    std::size_t dim_;
    std::vector<Amplitude> data_;
};

// Full-space dimension. Throws ResourceError above `cap`.
std::size_t dense_dimension(const TreeShape& shape, std::size_t cap = kDefaultDenseCap);

// Basis index in canonical order: ((flat_id * 2 + c) * 2^n + a) * 2^m + d.
std::size_t dense_index(const TreeShape& shape, const BasisState& basis);
BasisState dense_basis(const TreeShape& shape, std::size_t index);

std::vector<Amplitude> to_dense(const SparseState& state, std::size_t cap = kDefaultDenseCap);
SparseState from_dense(const TreeShape& shape, const std::vector<Amplitude>& vec);

// Throws ResourceError when the dimension exceeds `cap`.
DenseMatrix build_dense(const OperatorSpec& spec, std::size_t cap = kDefaultDenseCap);

// The sparse transformer named by the spec (route/query/... from the
// pipeline and walk modules).
SparseState apply_sparse(const OperatorSpec& spec, const SparseState& state);

// max |(U^dagger U - I)_ij|.
double check_unitary(const DenseMatrix& mat);

// Every column holds exactly one entry, equal to 1, and every other entry is 0.
bool is_permutation_matrix(const DenseMatrix& mat);

// Max amplitude deviation between the dense product and the sparse
// transformer over `trials` random sparse states.
double check_equivalence(const OperatorSpec& spec, unsigned trials, std::uint64_t seed,
                         std::size_t cap = kDefaultDenseCap);

// Same comparison over every basis vector of the space.
double check_basis_equivalence(const OperatorSpec& spec, std::size_t cap = kDefaultDenseCap);

// Max entry deviation between build_dense(LevelStepUp(l)) and the conjugate
// transpose of build_dense(LevelStepDown(l)).
double check_adjoint(const TreeShape& shape, unsigned level, std::size_t cap = kDefaultDenseCap);

// Every operator kind with every valid parameter for the shape; Query and
// QRam use `memory`.
std::vector<OperatorSpec> all_operator_specs(const MemoryTable& memory);

} // namespace qwqram

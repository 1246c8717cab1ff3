#include "qwqram/dense.hpp"

#include <algorithm>
#include <cmath>

#include "qwqram/pipeline.hpp"
#include "qwqram/sampling.hpp"
#include "qwqram/walk.hpp"

namespace qwqram {

namespace {

void require_level(const TreeShape& shape, unsigned level) {
    if (level >= shape.address_bits()) throw DomainError("level " + std::to_string(level) + " out of range");
}

// |node, c, a, d> as a dense index, with the node given as (w, l).
std::size_t index_of(const TreeShape& shape, unsigned level, std::uint64_t position, unsigned c, std::uint64_t a,
                     std::uint64_t d) {
    return dense_index(shape, BasisState{NodeIndex{level, position}, static_cast<std::uint8_t>(c), a, d});
}

// Sum over w of S_(w,l), plus identity on levels other than l and l+1.
DenseMatrix dense_shift(const TreeShape& shape, unsigned level, std::size_t dim) {
    DenseMatrix mat(dim);
    const std::uint64_t addresses = shape.leaf_count();
    const std::uint64_t words = shape.data_limit();
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << level); ++w) {
        for (unsigned i = 0; i < 2; ++i) {
            // (|2w+i,l+1><w,l| + |w,l><2w+i,l+1|) (x) |i><i|
            // + |2w+(1+(-1)^i)/2,l+1><2w+(1+(-1)^i)/2,l+1| (x) |i><i|
            const std::uint64_t stay = 2 * w + (i == 0 ? 1 : 0);
            for (std::uint64_t a = 0; a < addresses; ++a) {
                for (std::uint64_t d = 0; d < words; ++d) {
                    const auto parent = index_of(shape, level, w, i, a, d);
                    const auto child = index_of(shape, level + 1, 2 * w + i, i, a, d);
                    const auto other = index_of(shape, level + 1, stay, i, a, d);
                    mat(child, parent) += 1.0;
                    mat(parent, child) += 1.0;
                    mat(other, other) += 1.0;
                }
            }
        }
    }
    for (std::size_t j = 0; j < dim; ++j) {
        const auto node_level = dense_basis(shape, j).node.level;
        if (node_level != level && node_level != level + 1) mat(j, j) += 1.0;
    }
    return mat;
}

// I_C (x) |0><0|_{A_k} + X_C (x) |1><1|_{A_k}, identity on everything else.
DenseMatrix dense_coin(const TreeShape& shape, unsigned address_bit, std::size_t dim) {
    if (address_bit == shape.address_bits()) return DenseMatrix::identity(dim);
    DenseMatrix mat(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const BasisState in = dense_basis(shape, j);
        const unsigned control = static_cast<unsigned>((in.address >> address_bit) & 1u);
        BasisState out = in;
        if (control == 1) out.chirality = static_cast<std::uint8_t>(1 - in.chirality);
        mat(dense_index(shape, out), j) += 1.0;
    }
    return mat;
}

// sum_a |a,n><a,n|_B (x) prod_i X_{D_i}^{x_i(a)}; identity off the leaves.
DenseMatrix dense_query(const MemoryTable& memory, std::size_t dim) {
    const TreeShape& shape = memory.shape();
    DenseMatrix mat(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const BasisState in = dense_basis(shape, j);
        BasisState out = in;
        if (in.node.level == shape.address_bits()) {
            const std::uint64_t word = memory.at(in.node.position);
            for (unsigned bit = 0; bit < shape.data_bits(); ++bit) {
                if ((word >> bit) & 1u) out.data ^= std::uint64_t{1} << bit;
            }
        }
        mat(dense_index(shape, out), j) += 1.0;
    }
    return mat;
}

DenseMatrix dense_step_down(const TreeShape& shape, unsigned level, std::size_t dim) {
    const unsigned n = shape.address_bits();
    return dense_shift(shape, level, dim) * dense_coin(shape, n - (level + 1), dim) * dense_coin(shape, n - level, dim);
}

DenseMatrix dense_step_up(const TreeShape& shape, unsigned level, std::size_t dim) {
    const unsigned n = shape.address_bits();
    return dense_coin(shape, n - level, dim) * dense_coin(shape, n - (level + 1), dim) * dense_shift(shape, level, dim);
}

DenseMatrix dense_route(const TreeShape& shape, std::size_t dim) {
    DenseMatrix mat = DenseMatrix::identity(dim);
    for (unsigned level = 0; level < shape.address_bits(); ++level) mat = dense_step_down(shape, level, dim) * mat;
    return mat;
}

DenseMatrix dense_unroute(const TreeShape& shape, std::size_t dim) {
    DenseMatrix mat = DenseMatrix::identity(dim);
    for (unsigned level = 0; level < shape.address_bits(); ++level) mat = mat * dense_step_up(shape, level, dim);
    return mat;
}

} // namespace

OperatorSpec OperatorSpec::shift_level(const TreeShape& shape, unsigned level) {
    require_level(shape, level);
    return {Kind::ShiftLevel, shape, level, std::nullopt};
}

OperatorSpec OperatorSpec::coin(const TreeShape& shape, unsigned address_bit) {
    if (address_bit > shape.address_bits()) {
        throw DomainError("coin target " + std::to_string(address_bit) + " out of range");
    }
    return {Kind::Coin, shape, address_bit, std::nullopt};
}

OperatorSpec OperatorSpec::level_step_down(const TreeShape& shape, unsigned level) {
    require_level(shape, level);
    return {Kind::LevelStepDown, shape, level, std::nullopt};
}

OperatorSpec OperatorSpec::level_step_up(const TreeShape& shape, unsigned level) {
    require_level(shape, level);
    return {Kind::LevelStepUp, shape, level, std::nullopt};
}

OperatorSpec OperatorSpec::route(const TreeShape& shape) { return {Kind::Route, shape, 0, std::nullopt}; }

OperatorSpec OperatorSpec::query(const MemoryTable& memory) { return {Kind::Query, memory.shape(), 0, memory}; }

OperatorSpec OperatorSpec::unroute(const TreeShape& shape) { return {Kind::Unroute, shape, 0, std::nullopt}; }

OperatorSpec OperatorSpec::qram(const MemoryTable& memory) { return {Kind::QRam, memory.shape(), 0, memory}; }

std::string OperatorSpec::name() const {
    switch (kind_) {
    case Kind::ShiftLevel: return "shift(l=" + std::to_string(index_) + ")";
    case Kind::Coin: return "coin(k=" + std::to_string(index_) + ")";
    case Kind::LevelStepDown: return "step_down(l=" + std::to_string(index_) + ")";
    case Kind::LevelStepUp: return "step_up(l=" + std::to_string(index_) + ")";
    case Kind::Route: return "route";
    case Kind::Query: return "query";
    case Kind::Unroute: return "unroute";
    case Kind::QRam: return "qram";
    }
    return "unknown";
}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix mat(dim);
    for (std::size_t i = 0; i < dim; ++i) mat(i, i) = 1.0;
    return mat;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
    if (rhs.dim_ != dim_) throw DomainError("matrix dimension mismatch");
    DenseMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Amplitude lhs_ik = (*this)(i, k);
            if (lhs_ik == Amplitude{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) out(i, j) += lhs_ik * rhs(k, j);
        }
    }
    return out;
}

std::vector<Amplitude> DenseMatrix::operator*(const std::vector<Amplitude>& vec) const {
    if (vec.size() != dim_) throw DomainError("vector dimension mismatch");
    // Column-wise accumulation; zero components of `vec` are skipped.
    std::vector<Amplitude> out(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (vec[j] == Amplitude{}) continue;
        for (std::size_t i = 0; i < dim_; ++i) out[i] += (*this)(i, j) * vec[j];
    }
    return out;
}

std::size_t dense_dimension(const TreeShape& shape, std::size_t cap) {
    const unsigned n = shape.address_bits();
    const unsigned m = shape.data_bits();
    // D < 2^(2n + 2 + m); anything wider than 40 bits is far past any cap.
    if (2 * n + 2 + m > 40) throw ResourceError("dense dimension exceeds cap " + std::to_string(cap));
    const std::uint64_t dim = shape.node_count() * 2 * shape.leaf_count() * shape.data_limit();
    if (dim > cap) {
        throw ResourceError("dense dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    }
    return static_cast<std::size_t>(dim);
}

std::size_t dense_index(const TreeShape& shape, const BasisState& basis) {
    return static_cast<std::size_t>(((basis.node.flat_id() * 2 + basis.chirality) * shape.leaf_count() + basis.address) *
                                        shape.data_limit() +
                                    basis.data);
}

BasisState dense_basis(const TreeShape& shape, std::size_t index) {
    BasisState b;
    std::uint64_t rest = index;
    b.data = rest % shape.data_limit();
    rest /= shape.data_limit();
    b.address = rest % shape.leaf_count();
    rest /= shape.leaf_count();
    b.chirality = static_cast<std::uint8_t>(rest % 2);
    b.node = NodeIndex::from_flat_id(rest / 2);
    return b;
}

std::vector<Amplitude> to_dense(const SparseState& state, std::size_t cap) {
    std::vector<Amplitude> vec(dense_dimension(state.shape(), cap));
    for (const auto& [basis, amp] : state.entries()) vec[dense_index(state.shape(), basis)] = amp;
    return vec;
}

SparseState from_dense(const TreeShape& shape, const std::vector<Amplitude>& vec) {
    std::vector<SparseState::Entry> entries;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        if (vec[i] != Amplitude{}) entries.push_back({dense_basis(shape, i), vec[i]});
    }
    return SparseState(shape, std::move(entries));
}

DenseMatrix build_dense(const OperatorSpec& spec, std::size_t cap) {
    const TreeShape& shape = spec.shape();
    const std::size_t dim = dense_dimension(shape, cap);
    switch (spec.kind()) {
    case OperatorSpec::Kind::ShiftLevel: return dense_shift(shape, spec.index(), dim);
    case OperatorSpec::Kind::Coin: return dense_coin(shape, spec.index(), dim);
    case OperatorSpec::Kind::LevelStepDown: return dense_step_down(shape, spec.index(), dim);
    case OperatorSpec::Kind::LevelStepUp: return dense_step_up(shape, spec.index(), dim);
    case OperatorSpec::Kind::Route: return dense_route(shape, dim);
    case OperatorSpec::Kind::Query: return dense_query(*spec.memory(), dim);
    case OperatorSpec::Kind::Unroute: return dense_unroute(shape, dim);
    case OperatorSpec::Kind::QRam:
        return dense_unroute(shape, dim) * dense_query(*spec.memory(), dim) * dense_route(shape, dim);
    }
    throw std::logic_error("unhandled operator kind");
}

SparseState apply_sparse(const OperatorSpec& spec, const SparseState& state) {
    switch (spec.kind()) {
    case OperatorSpec::Kind::ShiftLevel: return apply_shift_level(state, spec.index());
    case OperatorSpec::Kind::Coin: return apply_coin(state, spec.index());
    case OperatorSpec::Kind::LevelStepDown: return level_step_down(state, spec.index());
    case OperatorSpec::Kind::LevelStepUp: return level_step_up(state, spec.index());
    case OperatorSpec::Kind::Route: return route(state);
    case OperatorSpec::Kind::Query: return query(state, *spec.memory());
    case OperatorSpec::Kind::Unroute: return unroute(state);
    case OperatorSpec::Kind::QRam: return unroute(query(route(state), *spec.memory()));
    }
    throw std::logic_error("unhandled operator kind");
}

double check_unitary(const DenseMatrix& mat) {
    const std::size_t dim = mat.dim();
    // (U^dagger U)_ij = sum_k conj(U_ki) U_kj, accumulated row by row over
    // the nonzero entries of U.
    DenseMatrix gram(dim);
    std::vector<std::size_t> nonzero;
    for (std::size_t k = 0; k < dim; ++k) {
        nonzero.clear();
        for (std::size_t j = 0; j < dim; ++j) {
            if (mat(k, j) != Amplitude{}) nonzero.push_back(j);
        }
        for (const auto i : nonzero) {
            const Amplitude left = std::conj(mat(k, i));
            for (const auto j : nonzero) gram(i, j) += left * mat(k, j);
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const Amplitude expected = i == j ? Amplitude{1.0, 0.0} : Amplitude{};
            worst = std::max(worst, std::abs(gram(i, j) - expected));
        }
    }
    return worst;
}

bool is_permutation_matrix(const DenseMatrix& mat) {
    const std::size_t dim = mat.dim();
    std::vector<unsigned> row_hits(dim, 0);
    for (std::size_t j = 0; j < dim; ++j) {
        unsigned column_hits = 0;
        for (std::size_t i = 0; i < dim; ++i) {
            const Amplitude value = mat(i, j);
            if (value == Amplitude{}) continue;
            if (value != Amplitude{1.0, 0.0}) return false;
            ++column_hits;
            ++row_hits[i];
        }
        if (column_hits != 1) return false;
    }
    return std::all_of(row_hits.begin(), row_hits.end(), [](unsigned hits) { return hits == 1; });
}

double check_equivalence(const OperatorSpec& spec, unsigned trials, std::uint64_t seed, std::size_t cap) {
    const DenseMatrix mat = build_dense(spec, cap);
    Rng rng(seed);
    double worst = 0.0;
    for (unsigned t = 0; t < trials; ++t) {
        const SparseState input = random_state(spec.shape(), 16, rng);
        const auto dense_out = mat * to_dense(input, cap);
        const auto sparse_out = to_dense(apply_sparse(spec, input), cap);
        for (std::size_t i = 0; i < dense_out.size(); ++i) {
            worst = std::max(worst, std::abs(dense_out[i] - sparse_out[i]));
        }
    }
    return worst;
}

double check_basis_equivalence(const OperatorSpec& spec, std::size_t cap) {
    const DenseMatrix mat = build_dense(spec, cap);
    const std::size_t dim = mat.dim();
    double worst = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        const SparseState basis(spec.shape(), {{dense_basis(spec.shape(), j), Amplitude{1.0, 0.0}}});
        const SparseState image = apply_sparse(spec, basis);
        for (std::size_t i = 0; i < dim; ++i) {
            worst = std::max(worst, std::abs(mat(i, j) - image.amplitude(dense_basis(spec.shape(), i))));
        }
    }
    return worst;
}

double check_adjoint(const TreeShape& shape, unsigned level, std::size_t cap) {
    const DenseMatrix up = build_dense(OperatorSpec::level_step_up(shape, level), cap);
    const DenseMatrix down_adjoint = build_dense(OperatorSpec::level_step_down(shape, level), cap).adjoint();
    double worst = 0.0;
    for (std::size_t i = 0; i < up.dim(); ++i) {
        for (std::size_t j = 0; j < up.dim(); ++j) worst = std::max(worst, std::abs(up(i, j) - down_adjoint(i, j)));
    }
    return worst;
}

std::vector<OperatorSpec> all_operator_specs(const MemoryTable& memory) {
    const TreeShape& shape = memory.shape();
    const unsigned n = shape.address_bits();
    std::vector<OperatorSpec> specs;
    for (unsigned l = 0; l < n; ++l) specs.push_back(OperatorSpec::shift_level(shape, l));
    for (unsigned k = 0; k <= n; ++k) specs.push_back(OperatorSpec::coin(shape, k));
    for (unsigned l = 0; l < n; ++l) specs.push_back(OperatorSpec::level_step_down(shape, l));
    for (unsigned l = 0; l < n; ++l) specs.push_back(OperatorSpec::level_step_up(shape, l));
    specs.push_back(OperatorSpec::route(shape));
    specs.push_back(OperatorSpec::query(memory));
    specs.push_back(OperatorSpec::unroute(shape));
    specs.push_back(OperatorSpec::qram(memory));
    return specs;
}

} // namespace qwqram

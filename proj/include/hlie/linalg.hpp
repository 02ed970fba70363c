#pragma once

// Exact dense linear algebra. Everything here is templated on the scalar so the
// same kernels run over Rational in the library and over small test types.
// Pivoting is deterministic: the first nonzero entry at or below the current row
// in the leftmost remaining column.

#include "hlie/errors.hpp"
#include "hlie/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hlie {

template <typename Scalar>
struct RowEchelon {
    MatrixX<Scalar> reduced;
    std::vector<Index> pivots;

    Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    RowEchelon<Scalar> out{m, {}};
    MatrixX<Scalar>& a = out.reduced;
    Index row = 0;
    for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
        Index pivot = row;
        while (pivot < a.rows() && a(pivot, col) == Scalar(0)) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != row) a.row(pivot).swap(a.row(row));
        const Scalar inv = Scalar(1) / a(row, col);
        for (Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (Index i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == Scalar(0)) continue;
            const Scalar factor = a(i, col);
            for (Index j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
    return rref(m).rank();
}

/// Basis of the right null space, one vector per free column, read off the RREF.
template <typename Derived>
std::vector<VectorX<typename Derived::Scalar>> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const auto echelon = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (Index p : echelon.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<VectorX<Scalar>> basis;
    for (Index free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        VectorX<Scalar> v = VectorX<Scalar>::Zero(m.cols());
        v(free) = Scalar(1);
        for (std::size_t r = 0; r < echelon.pivots.size(); ++r)
            v(echelon.pivots[r]) = -echelon.reduced(static_cast<Index>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One exact solution of m x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
template <typename DerivedM, typename DerivedB>
std::optional<VectorX<typename DerivedM::Scalar>> solve(const Eigen::MatrixBase<DerivedM>& m,
                                                        const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedM::Scalar;
    if (b.cols() != 1 || b.rows() != m.rows())
        throw UsageError("solve: right-hand side has " + std::to_string(b.rows()) + " rows, matrix has " +
                         std::to_string(m.rows()));
    MatrixX<Scalar> augmented(m.rows(), m.cols() + 1);
    augmented << m, b;
    const auto echelon = rref(augmented);
    if (!echelon.pivots.empty() && echelon.pivots.back() == m.cols()) return std::nullopt;
    VectorX<Scalar> x = VectorX<Scalar>::Zero(m.cols());
    for (std::size_t r = 0; r < echelon.pivots.size(); ++r)
        x(echelon.pivots[r]) = echelon.reduced(static_cast<Index>(r), m.cols());
    return x;
}

/// Columns of the result are the given vectors; `rows` fixes the shape when the list is empty.
template <typename Scalar>
MatrixX<Scalar> stack_columns(std::span<const VectorX<Scalar>> vectors, Index rows) {
    MatrixX<Scalar> m(rows, static_cast<Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != rows) throw UsageError("stack_columns: vector length mismatch");
        m.col(static_cast<Index>(j)) = vectors[j];
    }
    return m;
}

template <typename Scalar>
Index span_dimension(std::span<const VectorX<Scalar>> vectors) {
    if (vectors.empty()) return 0;
    return rank(stack_columns(vectors, vectors.front().size()));
}

/// True when every vector of `small` lies in span(`big`).
template <typename Scalar>
bool span_contains(std::span<const VectorX<Scalar>> big, std::span<const VectorX<Scalar>> small) {
    if (small.empty()) return true;
    std::vector<VectorX<Scalar>> all(big.begin(), big.end());
    all.insert(all.end(), small.begin(), small.end());
    return span_dimension<Scalar>(all) == span_dimension<Scalar>(big);
}

/// dim span(big) - dim span(small). Requires span(small) to lie inside span(big); a
/// violation means a differential did not square to zero upstream.
template <typename Scalar>
Index quotient_dimension(std::span<const VectorX<Scalar>> big, std::span<const VectorX<Scalar>> small) {
    if (!big.empty() && !small.empty() && big.front().size() != small.front().size())
        throw UsageError("quotient_dimension: ambient dimensions differ");
    if (!span_contains(big, small))
        throw ContractError("quotient_dimension: subspace is not contained in the ambient span");
    return span_dimension(big) - span_dimension(small);
}

/// A linearly independent subfamily spanning the same space (first-come order).
template <typename Scalar>
std::vector<VectorX<Scalar>> independent_subset(std::span<const VectorX<Scalar>> vectors) {
    if (vectors.empty()) return {};
    const auto echelon = rref(stack_columns(vectors, vectors.front().size()));
    std::vector<VectorX<Scalar>> out;
    for (Index p : echelon.pivots) out.push_back(vectors[static_cast<std::size_t>(p)]);
    return out;
}

/// Exact inverse of a square matrix, or nullopt when it is singular.
template <typename Derived>
std::optional<MatrixX<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols()) throw UsageError("inverse: matrix is not square");
    const Index n = m.rows();
    MatrixX<Scalar> augmented(n, 2 * n);
    augmented << m, MatrixX<Scalar>::Identity(n, n);
    const auto echelon = rref(augmented);
    if (echelon.rank() < n || (n > 0 && echelon.pivots[static_cast<std::size_t>(n - 1)] != n - 1)) return std::nullopt;
    return MatrixX<Scalar>(echelon.reduced.rightCols(n));
}

} // namespace hlie

#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace hlie {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Rational>;
using Vector = VectorX<Rational>;
using Index = Eigen::Index;

/// Parses "p/q" or "p" (optional leading sign on p). Throws UsageError on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Standard basis vector e_i of length n.
Vector basis_vector(Index n, Index i);

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != 0) return false;
    return true;
}

/// Shape and entries both equal (Eigen's operator== requires equal shapes).
inline bool matrices_equal(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

/// Exact integer power; m must be square. power(m, 0) is the identity.
Matrix matrix_power(const Matrix& m, int exponent);

} // namespace hlie

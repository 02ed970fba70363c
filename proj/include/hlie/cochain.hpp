#pragma once

// Alternating multilinear cochains stored by their values on increasing basis
// tuples, the alpha-equivariant subspaces C^n_Hom, and the Nijenhuis-Richardson
// bracket on endomorphism-valued cochains.

#include "hlie/combinatorics.hpp"
#include "hlie/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hlie {

/// An alternating n-linear map from a d-dimensional space into a t-dimensional one.
///
/// Column c of coeffs() is f(e_{i_1},...,e_{i_n}) for the c-th increasing tuple
/// (i_1 < ... < i_n) in lexicographic order, so coeffs() is t x binomial(d, n).
/// Arity 0 is allowed: the single column is the value of a 0-cochain, i.e. a vector.
class Cochain {
public:
    Cochain() = default;
    Cochain(int arity, int source_dim, Matrix coeffs);

    static Cochain zero(int arity, int source_dim, Index target_dim);
    /// Inverse of flatten().
    static Cochain from_flat(int arity, int source_dim, Index target_dim, const Vector& flat);
    /// Wraps a vector as an arity-0 cochain.
    static Cochain constant(int source_dim, const Vector& value);

    int arity() const { return arity_; }
    int source_dim() const { return source_dim_; }
    Index target_dim() const { return coeffs_.rows(); }
    const Matrix& coeffs() const { return coeffs_; }

    /// f(e_{i_1},...,e_{i_n}) for an arbitrary index order; zero on a repeated index.
    Vector on_basis(std::span<const int> indices) const;

    /// Column-major concatenation of coeffs(): length target_dim * binomial(d, n).
    Vector flatten() const;
    Index flat_size() const { return coeffs_.size(); }

    bool is_zero() const { return hlie::is_zero(coeffs_); }

    Cochain& operator+=(const Cochain& other);
    Cochain& operator-=(const Cochain& other);
    Cochain& operator*=(const Rational& s);

    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Rational& s, Cochain a) { return a *= s; }
    friend Cochain operator-(Cochain a) { return a *= Rational(-1); }
    friend bool operator==(const Cochain& a, const Cochain& b);

private:
    void require_same_shape(const Cochain& other) const;

    int arity_ = 0;
    int source_dim_ = 0;
    Matrix coeffs_;
};

/// A 0-cochain: a single vector of the coefficient space.
struct ZeroCochain {
    Vector value;
};

/// Determinant by exact elimination.
Rational determinant(const Matrix& m);

/// f(args...) by multilinear alternating extension: the coefficient of column S is the
/// minor of the argument matrix on rows S.
Vector evaluate(const Cochain& f, std::span<const Vector> args);

/// The compound matrix of alpha: its (I, J) entry is the minor on rows I and columns J,
/// so it represents alpha^{wedge n} on the combination basis. Requires 0 <= n <= d.
Matrix exterior_power_matrix(const Matrix& alpha, int n);

/// True when beta o f = f o alpha^{wedge n}.
bool is_equivariant(const Cochain& f, const Matrix& alpha, const Matrix& beta);

/// Basis of C^n_Hom = { f : Lambda^n(K^d) -> K^t | beta o f = f o alpha^{wedge n} }.
/// For n = 0 this is the fixed space of beta (as arity-0 cochains); for n > d it is empty.
std::vector<Cochain> hom_cochain_basis(const Matrix& alpha, const Matrix& beta, int n);

/// The twisted Gerstenhaber-type composition P <> Q. With P of arity m+1 and Q of
/// arity n+1 the result has arity m+n+1:
///   sum over (n+1,m)-shuffles of sign * P(Q(x_s1..x_s(n+1)), alpha^n x_s(n+2), ...).
Cochain nr_diamond(const Cochain& p, const Cochain& q, const Matrix& alpha);

/// [P,Q] = P<>Q - (-1)^{mn} Q<>P, with m, n the degrees (arity - 1).
Cochain nr_bracket(const Cochain& p, const Cochain& q, const Matrix& alpha);

/// Degree of a cochain in the shifted graded Lie algebra: arity - 1.
inline int nr_degree(const Cochain& f) { return f.arity() - 1; }

/// Extends f : Lambda^n g -> V to an endomorphism cochain on g (+) V that is (0, f) on
/// g-arguments and zero as soon as any argument lies in V.
Cochain lift_to_product(const Cochain& f, int g_dim, Index v_dim);

struct McResiduals {
    Cochain first;  // [mu1, mu1] (or its twisted version)
    Cochain second; // [mu2, mu2]
    Cochain mixed;  // [mu1, mu2]

    bool is_mc() const { return first.is_zero() && second.is_zero() && mixed.is_zero(); }
};

/// Maurer-Cartan residuals of a pair of 2-cochains in the graded Lie algebra of
/// equivariant cochains with zero differentials, or, when `base` = (theta1, theta2) is
/// given, in the algebra twisted by the base (d_k = [theta_k, -]):
///   (2[theta1,mu1] + [mu1,mu1], 2[theta2,mu2] + [mu2,mu2], [theta1,mu2] + [theta2,mu1] + [mu1,mu2]).
/// Throws PreconditionError when a cochain is not alpha-equivariant or the base is not
/// itself a Maurer-Cartan pair.
McResiduals is_mc_pair(const Cochain& mu1, const Cochain& mu2, const Matrix& alpha,
                       const std::optional<std::pair<Cochain, Cochain>>& base = std::nullopt);

} // namespace hlie

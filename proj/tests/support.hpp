#pragma once

// Shared test helpers: seeded generators for rationals, matrices and cochains, and
// naive reference implementations that avoid the library's own code paths (they
// expand multilinear maps over all index tuples and all permutations).

#include "hlie/algebra.hpp"
#include "hlie/cochain.hpp"
#include "hlie/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace hlie::test {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    /// Small rationals with denominators up to 3; zero with probability `zero_p`.
    Rational rational(double zero_p = 0.3) {
        if (coin(zero_p)) return 0;
        return Rational(integer(-3, 3), integer(1, 3));
    }

    Matrix matrix(Index rows, Index cols, double zero_p = 0.3) {
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = rational(zero_p);
        return m;
    }

    Vector vector(Index n, double zero_p = 0.3) { return matrix(n, 1, zero_p).col(0); }

    /// Random element of span(basis); the zero cochain of the given shape if the basis is empty.
    Cochain combination(const std::vector<Cochain>& basis, int arity, int d, Index t) {
        Cochain out = Cochain::zero(arity, d, t);
        for (const Cochain& b : basis) out += rational(0.2) * b;
        return out;
    }

    CompatibleCochain combination(const std::vector<CompatibleCochain>& basis, int degree, int d, Index t) {
        CompatibleCochain out = CompatibleCochain::zero(degree, d, t);
        for (const CompatibleCochain& b : basis) out += rational(0.2) * b;
        return out;
    }

    /// Random skew bracket on K^d.
    StructureConstants bracket(int d, double zero_p = 0.5) {
        return Cochain(2, d, matrix(d, static_cast<Index>(d * (d - 1) / 2), zero_p));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline Vector vec(std::initializer_list<Rational> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index k = 0;
    for (const Rational& x : xs) v(k++) = x;
    return v;
}

inline Vector e(Index n, Index i) { return basis_vector(n, i); }

// ---------------------------------------------------------------------------
// Naive oracles

/// Sign of a permutation by counting transpositions while sorting a copy.
inline int naive_sign(std::vector<int> p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != static_cast<int>(i)) {
            std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
            sign = -sign;
        }
    return sign;
}

/// Value on an arbitrary basis tuple, found by scanning the stored columns.
inline Vector naive_on_basis(const Cochain& f, const std::vector<int>& tuple) {
    std::vector<int> order(tuple.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return tuple[static_cast<std::size_t>(a)] < tuple[static_cast<std::size_t>(b)]; });
    std::vector<int> sorted;
    for (int k : order) sorted.push_back(tuple[static_cast<std::size_t>(k)]);
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1]) return Vector::Zero(f.target_dim());
    const auto combos = combinations(f.source_dim(), f.arity());
    for (std::size_t c = 0; c < combos.size(); ++c)
        if (combos[c] == sorted) return naive_sign(order) * Vector(f.coeffs().col(static_cast<Index>(c)));
    return Vector::Zero(f.target_dim());
}

/// f(v_1, .., v_n) by expanding every argument over the basis (d^n terms).
inline Vector naive_evaluate(const Cochain& f, const std::vector<Vector>& args) {
    const int d = f.source_dim();
    const int n = static_cast<int>(args.size());
    Vector out = Vector::Zero(f.target_dim());
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        Rational coeff = 1;
        for (int k = 0; k < n && coeff != 0; ++k) coeff *= args[static_cast<std::size_t>(k)](idx[static_cast<std::size_t>(k)]);
        if (coeff != 0) out += coeff * naive_on_basis(f, idx);
        int k = n - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == d) idx[static_cast<std::size_t>(k--)] = 0;
        if (k < 0) break;
    }
    return out;
}

/// Leibniz determinant.
inline Rational naive_det(const Matrix& m) {
    const auto n = static_cast<int>(m.rows());
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    Rational det = 0;
    do {
        Rational term = naive_sign(p);
        for (int i = 0; i < n; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
        det += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return det;
}

/// A cochain from a callback on increasing tuples.
template <typename F>
Cochain tabulate(int arity, int d, Index t, F&& value) {
    const auto combos = combinations(d, arity);
    Matrix m(t, static_cast<Index>(combos.size()));
    for (std::size_t c = 0; c < combos.size(); ++c) m.col(static_cast<Index>(c)) = value(combos[c]);
    return Cochain(arity, d, std::move(m));
}

inline long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// P <> Q averaged over the full symmetric group instead of shuffles:
///   1 / ((n+1)! m!) sum_sigma sgn(sigma) P(Q(x_s1..x_s(n+1)), alpha^n x_s(n+2), ..).
inline Cochain naive_diamond(const Cochain& p, const Cochain& q, const Matrix& alpha) {
    const int m = p.arity() - 1;
    const int n = q.arity() - 1;
    const int d = p.source_dim();
    const int total = m + n + 1;
    const Matrix an = matrix_power(alpha, n);
    const Rational scale(1, factorial(n + 1) * factorial(m));
    return tabulate(total, d, p.target_dim(), [&](const std::vector<int>& tuple) {
        std::vector<int> s(static_cast<std::size_t>(total));
        std::iota(s.begin(), s.end(), 0);
        Vector sum = Vector::Zero(p.target_dim());
        do {
            std::vector<Vector> inner;
            for (int k = 0; k <= n; ++k) inner.push_back(e(d, tuple[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])]));
            std::vector<Vector> outer{naive_evaluate(q, inner)};
            for (int k = n + 1; k < total; ++k)
                outer.push_back(an.col(tuple[static_cast<std::size_t>(s[static_cast<std::size_t>(k)])]));
            sum += naive_sign(s) * naive_evaluate(p, outer);
        } while (std::next_permutation(s.begin(), s.end()));
        return Vector(scale * sum);
    });
}

inline Cochain naive_bracket(const Cochain& p, const Cochain& q, const Matrix& alpha) {
    const int m = p.arity() - 1;
    const int n = q.arity() - 1;
    Cochain out = naive_diamond(p, q, alpha);
    out -= ((m * n) % 2 == 0 ? Rational(1) : Rational(-1)) * naive_diamond(q, p, alpha);
    return out;
}

/// The twisted Chevalley-Eilenberg formula evaluated term by term on basis tuples.
inline Cochain naive_ce(const HomLieAlgebra& l, const Representation& v, const Cochain& f) {
    const int d = l.dim();
    const int n = f.arity();
    const Matrix a = l.alpha();
    if (n == 0)
        return tabulate(1, d, v.vdim(), [&](const std::vector<int>& t) {
            return Vector(v.action_matrix(0, e(d, t[0])) * f.coeffs().col(0));
        });
    const Matrix an1 = matrix_power(a, n - 1);
    return tabulate(n + 1, d, v.vdim(), [&](const std::vector<int>& t) {
        std::vector<Vector> x;
        for (int k : t) x.push_back(e(d, k));
        Vector sum = Vector::Zero(v.vdim());
        for (int i = 0; i <= n; ++i) {
            std::vector<Vector> rest;
            for (int k = 0; k <= n; ++k)
                if (k != i) rest.push_back(x[static_cast<std::size_t>(k)]);
            const Rational sign = i % 2 == 0 ? 1 : -1; // (-1)^{(i+1)+1} with 1-based i
            sum += sign * (v.action_matrix(0, an1 * x[static_cast<std::size_t>(i)]) * naive_evaluate(f, rest));
        }
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                std::vector<Vector> args{l(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)])};
                for (int k = 0; k <= n; ++k)
                    if (k != i && k != j) args.push_back(a * x[static_cast<std::size_t>(k)]);
                const Rational sign = (i + j) % 2 == 0 ? 1 : -1;
                sum += sign * naive_evaluate(f, args);
            }
        return sum;
    });
}

/// Hom-Jacobi by direct expansion: [alpha x,[y,z]] + cyclic, on basis triples.
inline bool naive_hom_jacobi(const Matrix& alpha, const StructureConstants& mu) {
    const int d = static_cast<int>(alpha.rows());
    auto br = [&](const Vector& x, const Vector& y) { return naive_evaluate(mu, {x, y}); };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                const Vector x = e(d, i), y = e(d, j), z = e(d, k);
                const Vector jac = br(alpha * x, br(y, z)) + br(alpha * y, br(z, x)) + br(alpha * z, br(x, y));
                if (!is_zero(jac)) return false;
            }
    return true;
}

inline std::string fixture_path(const std::string& name) { return std::string(HLIE_FIXTURE_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(HLIE_GOLDEN_DIR) + "/" + name; }

} // namespace hlie::test

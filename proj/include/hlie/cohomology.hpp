#pragma once

// Chevalley-Eilenberg cohomology of a Hom-Lie algebra, the compatible complex
// (C*_cHom, delta_cHom), derivations, and the comparison morphism into the cohomology
// of the sum algebra.

#include "hlie/algebra.hpp"
#include "hlie/cochain.hpp"

#include <vector>

namespace hlie {

/// delta_Hom for (g, [,], alpha) with coefficients in (V, ., beta):
///   (delta v)(x) = x . v                                           (arity 0)
///   (delta f)(x_1..x_{n+1}) = sum_i (-1)^{i+1} alpha^{n-1}(x_i) . f(.. ^x_i ..)
///       + sum_{i<j} (-1)^{i+j} f([x_i,x_j], alpha x_1, .. ^ .. ^ .., alpha x_{n+1}).
class CeDifferential {
public:
    /// Verifies the algebra and the representation unless `validate` is false; throws
    /// InvalidStructureError on failure.
    CeDifferential(HomLieAlgebra l, Representation v, bool validate = true);

    const HomLieAlgebra& algebra() const { return algebra_; }
    const Representation& representation() const { return rep_; }

    /// Throws PreconditionError when f is not equivariant.
    Cochain apply(const Cochain& f) const;
    /// The formula with no membership check; used to assemble matrices on known bases.
    Cochain apply_unchecked(const Cochain& f) const;

private:
    HomLieAlgebra algebra_;
    Representation rep_;
};

Cochain ce_coboundary(const HomLieAlgebra& l, const Representation& v, const Cochain& f);

/// An element of C^n_cHom: n components of arity n for n >= 1, or a single arity-0
/// component for n = 0.
struct CompatibleCochain {
    int degree = 0;
    std::vector<Cochain> components;

    static CompatibleCochain zero(int degree, int source_dim, Index target_dim);
    Vector flatten() const;
    static CompatibleCochain from_flat(int degree, int source_dim, Index target_dim, const Vector& flat);
    bool is_zero() const;

    friend bool operator==(const CompatibleCochain&, const CompatibleCochain&) = default;
    CompatibleCochain& operator+=(const CompatibleCochain& other);
    CompatibleCochain& operator-=(const CompatibleCochain& other);
    CompatibleCochain& operator*=(const Rational& s);
    friend CompatibleCochain operator+(CompatibleCochain a, const CompatibleCochain& b) { return a += b; }
    friend CompatibleCochain operator-(CompatibleCochain a, const CompatibleCochain& b) { return a -= b; }
    friend CompatibleCochain operator*(const Rational& s, CompatibleCochain a) { return a *= s; }
};

/// delta_cHom(f_1..f_n) = (1d f_1, .., 1d f_i + 2d f_{i-1}, .., 2d f_n) and
/// delta_cHom(v)(x) = x ._1 v (= x ._2 v on C^0_cHom).
class CompatibleDifferential {
public:
    CompatibleDifferential(const CompatibleHomLieAlgebra& c, const Representation& v, bool validate = true);

    const CeDifferential& first() const { return first_; }
    const CeDifferential& second() const { return second_; }

    /// Throws PreconditionError for a 0-cochain outside C^0_cHom or a non-equivariant component.
    CompatibleCochain apply(const CompatibleCochain& f) const;
    CompatibleCochain apply_unchecked(const CompatibleCochain& f) const;

private:
    CeDifferential first_;
    CeDifferential second_;
};

CompatibleCochain compatible_coboundary(const CompatibleHomLieAlgebra& c, const Representation& v,
                                        const CompatibleCochain& f);

/// True when v is beta-fixed and x ._1 v = x ._2 v for every basis x.
bool in_compatible_zero_space(const Representation& v, const Vector& value);

/// Basis of C^n_cHom: n copies of one fixed basis of C^n_Hom (copy-major), or the
/// C^0_cHom subspace for n = 0.
std::vector<CompatibleCochain> compatible_cochain_basis(const Matrix& alpha, const Representation& v, int n);

enum class Flavor { Plain, Compatible };

struct CohomologyReport {
    Flavor flavor = Flavor::Plain;
    int degree = 0;
    int source_dim = 0;
    Index target_dim = 0;
    Index dim_cochains = 0;
    Index dim_cocycles = 0;
    Index dim_coboundaries = 0;
    Index dim_cohomology = 0;
    // Plain-flavor entries carry a single component.
    std::vector<CompatibleCochain> cocycle_basis;
    std::vector<CompatibleCochain> coboundary_basis;
    /// Cocycles completing coboundary_basis to a basis of Z^n; their classes form the
    /// basis of H^n used for coordinates.
    std::vector<CompatibleCochain> cohomology_basis;

    /// Coordinates of the class of z in cohomology_basis. Throws PreconditionError when z
    /// is not a cocycle.
    Vector class_coordinates(const CompatibleCochain& z) const;
    /// Same, for single-component (plain) cocycles.
    Vector class_coordinates(const Cochain& z) const;
    /// A coboundary-free representative: sum of coords[k] * cohomology_basis[k].
    CompatibleCochain representative(const Vector& coords) const;
};

CohomologyReport cohomology_dimensions(const HomLieAlgebra& l, const Representation& v, int n);
CohomologyReport cohomology_dimensions(const CompatibleHomLieAlgebra& c, const Representation& v, int n);

struct DerivationSpace {
    std::vector<Matrix> derivations; // V x g matrices
    std::vector<Matrix> inner;
    Index outer_dim = 0;
};

/// Derivations D : g -> V (beta D = D alpha, D[x,y]_k = x ._k Dy - y ._k Dx for every
/// bracket) and inner derivations x |-> x ._1 v, v in C^0_cHom, solved directly from the
/// defining identities.
DerivationSpace derivation_space(const CompatibleHomLieAlgebra& c, const Representation& v);
DerivationSpace derivation_space(const HomLieAlgebra& l, const Representation& v);

/// Delta_0(v) = v / 2, Delta_n(f_1..f_n) = f_1 + .. + f_n, into C^n_Hom(g_+, V_+) where
/// g_+ = (g, [,]_1 + [,]_2, alpha) and V_+ = (V, ._1 + ._2, beta).
Cochain comparison_map(const CompatibleCochain& f);

} // namespace hlie

#pragma once

// Abelian extensions 0 -> V -> h -> g -> 0 of a compatible Hom-Lie algebra, held in
// split coordinates: the total algebra h, the inclusion i, the projection j and a
// splitting s with alpha_h s = s alpha.

#include "hlie/algebra.hpp"
#include "hlie/cohomology.hpp"

#include <optional>
#include <utility>

namespace hlie {

struct ExtensionCocycle {
    Cochain f1;
    Cochain f2;

    CompatibleCochain as_cochain() const { return {2, {f1, f2}}; }
    friend bool operator==(const ExtensionCocycle&, const ExtensionCocycle&) = default;
};

class AbelianExtension {
public:
    /// Checks the exactness and splitting data and throws InvalidStructureError (a
    /// PreconditionError) naming every failing condition.
    AbelianExtension(CompatibleHomLieAlgebra base, Matrix beta, CompatibleHomLieAlgebra total, Matrix inclusion,
                     Matrix projection, Matrix splitting);

    const CompatibleHomLieAlgebra& base() const { return base_; }
    const Matrix& beta() const { return beta_; }
    Index vdim() const { return beta_.rows(); }
    const CompatibleHomLieAlgebra& total() const { return total_; }
    const Matrix& inclusion() const { return inclusion_; }
    const Matrix& projection() const { return projection_; }
    const Matrix& splitting() const { return splitting_; }

    /// The same extension with another splitting.
    AbelianExtension with_splitting(Matrix splitting) const;

    /// Rows of [s | i]^{-1} giving the V-coordinate of an element of h.
    Matrix fiber_coordinates() const;

private:
    CompatibleHomLieAlgebra base_;
    Matrix beta_;
    CompatibleHomLieAlgebra total_;
    Matrix inclusion_;
    Matrix projection_;
    Matrix splitting_;
};

/// The checks run by the AbelianExtension constructor, without throwing: "shapes",
/// "exactness", "splitting", "alpha-splitting", "alpha-inclusion", "alpha-projection",
/// "projection-morphism[k]", "abelian-fiber[k]", and the total algebra's own checks
/// prefixed "total.".
ValidationReport verify_extension(const CompatibleHomLieAlgebra& base, const Matrix& beta,
                                  const CompatibleHomLieAlgebra& total, const Matrix& inclusion,
                                  const Matrix& projection, const Matrix& splitting);

/// g (+) V with [(x,u),(y,v)]_k = ([x,y]_k, x ._k v - y ._k u + f_k(x,y)), twist
/// alpha (+) beta, and the canonical i, j, s. Throws PreconditionError unless z is a
/// 2-cocycle of the compatible complex.
AbelianExtension build_extension(const CompatibleHomLieAlgebra& c, const Representation& rep, const ExtensionCocycle& z);

/// x ._k v = p_V [s x, i v]_k and f_k(x,y) = p_V [s x, s y]_k.
std::pair<Representation, ExtensionCocycle> extract_cocycle(const AbelianExtension& e);

/// A morphism phi : h -> h' with j' phi = j, phi i = i', phi alpha_h = alpha_h' phi, of the
/// form phi(s x + i v) = s' x + i'(v + tau x) where f - f' = delta_cHom(tau); nullopt when
/// no such tau exists. Throws UsageError if the two extensions do not share base, fiber
/// and induced representation.
std::optional<Matrix> check_equivalence(const AbelianExtension& e, const AbelianExtension& e_prime);

/// Class of the extracted cocycle in the H^2_cHom(g, V) basis of cohomology_dimensions.
Vector ext_class(const AbelianExtension& e);

} // namespace hlie

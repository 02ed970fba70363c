#pragma once

// Linear, infinitesimal and finite-order deformations of a compatible Hom-Lie algebra,
// Nijenhuis-generated trivial deformations, obstruction cochains and extensibility.
//
// Brackets are viewed as arity-2 endomorphism cochains; every bracket below is the
// Nijenhuis-Richardson bracket with the algebra's twist.

#include "hlie/algebra.hpp"
#include "hlie/cochain.hpp"
#include "hlie/cohomology.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hlie {

/// (omega1, omega2): the deformation is ([,]_1 + t omega1, [,]_2 + t omega2).
struct LinearGenerator {
    Cochain omega1;
    Cochain omega2;

    CompatibleCochain as_cochain() const { return {2, {omega1, omega2}}; }
};

struct LinearGeneratorReport {
    // Cocycle part: [mu1,omega1], [mu2,omega2], [mu1,omega2] + [mu2,omega1].
    Cochain first;
    Cochain second;
    Cochain mixed;
    // Structure part: [omega1,omega1], [omega2,omega2], [omega1,omega2].
    Cochain omega_first;
    Cochain omega_second;
    Cochain omega_mixed;

    bool is_cocycle = false;
    bool is_compatible_structure = false;

    bool generates_deformation() const { return is_cocycle && is_compatible_structure; }
};

/// Throws InvalidStructureError for an invalid base, PreconditionError for a
/// non-equivariant omega, and ContractError if the cocycle residuals disagree with
/// -delta_cHom(omega).
LinearGeneratorReport check_linear_generator(const CompatibleHomLieAlgebra& c, const LinearGenerator& g);

/// omega_i(x,y) = [Nx,y]_i + [x,Ny]_i - N[x,y]_i. Throws InvalidStructureError unless N
/// is Nijenhuis for both brackets.
LinearGenerator trivial_deformation_from_nijenhuis(const CompatibleHomLieAlgebra& c, const LinearOperator& n_op);

/// Checks, for i = 1, 2 and every basis pair:
///   "difference[i]":   omega_i - omega'_i = [x,Ny]_i + [Nx,y]_i - N[x,y]_i
///   "intertwining[i]": N omega_i(x,y) = omega'_i(x,Ny) + omega'_i(Nx,y) + [Nx,Ny]_i
///   "vanishing[i]":    omega'_i(Nx,Ny) = 0
/// and "coboundary": (omega) - (omega') = delta_cHom(N), witnesses indexed by component.
/// Throws PreconditionError when N does not commute with alpha.
ValidationReport check_linear_equivalence(const CompatibleHomLieAlgebra& c, const LinearGenerator& g,
                                          const LinearGenerator& g_prime, const Matrix& n);

/// Coordinates of [(omega1, omega2)] in the basis of H^2_cHom(g, g) chosen by
/// cohomology_dimensions. Throws PreconditionError for a non-cocycle.
Vector infinitesimal_class(const CompatibleHomLieAlgebra& c, const LinearGenerator& g);

/// mu_{k,t} = sum_{i=0}^p t^i mu_{k,i} with mu_{k,0} the base brackets.
class OrderPDeformation {
public:
    /// higher1[i-1] = mu_{1,i}, higher2[i-1] = mu_{2,i}, i = 1..p. Throws UsageError on
    /// shape problems (p < 1, unequal lengths, wrong arity or dimension) and
    /// PreconditionError on a non-equivariant coefficient, base brackets included.
    OrderPDeformation(CompatibleHomLieAlgebra base, std::vector<Cochain> higher1, std::vector<Cochain> higher2);

    int order() const { return static_cast<int>(coeffs1_.size()) - 1; }
    const CompatibleHomLieAlgebra& base() const { return base_; }
    const Matrix& alpha() const { return base_.alpha(); }
    /// mu_{which+1, i}, 0 <= i <= order().
    const Cochain& coefficient(int which, int i) const;

    /// Keeps coefficients up to t^p, 1 <= p <= order().
    OrderPDeformation truncated(int p) const;
    /// Appends t^{p+1} (mu1, mu2).
    OrderPDeformation extended(const Cochain& mu1, const Cochain& mu2) const;

private:
    CompatibleHomLieAlgebra base_;
    std::vector<Cochain> coeffs1_;
    std::vector<Cochain> coeffs2_;
};

/// Residual triple at t^n.
struct OrderResidual {
    int n = 0;
    Cochain first;
    Cochain second;
    Cochain mixed;

    bool is_zero() const { return first.is_zero() && second.is_zero() && mixed.is_zero(); }
};

struct OrderPReport {
    /// 1d mu_{1,n} - 1/2 sum [mu_{1,i},mu_{1,j}], 2d mu_{2,n} - 1/2 sum [mu_{2,i},mu_{2,j}],
    /// 1d mu_{2,n} + 2d mu_{1,n} - sum [mu_{1,i},mu_{2,j}]  (i + j = n, i, j >= 1).
    std::vector<OrderResidual> identities;
    /// Coefficients of t^n in [mu_{1,t},mu_{1,t}], [mu_{2,t},mu_{2,t}], [mu_{1,t},mu_{2,t}].
    std::vector<OrderResidual> truncated_brackets;
    /// The two paths are related by [mu,f] = -delta f on 2-cochains: for n >= 1 the bracket
    /// coefficients are (-2, -2, -1) times the identity residuals, for n = 0 (-1, -1, -1/2).
    bool paths_agree = false;

    bool passed() const;
    /// Smallest n with a nonzero identity residual.
    std::optional<int> first_failure() const;
};

OrderPReport verify_order_p(const OrderPDeformation& d);

/// (1/2 sum [mu_{1,i},mu_{1,j}], sum [mu_{1,i},mu_{2,j}], 1/2 sum [mu_{2,i},mu_{2,j}]) over
/// i + j = p + 1, i, j >= 1. Throws PreconditionError when verify_order_p fails and
/// ContractError if delta_cHom of the result is nonzero.
CompatibleCochain obstruction(const OrderPDeformation& d);

/// A pair (mu_{1,p+1}, mu_{2,p+1}) with delta_cHom of it equal to the obstruction, or
/// nullopt when the obstruction class is nonzero. The extended deformation is verified
/// before returning (ContractError otherwise).
std::optional<std::pair<Cochain, Cochain>> is_extensible(const OrderPDeformation& d);

/// The deformation obtained by transporting both brackets along the formal
/// automorphism id + tN, truncated at t^p:
///   mu_{k,m} = (-N)^m mu_k + (-N)^{m-1}(mu_k(N.,.) + mu_k(.,N.)) + (-N)^{m-2} mu_k(N.,N.).
/// Every truncation is a valid order-p deformation when N commutes with alpha.
OrderPDeformation transported_deformation(const CompatibleHomLieAlgebra& c, const Matrix& n, int p);

} // namespace hlie

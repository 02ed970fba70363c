#pragma once

// Finite-dimensional Hom-Lie algebras given by structure constants, compatible pairs of
// them, representations, and Nijenhuis / Rota-Baxter operators.
//
// A bracket is stored as an arity-2 Cochain: column c holds [e_i, e_j] for the c-th pair
// i < j, so skew-symmetry holds by construction. Twist matrices act on column
// coordinates: alpha(e_j) = sum_i alpha(i, j) e_i.
//
// None of these types enforces the defining identities. The verify_* functions evaluate
// them on basis tuples and report every violation.

#include "hlie/cochain.hpp"
#include "hlie/errors.hpp"
#include "hlie/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hlie {

using StructureConstants = Cochain;

struct BracketEntry {
    int i;
    int j;
    Vector value; // [e_i, e_j], i < j
};

/// Structure constants from sparse entries; absent pairs bracket to zero. Throws
/// UsageError on i >= j, an out-of-range index, or a repeated pair.
StructureConstants structure_constants(int dim, const std::vector<BracketEntry>& entries);

class HomLieAlgebra {
public:
    HomLieAlgebra(Matrix alpha, StructureConstants bracket);

    int dim() const { return static_cast<int>(alpha_.rows()); }
    const Matrix& alpha() const { return alpha_; }
    const StructureConstants& bracket() const { return bracket_; }

    /// [x, y], expanded bilinearly over the structure constants.
    Vector operator()(const Vector& x, const Vector& y) const;
    Vector on_basis(int i, int j) const;

private:
    Matrix alpha_;
    StructureConstants bracket_;
};

class CompatibleHomLieAlgebra {
public:
    CompatibleHomLieAlgebra(Matrix alpha, StructureConstants bracket1, StructureConstants bracket2);

    int dim() const { return static_cast<int>(alpha_.rows()); }
    const Matrix& alpha() const { return alpha_; }
    const StructureConstants& bracket(int which) const { return which == 0 ? bracket1_ : bracket2_; }

    /// The Hom-Lie algebra (g, [,]_{which+1}, alpha); which is 0 or 1.
    HomLieAlgebra component(int which) const;

private:
    Matrix alpha_;
    StructureConstants bracket1_;
    StructureConstants bracket2_;
};

/// V with twist beta and one action per bracket of the base: actions[b][i] is the matrix
/// of v |-> e_i ._b v.
class Representation {
public:
    Representation(Matrix beta, std::vector<std::vector<Matrix>> actions);

    Index vdim() const { return beta_.rows(); }
    int base_dim() const { return static_cast<int>(actions_.front().size()); }
    int action_count() const { return static_cast<int>(actions_.size()); }
    const Matrix& beta() const { return beta_; }
    const std::vector<std::vector<Matrix>>& actions() const { return actions_; }

    /// Matrix of v |-> x ._which v.
    Matrix action_matrix(int which, const Vector& x) const;
    Vector act(int which, const Vector& x, const Vector& v) const { return action_matrix(which, x) * v; }

    /// The single-action representation (V, ._which, beta).
    Representation component(int which) const;

private:
    Matrix beta_;
    std::vector<std::vector<Matrix>> actions_;
};

Representation adjoint_representation(const HomLieAlgebra& l);
Representation adjoint_representation(const CompatibleHomLieAlgebra& c);
/// Zero actions (one table per bracket) on a space with twist beta.
Representation trivial_representation(int base_dim, int action_count, Matrix beta);

enum class OperatorKind { Nijenhuis, RotaBaxter };

struct LinearOperator {
    Matrix matrix;
    OperatorKind kind = OperatorKind::Nijenhuis;
    Rational weight = 0; // Rota-Baxter only

    static LinearOperator nijenhuis(Matrix m) { return {std::move(m), OperatorKind::Nijenhuis, 0}; }
    static LinearOperator rota_baxter(Matrix m, Rational w) { return {std::move(m), OperatorKind::RotaBaxter, std::move(w)}; }
};

struct Witness {
    std::vector<int> indices; // basis indices of the offending tuple
    Vector defect;            // nonzero left side minus right side
};

struct Check {
    std::string name;
    bool passed = true;
    std::vector<Witness> witnesses;
};

struct ValidationReport {
    std::vector<Check> checks;

    bool passed() const;
    const Check* find(const std::string& name) const;
    void append(const ValidationReport& other, const std::string& prefix = {});
};

/// Thrown when an operation's input fails verification; carries the failing report.
class InvalidStructureError : public PreconditionError {
public:
    InvalidStructureError(const std::string& what, ValidationReport report)
        : PreconditionError(what), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Checks are named: "multiplicativity", "hom-jacobi", and for compatible structures
// "multiplicativity[k]", "hom-jacobi[k]" (k = 1, 2) and "compatibility".
ValidationReport verify_structure(const HomLieAlgebra& l);
ValidationReport verify_structure(const CompatibleHomLieAlgebra& c);
/// Representation identities: "equivariance", "module"; with two actions indexed by
/// bracket, plus "mixed-module".
ValidationReport verify_structure(const HomLieAlgebra& l, const Representation& v);
ValidationReport verify_structure(const CompatibleHomLieAlgebra& c, const Representation& v);

HomLieAlgebra sum_bracket(const CompatibleHomLieAlgebra& c, const Rational& lambda, const Rational& eta);
/// (V, lambda ._1 + eta ._2, beta).
Representation sum_representation(const Representation& v, const Rational& lambda, const Rational& eta);

/// alpha^n o [,] with twist alpha^{n+1}.
HomLieAlgebra derived_structure(const HomLieAlgebra& l, int n);
CompatibleHomLieAlgebra derived_structure(const CompatibleHomLieAlgebra& c, int n);

/// g (+) V with twist alpha (+) beta and [(x,u),(y,v)]_k = ([x,y]_k, x ._k v - y ._k u).
CompatibleHomLieAlgebra semidirect_product(const CompatibleHomLieAlgebra& c, const Representation& v);
HomLieAlgebra semidirect_product(const HomLieAlgebra& l, const Representation& v);

/// Semidirect product with an extra V-valued 2-cocycle term f(x, y) in the bracket.
HomLieAlgebra twisted_semidirect(const HomLieAlgebra& l, const Representation& v, const Cochain& f);

/// Checks "alpha-commutation" and "nijenhuis" or "rota-baxter" (suffixed [k] per bracket
/// on a compatible carrier).
ValidationReport verify_operator(const HomLieAlgebra& l, const LinearOperator& op);
ValidationReport verify_operator(const CompatibleHomLieAlgebra& c, const LinearOperator& op);

/// [x,y]_N = [Nx,y] + [x,Ny] - N[x,y], or [x,y]_R = [Rx,y] + [x,Ry] + lambda[x,y].
/// Throws InvalidStructureError when the operator fails verification.
HomLieAlgebra induced_bracket(const HomLieAlgebra& l, const LinearOperator& op);

/// Bracket [Tx,y] + [x,Ty] + M[x,y], with no verification. M = -N gives the Nijenhuis
/// bracket, M = lambda id the Rota-Baxter one.
StructureConstants operator_bracket(const HomLieAlgebra& l, const Matrix& t, const Matrix& m);

struct RotaBaxterPair {
    ValidationReport report;
    std::optional<CompatibleHomLieAlgebra> induced;
};

/// Verifies r and s individually plus the pair identity
/// [Rx,Sy] + [Sx,Ry] = R([Sx,y] + [x,Sy]) + S([Rx,y] + [x,Ry]);
/// when everything passes, returns ([,]_R, [,]_S).
RotaBaxterPair rb_pair(const HomLieAlgebra& l, const LinearOperator& r, const LinearOperator& s);

/// -lambda id - R, same weight.
LinearOperator rb_companion(const LinearOperator& r);

} // namespace hlie

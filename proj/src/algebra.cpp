#include "hlie/algebra.hpp"

#include "hlie/cohomology.hpp"

#include <algorithm>
#include <functional>

namespace hlie {

namespace {

void require_square(const Matrix& m, Index n, const char* what) {
    if (m.rows() != n || m.cols() != n)
        throw UsageError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

void require_bracket(const StructureConstants& b, int dim) {
    if (b.arity() != 2 || b.source_dim() != dim || b.target_dim() != dim)
        throw UsageError("bracket must be an arity-2 cochain on the " + std::to_string(dim) + "-dimensional carrier");
}

// Bracket of two vectors straight from the stored constants c_{ij}, i < j.
Vector bracket_of(const StructureConstants& b, const Vector& x, const Vector& y) {
    const int d = b.source_dim();
    Vector out = Vector::Zero(d);
    int column = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j, ++column) {
            const Rational w = x(i) * y(j) - x(j) * y(i);
            if (w != 0) out += w * b.coeffs().col(column);
        }
    }
    return out;
}

using PairDefect = std::function<Vector(int, int)>;

// Runs an alternating bilinear identity over all pairs i < j.
Check check_pairs(std::string name, int dim, const PairDefect& defect) {
    Check check{std::move(name), true, {}};
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            Vector v = defect(i, j);
            if (!is_zero(v)) {
                check.passed = false;
                check.witnesses.push_back({{i, j}, std::move(v)});
            }
        }
    }
    return check;
}

Check check_triples(std::string name, int dim, const std::function<Vector(int, int, int)>& defect) {
    Check check{std::move(name), true, {}};
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                Vector v = defect(i, j, k);
                if (!is_zero(v)) {
                    check.passed = false;
                    check.witnesses.push_back({{i, j, k}, std::move(v)});
                }
            }
    return check;
}

std::string suffixed(const std::string& name, int which, bool indexed) {
    return indexed ? name + "[" + std::to_string(which + 1) + "]" : name;
}

Check multiplicativity(const HomLieAlgebra& l, std::string name) {
    const Matrix& a = l.alpha();
    return check_pairs(std::move(name), l.dim(), [&](int i, int j) {
        return Vector(a * l.on_basis(i, j) - l(a.col(i), a.col(j)));
    });
}

// [[x,y]_p, alpha z]_q + cyclic; p == q is the Hom-Jacobi identity.
Vector jacobiator(const HomLieAlgebra& inner, const HomLieAlgebra& outer, int i, int j, int k) {
    const Matrix& a = inner.alpha();
    return outer(inner.on_basis(i, j), a.col(k)) + outer(inner.on_basis(j, k), a.col(i)) +
           outer(inner.on_basis(k, i), a.col(j));
}

Check hom_jacobi(const HomLieAlgebra& l, std::string name) {
    return check_triples(std::move(name), l.dim(), [&](int i, int j, int k) { return jacobiator(l, l, i, j, k); });
}

void require_rep(const Representation& v, int dim, int actions) {
    if (v.base_dim() != dim) throw UsageError("representation acts on a carrier of different dimension");
    if (v.action_count() != actions)
        throw UsageError("representation has " + std::to_string(v.action_count()) + " action table(s), base has " +
                         std::to_string(actions) + " bracket(s)");
}

// beta(x . v) = alpha(x) . beta(v), witnesses (i, k) for basis x = e_i, v = f_k.
Check rep_equivariance(const HomLieAlgebra& l, const Representation& v, int which, std::string name) {
    Check check{std::move(name), true, {}};
    for (int i = 0; i < l.dim(); ++i) {
        const Matrix lhs = v.beta() * v.actions()[static_cast<std::size_t>(which)][static_cast<std::size_t>(i)];
        const Matrix rhs = v.action_matrix(which, l.alpha().col(i)) * v.beta();
        for (Index k = 0; k < v.vdim(); ++k) {
            Vector defect = lhs.col(k) - rhs.col(k);
            if (!is_zero(defect)) {
                check.passed = false;
                check.witnesses.push_back({{i, static_cast<int>(k)}, std::move(defect)});
            }
        }
    }
    return check;
}

// [x,y] . beta(v) = alpha(x) . (y . v) - alpha(y) . (x . v), witnesses (i, j, k).
Check rep_module(const HomLieAlgebra& l, const Representation& v, int which, std::string name) {
    Check check{std::move(name), true, {}};
    const Matrix& a = l.alpha();
    for (int i = 0; i < l.dim(); ++i)
        for (int j = i + 1; j < l.dim(); ++j) {
            const Matrix lhs = v.action_matrix(which, l.on_basis(i, j)) * v.beta();
            const Matrix rhs = v.action_matrix(which, a.col(i)) * v.action_matrix(which, basis_vector(l.dim(), j)) -
                               v.action_matrix(which, a.col(j)) * v.action_matrix(which, basis_vector(l.dim(), i));
            for (Index k = 0; k < v.vdim(); ++k) {
                Vector defect = lhs.col(k) - rhs.col(k);
                if (!is_zero(defect)) {
                    check.passed = false;
                    check.witnesses.push_back({{i, j, static_cast<int>(k)}, std::move(defect)});
                }
            }
        }
    return check;
}

Check rep_mixed(const CompatibleHomLieAlgebra& c, const Representation& v) {
    Check check{"mixed-module", true, {}};
    const HomLieAlgebra l1 = c.component(0);
    const HomLieAlgebra l2 = c.component(1);
    const Matrix& a = c.alpha();
    const int d = c.dim();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const Vector ei = basis_vector(d, i);
            const Vector ej = basis_vector(d, j);
            const Matrix lhs = (v.action_matrix(1, l1.on_basis(i, j)) + v.action_matrix(0, l2.on_basis(i, j))) * v.beta();
            const Matrix rhs = v.action_matrix(0, a.col(i)) * v.action_matrix(1, ej) -
                               v.action_matrix(1, a.col(j)) * v.action_matrix(0, ei) +
                               v.action_matrix(1, a.col(i)) * v.action_matrix(0, ej) -
                               v.action_matrix(0, a.col(j)) * v.action_matrix(1, ei);
            for (Index k = 0; k < v.vdim(); ++k) {
                Vector defect = lhs.col(k) - rhs.col(k);
                if (!is_zero(defect)) {
                    check.passed = false;
                    check.witnesses.push_back({{i, j, static_cast<int>(k)}, std::move(defect)});
                }
            }
        }
    return check;
}

// Semidirect bracket on g (+) V with an optional V-valued 2-cochain term.
StructureConstants semidirect_bracket(const StructureConstants& bracket, const Representation& v, int which,
                                      const Cochain* twist) {
    const int d = bracket.source_dim();
    const auto vd = static_cast<int>(v.vdim());
    const int total = d + vd;
    const auto pairs = combinations(total, 2);
    Matrix coeffs = Matrix::Zero(total, static_cast<Index>(pairs.size()));
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        const int p = pairs[c][0];
        const int q = pairs[c][1];
        const auto col = static_cast<Index>(c);
        if (q < d) {
            coeffs.block(0, col, d, 1) = bracket.coeffs().col(combination_rank(pairs[c], d));
            if (twist != nullptr) coeffs.block(d, col, vd, 1) = twist->on_basis(pairs[c]);
        } else if (p < d) {
            // [(e_p, 0), (0, f_k)] = (0, e_p . f_k)
            coeffs.block(d, col, vd, 1) = v.actions()[static_cast<std::size_t>(which)][static_cast<std::size_t>(p)].col(q - d);
        }
    }
    return Cochain(2, total, std::move(coeffs));
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

void append_operator_checks(ValidationReport& report, const HomLieAlgebra& l, const LinearOperator& op,
                            const std::string& suffix) {
    const Matrix& t = op.matrix;
    const bool nijenhuis = op.kind == OperatorKind::Nijenhuis;
    report.checks.push_back(check_pairs((nijenhuis ? "nijenhuis" : "rota-baxter") + suffix, l.dim(), [&](int i, int j) {
        const Vector x = basis_vector(l.dim(), i);
        const Vector y = basis_vector(l.dim(), j);
        const Vector xy = l.on_basis(i, j);
        Vector inner = l(t * x, y) + l(x, t * y);
        if (nijenhuis)
            inner -= t * xy;
        else
            inner += op.weight * xy;
        return Vector(l(t * x, t * y) - t * inner);
    }));
}

Check alpha_commutation(const Matrix& alpha, const Matrix& t, std::string name) {
    Check check{std::move(name), true, {}};
    const Matrix defect = alpha * t - t * alpha;
    for (Index i = 0; i < defect.cols(); ++i)
        if (!is_zero(defect.col(i))) {
            check.passed = false;
            check.witnesses.push_back({{static_cast<int>(i)}, defect.col(i)});
        }
    return check;
}

} // namespace

StructureConstants structure_constants(int dim, const std::vector<BracketEntry>& entries) {
    Matrix coeffs = Matrix::Zero(dim, binomial(dim, 2));
    std::vector<bool> seen(static_cast<std::size_t>(coeffs.cols()), false);
    for (const auto& e : entries) {
        if (e.i < 0 || e.j >= dim || e.i >= e.j)
            throw UsageError("bracket entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                             ") needs 0 <= i < j < " + std::to_string(dim));
        if (e.value.size() != dim) throw UsageError("bracket entry has wrong length");
        const int pair[2] = {e.i, e.j};
        const auto col = static_cast<std::size_t>(combination_rank(pair, dim));
        if (seen[col]) throw UsageError("bracket entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") repeated");
        seen[col] = true;
        coeffs.col(static_cast<Index>(col)) = e.value;
    }
    return Cochain(2, dim, std::move(coeffs));
}

HomLieAlgebra::HomLieAlgebra(Matrix alpha, StructureConstants bracket)
    : alpha_(std::move(alpha)), bracket_(std::move(bracket)) {
    require_square(alpha_, alpha_.rows(), "alpha");
    require_bracket(bracket_, dim());
}

Vector HomLieAlgebra::operator()(const Vector& x, const Vector& y) const { return bracket_of(bracket_, x, y); }

Vector HomLieAlgebra::on_basis(int i, int j) const {
    const int pair[2] = {i, j};
    return bracket_.on_basis(pair);
}

CompatibleHomLieAlgebra::CompatibleHomLieAlgebra(Matrix alpha, StructureConstants bracket1, StructureConstants bracket2)
    : alpha_(std::move(alpha)), bracket1_(std::move(bracket1)), bracket2_(std::move(bracket2)) {
    require_square(alpha_, alpha_.rows(), "alpha");
    require_bracket(bracket1_, dim());
    require_bracket(bracket2_, dim());
}

HomLieAlgebra CompatibleHomLieAlgebra::component(int which) const { return HomLieAlgebra(alpha_, bracket(which)); }

Representation::Representation(Matrix beta, std::vector<std::vector<Matrix>> actions)
    : beta_(std::move(beta)), actions_(std::move(actions)) {
    require_square(beta_, beta_.rows(), "beta");
    if (actions_.empty() || actions_.size() > 2) throw UsageError("representation needs one or two action tables");
    for (const auto& table : actions_) {
        if (table.size() != actions_.front().size()) throw UsageError("action tables cover different carriers");
        for (const auto& m : table) require_square(m, vdim(), "action matrix");
    }
}

Matrix Representation::action_matrix(int which, const Vector& x) const {
    const auto& table = actions_.at(static_cast<std::size_t>(which));
    if (x.size() != static_cast<Index>(table.size())) throw UsageError("action: element has wrong length");
    Matrix out = Matrix::Zero(vdim(), vdim());
    for (Index i = 0; i < x.size(); ++i)
        if (x(i) != 0) out += x(i) * table[static_cast<std::size_t>(i)];
    return out;
}

Representation Representation::component(int which) const {
    return Representation(beta_, {actions_.at(static_cast<std::size_t>(which))});
}

namespace {

std::vector<Matrix> adjoint_table(const HomLieAlgebra& l) {
    std::vector<Matrix> table;
    for (int i = 0; i < l.dim(); ++i) {
        Matrix m(l.dim(), l.dim());
        for (int k = 0; k < l.dim(); ++k) m.col(k) = l.on_basis(i, k);
        table.push_back(std::move(m));
    }
    return table;
}

} // namespace

Representation adjoint_representation(const HomLieAlgebra& l) { return Representation(l.alpha(), {adjoint_table(l)}); }

Representation adjoint_representation(const CompatibleHomLieAlgebra& c) {
    return Representation(c.alpha(), {adjoint_table(c.component(0)), adjoint_table(c.component(1))});
}

Representation trivial_representation(int base_dim, int action_count, Matrix beta) {
    const Index vd = beta.rows();
    std::vector<std::vector<Matrix>> actions(static_cast<std::size_t>(action_count),
                                             std::vector<Matrix>(static_cast<std::size_t>(base_dim), Matrix::Zero(vd, vd)));
    return Representation(std::move(beta), std::move(actions));
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

void ValidationReport::append(const ValidationReport& other, const std::string& prefix) {
    for (Check c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
}

ValidationReport verify_structure(const HomLieAlgebra& l) {
    ValidationReport r;
    r.checks.push_back(multiplicativity(l, "multiplicativity"));
    r.checks.push_back(hom_jacobi(l, "hom-jacobi"));
    return r;
}

ValidationReport verify_structure(const CompatibleHomLieAlgebra& c) {
    ValidationReport r;
    const HomLieAlgebra l1 = c.component(0);
    const HomLieAlgebra l2 = c.component(1);
    r.checks.push_back(multiplicativity(l1, "multiplicativity[1]"));
    r.checks.push_back(multiplicativity(l2, "multiplicativity[2]"));
    r.checks.push_back(hom_jacobi(l1, "hom-jacobi[1]"));
    r.checks.push_back(hom_jacobi(l2, "hom-jacobi[2]"));
    r.checks.push_back(check_triples("compatibility", c.dim(), [&](int i, int j, int k) {
        return Vector(jacobiator(l1, l2, i, j, k) + jacobiator(l2, l1, i, j, k));
    }));
    return r;
}

ValidationReport verify_structure(const HomLieAlgebra& l, const Representation& v) {
    require_rep(v, l.dim(), 1);
    ValidationReport r;
    r.checks.push_back(rep_equivariance(l, v, 0, "equivariance"));
    r.checks.push_back(rep_module(l, v, 0, "module"));
    return r;
}

ValidationReport verify_structure(const CompatibleHomLieAlgebra& c, const Representation& v) {
    require_rep(v, c.dim(), 2);
    ValidationReport r;
    for (int k = 0; k < 2; ++k) {
        r.checks.push_back(rep_equivariance(c.component(k), v, k, suffixed("equivariance", k, true)));
        r.checks.push_back(rep_module(c.component(k), v, k, suffixed("module", k, true)));
    }
    r.checks.push_back(rep_mixed(c, v));
    return r;
}

HomLieAlgebra sum_bracket(const CompatibleHomLieAlgebra& c, const Rational& lambda, const Rational& eta) {
    return HomLieAlgebra(c.alpha(), lambda * c.bracket(0) + eta * c.bracket(1));
}

Representation sum_representation(const Representation& v, const Rational& lambda, const Rational& eta) {
    if (v.action_count() != 2) throw UsageError("sum_representation needs two action tables");
    std::vector<Matrix> table;
    for (int i = 0; i < v.base_dim(); ++i)
        table.push_back(lambda * v.actions()[0][static_cast<std::size_t>(i)] +
                        eta * v.actions()[1][static_cast<std::size_t>(i)]);
    return Representation(v.beta(), {std::move(table)});
}

HomLieAlgebra derived_structure(const HomLieAlgebra& l, int n) {
    if (n < 0) throw UsageError("derived_structure: negative order");
    const Matrix an = matrix_power(l.alpha(), n);
    return HomLieAlgebra(an * l.alpha(), Cochain(2, l.dim(), an * l.bracket().coeffs()));
}

CompatibleHomLieAlgebra derived_structure(const CompatibleHomLieAlgebra& c, int n) {
    if (n < 0) throw UsageError("derived_structure: negative order");
    const Matrix an = matrix_power(c.alpha(), n);
    return CompatibleHomLieAlgebra(an * c.alpha(), Cochain(2, c.dim(), an * c.bracket(0).coeffs()),
                                   Cochain(2, c.dim(), an * c.bracket(1).coeffs()));
}

CompatibleHomLieAlgebra semidirect_product(const CompatibleHomLieAlgebra& c, const Representation& v) {
    ValidationReport report = verify_structure(c);
    report.append(verify_structure(c, v), "representation.");
    if (!report.passed()) throw InvalidStructureError("semidirect_product: inputs fail verification", report);
    return CompatibleHomLieAlgebra(block_diagonal(c.alpha(), v.beta()), semidirect_bracket(c.bracket(0), v, 0, nullptr),
                                   semidirect_bracket(c.bracket(1), v, 1, nullptr));
}

HomLieAlgebra semidirect_product(const HomLieAlgebra& l, const Representation& v) {
    ValidationReport report = verify_structure(l);
    report.append(verify_structure(l, v), "representation.");
    if (!report.passed()) throw InvalidStructureError("semidirect_product: inputs fail verification", report);
    return HomLieAlgebra(block_diagonal(l.alpha(), v.beta()), semidirect_bracket(l.bracket(), v, 0, nullptr));
}

HomLieAlgebra twisted_semidirect(const HomLieAlgebra& l, const Representation& v, const Cochain& f) {
    if (f.arity() != 2 || f.source_dim() != l.dim() || f.target_dim() != v.vdim())
        throw UsageError("twisted_semidirect: twist must be a 2-cochain from the carrier into V");
    const CeDifferential delta(l, v); // validates l and v
    if (!is_equivariant(f, l.alpha(), v.beta()))
        throw PreconditionError("twisted_semidirect: twist is not equivariant");
    if (!delta.apply(f).is_zero()) throw PreconditionError("twisted_semidirect: twist is not a 2-cocycle");
    return HomLieAlgebra(block_diagonal(l.alpha(), v.beta()), semidirect_bracket(l.bracket(), v, 0, &f));
}

ValidationReport verify_operator(const HomLieAlgebra& l, const LinearOperator& op) {
    require_square(op.matrix, l.dim(), "operator matrix");
    ValidationReport r;
    r.checks.push_back(alpha_commutation(l.alpha(), op.matrix, "alpha-commutation"));
    append_operator_checks(r, l, op, "");
    return r;
}

ValidationReport verify_operator(const CompatibleHomLieAlgebra& c, const LinearOperator& op) {
    require_square(op.matrix, c.dim(), "operator matrix");
    ValidationReport r;
    r.checks.push_back(alpha_commutation(c.alpha(), op.matrix, "alpha-commutation"));
    for (int k = 0; k < 2; ++k) append_operator_checks(r, c.component(k), op, suffixed("", k, true));
    return r;
}

StructureConstants operator_bracket(const HomLieAlgebra& l, const Matrix& t, const Matrix& m) {
    require_square(t, l.dim(), "operator matrix");
    require_square(m, l.dim(), "operator matrix");
    const auto pairs = combinations(l.dim(), 2);
    Matrix coeffs(l.dim(), static_cast<Index>(pairs.size()));
    for (std::size_t c = 0; c < pairs.size(); ++c) {
        const Vector x = basis_vector(l.dim(), pairs[c][0]);
        const Vector y = basis_vector(l.dim(), pairs[c][1]);
        coeffs.col(static_cast<Index>(c)) = l(t * x, y) + l(x, t * y) + m * l(x, y);
    }
    return Cochain(2, l.dim(), std::move(coeffs));
}

namespace {

StructureConstants induced_constants(const HomLieAlgebra& l, const LinearOperator& op) {
    const Matrix id = Matrix::Identity(l.dim(), l.dim());
    return op.kind == OperatorKind::Nijenhuis ? operator_bracket(l, op.matrix, -op.matrix)
                                              : operator_bracket(l, op.matrix, op.weight * id);
}

} // namespace

HomLieAlgebra induced_bracket(const HomLieAlgebra& l, const LinearOperator& op) {
    const ValidationReport report = verify_operator(l, op);
    if (!report.passed()) throw InvalidStructureError("induced_bracket: operator fails verification", report);
    return HomLieAlgebra(l.alpha(), induced_constants(l, op));
}

RotaBaxterPair rb_pair(const HomLieAlgebra& l, const LinearOperator& r, const LinearOperator& s) {
    if (r.kind != OperatorKind::RotaBaxter || s.kind != OperatorKind::RotaBaxter)
        throw UsageError("rb_pair: both operators must be Rota-Baxter");
    if (r.weight != s.weight) throw UsageError("rb_pair: operators have different weights");
    RotaBaxterPair out;
    out.report.append(verify_operator(l, r), "R.");
    out.report.append(verify_operator(l, s), "S.");
    const Matrix& rm = r.matrix;
    const Matrix& sm = s.matrix;
    out.report.checks.push_back(check_pairs("pair-compatibility", l.dim(), [&](int i, int j) {
        const Vector x = basis_vector(l.dim(), i);
        const Vector y = basis_vector(l.dim(), j);
        const Vector lhs = l(rm * x, sm * y) + l(sm * x, rm * y);
        const Vector rhs = rm * (l(sm * x, y) + l(x, sm * y)) + sm * (l(rm * x, y) + l(x, rm * y));
        return Vector(lhs - rhs);
    }));
    if (out.report.passed())
        out.induced = CompatibleHomLieAlgebra(l.alpha(), induced_constants(l, r), induced_constants(l, s));
    return out;
}

LinearOperator rb_companion(const LinearOperator& r) {
    if (r.kind != OperatorKind::RotaBaxter) throw UsageError("rb_companion: operator is not Rota-Baxter");
    const Index n = r.matrix.rows();
    return LinearOperator::rota_baxter(Matrix(-r.weight * Matrix::Identity(n, n) - r.matrix), r.weight);
}

} // namespace hlie

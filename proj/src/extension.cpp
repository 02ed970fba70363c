#include "hlie/extension.hpp"

#include "hlie/linalg.hpp"

#include <functional>
#include <string>

namespace hlie {

namespace {

// One witness per nonzero column of a defect matrix.
Check column_check(std::string name, const Matrix& defect) {
    Check check{std::move(name), true, {}};
    for (Index c = 0; c < defect.cols(); ++c)
        if (!is_zero(defect.col(c))) {
            check.passed = false;
            check.witnesses.push_back({{static_cast<int>(c)}, defect.col(c)});
        }
    return check;
}

Check pair_check(std::string name, int dim, const std::function<Vector(int, int)>& defect) {
    Check check{std::move(name), true, {}};
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b) {
            Vector v = defect(a, b);
            if (!is_zero(v)) {
                check.passed = false;
                check.witnesses.push_back({{a, b}, std::move(v)});
            }
        }
    return check;
}

std::string indexed(const char* name, int k) { return std::string(name) + "[" + std::to_string(k + 1) + "]"; }

void require_shape(const Matrix& m, Index rows, Index cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols)
        throw UsageError(std::string(what) + " must be " + std::to_string(rows) + "x" + std::to_string(cols));
}

Matrix split_basis(const Matrix& s, const Matrix& i) {
    Matrix out(s.rows(), s.cols() + i.cols());
    out << s, i;
    return out;
}

bool same_algebra(const CompatibleHomLieAlgebra& a, const CompatibleHomLieAlgebra& b) {
    return matrices_equal(a.alpha(), b.alpha()) && a.bracket(0) == b.bracket(0) && a.bracket(1) == b.bracket(1);
}

bool same_representation(const Representation& a, const Representation& b) {
    if (!matrices_equal(a.beta(), b.beta()) || a.actions().size() != b.actions().size()) return false;
    for (std::size_t k = 0; k < a.actions().size(); ++k) {
        if (a.actions()[k].size() != b.actions()[k].size()) return false;
        for (std::size_t x = 0; x < a.actions()[k].size(); ++x)
            if (!matrices_equal(a.actions()[k][x], b.actions()[k][x])) return false;
    }
    return true;
}

} // namespace

ValidationReport verify_extension(const CompatibleHomLieAlgebra& base, const Matrix& beta,
                                  const CompatibleHomLieAlgebra& total, const Matrix& inclusion,
                                  const Matrix& projection, const Matrix& splitting) {
    const int d = base.dim();
    const Index v = beta.rows();
    const Index h = d + v;
    require_shape(beta, v, v, "beta");
    if (total.dim() != h) throw UsageError("extension: total algebra must have dimension dim g + dim V");
    require_shape(inclusion, h, v, "inclusion");
    require_shape(projection, d, h, "projection");
    require_shape(splitting, h, d, "splitting");

    ValidationReport report;
    report.checks.push_back(column_check("exactness", projection * inclusion));

    Check injective{"injective-inclusion", true, {}};
    for (Vector& k : kernel_basis(inclusion)) injective.witnesses.push_back({{}, std::move(k)});
    injective.passed = injective.witnesses.empty();
    report.checks.push_back(std::move(injective));

    Check surjective{"surjective-projection", true, {}};
    for (Vector& k : kernel_basis(Matrix(projection.transpose()))) surjective.witnesses.push_back({{}, std::move(k)});
    surjective.passed = surjective.witnesses.empty();
    report.checks.push_back(std::move(surjective));

    report.checks.push_back(column_check("splitting", projection * splitting - Matrix::Identity(d, d)));
    report.checks.push_back(column_check("alpha-splitting", total.alpha() * splitting - splitting * base.alpha()));
    report.checks.push_back(column_check("alpha-inclusion", total.alpha() * inclusion - inclusion * beta));
    report.checks.push_back(column_check("alpha-projection", projection * total.alpha() - base.alpha() * projection));

    for (int k = 0; k < 2; ++k) {
        const HomLieAlgebra hk = total.component(k);
        const HomLieAlgebra gk = base.component(k);
        report.checks.push_back(pair_check(indexed("projection-morphism", k), static_cast<int>(h), [&](int a, int b) {
            return Vector(projection * hk.on_basis(a, b) -
                          gk(projection.col(a), projection.col(b)));
        }));
        report.checks.push_back(pair_check(indexed("abelian-fiber", k), static_cast<int>(v), [&](int a, int b) {
            return hk(inclusion.col(a), inclusion.col(b));
        }));
    }
    report.append(verify_structure(total), "total.");
    return report;
}

AbelianExtension::AbelianExtension(CompatibleHomLieAlgebra base, Matrix beta, CompatibleHomLieAlgebra total,
                                   Matrix inclusion, Matrix projection, Matrix splitting)
    : base_(std::move(base)), beta_(std::move(beta)), total_(std::move(total)), inclusion_(std::move(inclusion)),
      projection_(std::move(projection)), splitting_(std::move(splitting)) {
    const ValidationReport report = verify_extension(base_, beta_, total_, inclusion_, projection_, splitting_);
    if (!report.passed()) {
        std::string failing;
        for (const Check& c : report.checks)
            if (!c.passed) failing += (failing.empty() ? "" : ", ") + c.name;
        throw InvalidStructureError("abelian extension fails: " + failing, report);
    }
}

AbelianExtension AbelianExtension::with_splitting(Matrix splitting) const {
    return AbelianExtension(base_, beta_, total_, inclusion_, projection_, std::move(splitting));
}

Matrix AbelianExtension::fiber_coordinates() const {
    const auto inv = inverse(split_basis(splitting_, inclusion_));
    if (!inv) throw ContractError("fiber_coordinates: [s | i] is singular on a validated extension");
    return inv->bottomRows(vdim());
}

AbelianExtension build_extension(const CompatibleHomLieAlgebra& c, const Representation& rep, const ExtensionCocycle& z) {
    const CompatibleDifferential delta(c, rep);
    if (!delta.apply(z.as_cochain()).is_zero()) throw PreconditionError("build_extension: (f1, f2) is not a 2-cocycle");
    const HomLieAlgebra h1 = twisted_semidirect(c.component(0), rep.component(0), z.f1);
    const HomLieAlgebra h2 = twisted_semidirect(c.component(1), rep.component(1), z.f2);
    const int d = c.dim();
    const Index v = rep.vdim();
    Matrix i = Matrix::Zero(d + v, v);
    i.bottomRows(v) = Matrix::Identity(v, v);
    Matrix j = Matrix::Zero(d, d + v);
    j.leftCols(d) = Matrix::Identity(d, d);
    return AbelianExtension(c, rep.beta(), CompatibleHomLieAlgebra(h1.alpha(), h1.bracket(), h2.bracket()), i, j,
                            j.transpose());
}

std::pair<Representation, ExtensionCocycle> extract_cocycle(const AbelianExtension& e) {
    const int d = e.base().dim();
    const Index v = e.vdim();
    const Matrix p = e.fiber_coordinates();
    const Matrix& s = e.splitting();
    const Matrix& i = e.inclusion();
    const auto pairs = combinations(d, 2);

    std::vector<std::vector<Matrix>> actions(2);
    Cochain f[2];
    for (int k = 0; k < 2; ++k) {
        const HomLieAlgebra h = e.total().component(k);
        for (int x = 0; x < d; ++x) {
            Matrix a(v, v);
            for (Index u = 0; u < v; ++u) a.col(u) = p * h(s.col(x), i.col(u));
            actions[static_cast<std::size_t>(k)].push_back(std::move(a));
        }
        Matrix coeffs(v, static_cast<Index>(pairs.size()));
        for (std::size_t c = 0; c < pairs.size(); ++c)
            coeffs.col(static_cast<Index>(c)) = p * h(s.col(pairs[c][0]), s.col(pairs[c][1]));
        f[k] = Cochain(2, d, std::move(coeffs));
    }
    return {Representation(e.beta(), std::move(actions)), ExtensionCocycle{f[0], f[1]}};
}

std::optional<Matrix> check_equivalence(const AbelianExtension& e, const AbelianExtension& e_prime) {
    if (!same_algebra(e.base(), e_prime.base())) throw UsageError("check_equivalence: extensions have different bases");
    if (!matrices_equal(e.beta(), e_prime.beta())) throw UsageError("check_equivalence: extensions have different fibers");
    const auto [rep, z] = extract_cocycle(e);
    const auto [rep_prime, z_prime] = extract_cocycle(e_prime);
    if (!same_representation(rep, rep_prime))
        throw UsageError("check_equivalence: extensions induce different representations");

    const CompatibleHomLieAlgebra& c = e.base();
    const int d = c.dim();
    const Index v = e.vdim();
    const CompatibleDifferential delta(c, rep);
    const Vector target = (z.as_cochain() - z_prime.as_cochain()).flatten();

    Matrix tau = Matrix::Zero(v, d);
    const auto basis = hom_cochain_basis(c.alpha(), rep.beta(), 1);
    if (!basis.empty()) {
        std::vector<Vector> images;
        for (const Cochain& b : basis) images.push_back(delta.apply_unchecked({1, {b}}).flatten());
        const auto x = solve(stack_columns<Rational>(images, target.size()), target);
        if (!x) return std::nullopt;
        for (std::size_t k = 0; k < basis.size(); ++k) tau += (*x)(static_cast<Index>(k)) * basis[k].coeffs();
    } else if (!is_zero(target)) {
        return std::nullopt;
    }

    const Index h = d + v;
    Matrix shear = Matrix::Identity(h, h);
    shear.bottomLeftCorner(v, d) = tau;
    const auto inv = inverse(split_basis(e.splitting(), e.inclusion()));
    if (!inv) throw ContractError("check_equivalence: [s | i] is singular on a validated extension");
    const Matrix phi = split_basis(e_prime.splitting(), e_prime.inclusion()) * shear * *inv;

    bool ok = e_prime.projection() * phi == e.projection() && phi * e.inclusion() == e_prime.inclusion() &&
              phi * e.total().alpha() == e_prime.total().alpha() * phi;
    for (int k = 0; k < 2 && ok; ++k) {
        const HomLieAlgebra src = e.total().component(k);
        const HomLieAlgebra dst = e_prime.total().component(k);
        for (int a = 0; a < h && ok; ++a)
            for (int b = a + 1; b < h && ok; ++b)
                ok = phi * src.on_basis(a, b) == dst(phi.col(a), phi.col(b));
    }
    if (!ok) throw ContractError("check_equivalence: constructed map is not a morphism of extensions");
    return phi;
}

Vector ext_class(const AbelianExtension& e) {
    const auto [rep, z] = extract_cocycle(e);
    return cohomology_dimensions(e.base(), rep, 2).class_coordinates(z.as_cochain());
}

} // namespace hlie

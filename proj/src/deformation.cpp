#include "hlie/deformation.hpp"

#include "hlie/linalg.hpp"

#include <functional>
#include <string>

namespace hlie {

namespace {

void require_generator_shape(const Cochain& f, int d, const char* name) {
    if (f.arity() != 2 || f.source_dim() != d || f.target_dim() != d)
        throw UsageError(std::string(name) + " must be an arity-2 cochain on the " + std::to_string(d) +
                         "-dimensional carrier");
}

void require_equivariant(const Cochain& f, const Matrix& alpha, const std::string& name) {
    if (!is_equivariant(f, alpha, alpha)) throw PreconditionError(name + " is not alpha-equivariant");
}

void require_valid(const CompatibleHomLieAlgebra& c, const char* where) {
    const ValidationReport report = verify_structure(c);
    if (!report.passed()) throw InvalidStructureError(std::string(where) + ": base fails verification", report);
}

Check pair_check(std::string name, int dim, const std::function<Vector(const Vector&, const Vector&)>& defect) {
    Check check{std::move(name), true, {}};
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            Vector v = defect(basis_vector(dim, i), basis_vector(dim, j));
            if (!is_zero(v)) {
                check.passed = false;
                check.witnesses.push_back({{i, j}, std::move(v)});
            }
        }
    return check;
}

std::string indexed(const char* name, int which) { return std::string(name) + "[" + std::to_string(which + 1) + "]"; }

Cochain scaled(const Matrix& m, const Cochain& f) { return Cochain(f.arity(), f.source_dim(), m * f.coeffs()); }

} // namespace

LinearGeneratorReport check_linear_generator(const CompatibleHomLieAlgebra& c, const LinearGenerator& g) {
    require_valid(c, "check_linear_generator");
    const int d = c.dim();
    const Matrix& alpha = c.alpha();
    require_generator_shape(g.omega1, d, "omega1");
    require_generator_shape(g.omega2, d, "omega2");
    require_equivariant(g.omega1, alpha, "omega1");
    require_equivariant(g.omega2, alpha, "omega2");

    const Cochain& mu1 = c.bracket(0);
    const Cochain& mu2 = c.bracket(1);
    LinearGeneratorReport r{nr_bracket(mu1, g.omega1, alpha),
                            nr_bracket(mu2, g.omega2, alpha),
                            nr_bracket(mu1, g.omega2, alpha) + nr_bracket(mu2, g.omega1, alpha),
                            nr_bracket(g.omega1, g.omega1, alpha),
                            nr_bracket(g.omega2, g.omega2, alpha),
                            nr_bracket(g.omega1, g.omega2, alpha),
                            false,
                            false};
    r.is_cocycle = r.first.is_zero() && r.second.is_zero() && r.mixed.is_zero();
    r.is_compatible_structure = r.omega_first.is_zero() && r.omega_second.is_zero() && r.omega_mixed.is_zero();

    // On 2-cochains delta f = -[mu, f], so delta_cHom(omega) = -(first, mixed, second).
    const CompatibleCochain delta = CompatibleDifferential(c, adjoint_representation(c), false).apply(g.as_cochain());
    if (!(delta.components[0] == -r.first && delta.components[1] == -r.mixed && delta.components[2] == -r.second))
        throw ContractError("check_linear_generator: bracket residuals disagree with delta_cHom");
    return r;
}

LinearGenerator trivial_deformation_from_nijenhuis(const CompatibleHomLieAlgebra& c, const LinearOperator& n_op) {
    if (n_op.kind != OperatorKind::Nijenhuis) throw UsageError("trivial_deformation_from_nijenhuis: operator is not Nijenhuis");
    const ValidationReport report = verify_operator(c, n_op);
    if (!report.passed())
        throw InvalidStructureError("trivial_deformation_from_nijenhuis: operator fails verification", report);
    const Matrix& n = n_op.matrix;
    return {operator_bracket(c.component(0), n, -n), operator_bracket(c.component(1), n, -n)};
}

ValidationReport check_linear_equivalence(const CompatibleHomLieAlgebra& c, const LinearGenerator& g,
                                          const LinearGenerator& g_prime, const Matrix& n) {
    const int d = c.dim();
    if (n.rows() != d || n.cols() != d) throw UsageError("check_linear_equivalence: N has the wrong shape");
    for (const Cochain* f : {&g.omega1, &g.omega2, &g_prime.omega1, &g_prime.omega2})
        require_generator_shape(*f, d, "generator");
    if (c.alpha() * n != n * c.alpha()) throw PreconditionError("check_linear_equivalence: N does not commute with alpha");

    ValidationReport report;
    for (int k = 0; k < 2; ++k) {
        const HomLieAlgebra l = c.component(k);
        const Cochain& w = k == 0 ? g.omega1 : g.omega2;
        const Cochain& wp = k == 0 ? g_prime.omega1 : g_prime.omega2;
        auto ev = [](const Cochain& f, const Vector& x, const Vector& y) {
            const Vector args[2] = {x, y};
            return evaluate(f, args);
        };
        report.checks.push_back(pair_check(indexed("difference", k), d, [&](const Vector& x, const Vector& y) {
            return Vector(ev(w, x, y) - ev(wp, x, y) - (l(x, n * y) + l(n * x, y) - n * l(x, y)));
        }));
        report.checks.push_back(pair_check(indexed("intertwining", k), d, [&](const Vector& x, const Vector& y) {
            return Vector(n * ev(w, x, y) - (ev(wp, x, n * y) + ev(wp, n * x, y) + l(n * x, n * y)));
        }));
        report.checks.push_back(pair_check(indexed("vanishing", k), d,
                                           [&](const Vector& x, const Vector& y) { return ev(wp, n * x, n * y); }));
    }

    const CompatibleCochain delta =
        CompatibleDifferential(c, adjoint_representation(c)).apply({1, {Cochain(1, d, n)}});
    const Cochain diff[2] = {g.omega1 - g_prime.omega1, g.omega2 - g_prime.omega2};
    Check coboundary{"coboundary", true, {}};
    const auto pairs = combinations(d, 2);
    for (int k = 0; k < 2; ++k) {
        const Matrix defect = diff[k].coeffs() - delta.components[static_cast<std::size_t>(k)].coeffs();
        for (Index col = 0; col < defect.cols(); ++col)
            if (!is_zero(defect.col(col))) {
                coboundary.passed = false;
                const auto& p = pairs[static_cast<std::size_t>(col)];
                coboundary.witnesses.push_back({{k, p[0], p[1]}, defect.col(col)});
            }
    }
    report.checks.push_back(std::move(coboundary));
    return report;
}

Vector infinitesimal_class(const CompatibleHomLieAlgebra& c, const LinearGenerator& g) {
    if (!check_linear_generator(c, g).is_cocycle) throw PreconditionError("infinitesimal_class: generator is not a 2-cocycle");
    return cohomology_dimensions(c, adjoint_representation(c), 2).class_coordinates(g.as_cochain());
}

OrderPDeformation::OrderPDeformation(CompatibleHomLieAlgebra base, std::vector<Cochain> higher1,
                                     std::vector<Cochain> higher2)
    : base_(std::move(base)) {
    if (higher1.empty()) throw UsageError("OrderPDeformation: order must be at least 1");
    if (higher1.size() != higher2.size())
        throw UsageError("OrderPDeformation: the two coefficient lists have different lengths");
    coeffs1_.push_back(base_.bracket(0));
    coeffs2_.push_back(base_.bracket(1));
    coeffs1_.insert(coeffs1_.end(), higher1.begin(), higher1.end());
    coeffs2_.insert(coeffs2_.end(), higher2.begin(), higher2.end());
    for (std::size_t i = 0; i < coeffs1_.size(); ++i) {
        const std::string suffix = "," + std::to_string(i) + "}";
        require_generator_shape(coeffs1_[i], base_.dim(), "deformation coefficient");
        require_generator_shape(coeffs2_[i], base_.dim(), "deformation coefficient");
        require_equivariant(coeffs1_[i], alpha(), "mu_{1" + suffix);
        require_equivariant(coeffs2_[i], alpha(), "mu_{2" + suffix);
    }
}

const Cochain& OrderPDeformation::coefficient(int which, int i) const {
    const auto& list = which == 0 ? coeffs1_ : coeffs2_;
    if (i < 0 || i > order()) throw UsageError("OrderPDeformation: coefficient index out of range");
    return list[static_cast<std::size_t>(i)];
}

OrderPDeformation OrderPDeformation::truncated(int p) const {
    if (p < 1 || p > order()) throw UsageError("OrderPDeformation::truncated: order out of range");
    return OrderPDeformation(base_, {coeffs1_.begin() + 1, coeffs1_.begin() + 1 + p},
                             {coeffs2_.begin() + 1, coeffs2_.begin() + 1 + p});
}

OrderPDeformation OrderPDeformation::extended(const Cochain& mu1, const Cochain& mu2) const {
    std::vector<Cochain> h1(coeffs1_.begin() + 1, coeffs1_.end());
    std::vector<Cochain> h2(coeffs2_.begin() + 1, coeffs2_.end());
    h1.push_back(mu1);
    h2.push_back(mu2);
    return OrderPDeformation(base_, std::move(h1), std::move(h2));
}

bool OrderPReport::passed() const { return !first_failure().has_value(); }

std::optional<int> OrderPReport::first_failure() const {
    for (const auto& r : identities)
        if (!r.is_zero()) return r.n;
    return std::nullopt;
}

namespace {

// sum over i + j = n of [a_i, b_j] with lo <= i, j.
Cochain convolution(const OrderPDeformation& d, int a, int b, int n, int lo) {
    const Cochain& any = d.coefficient(0, 0);
    Cochain sum = Cochain::zero(3, any.source_dim(), any.target_dim());
    for (int i = lo; i <= n - lo; ++i) sum += nr_bracket(d.coefficient(a, i), d.coefficient(b, n - i), d.alpha());
    return sum;
}

} // namespace

OrderPReport verify_order_p(const OrderPDeformation& d) {
    const CompatibleHomLieAlgebra& c = d.base();
    const CeDifferential d1(c.component(0), adjoint_representation(c.component(0)), false);
    const CeDifferential d2(c.component(1), adjoint_representation(c.component(1)), false);
    const Rational half(1, 2);

    OrderPReport report;
    report.paths_agree = true;
    for (int n = 0; n <= d.order(); ++n) {
        const Cochain& m1 = d.coefficient(0, n);
        const Cochain& m2 = d.coefficient(1, n);
        OrderResidual id{n,
                         d1.apply_unchecked(m1) - half * convolution(d, 0, 0, n, 1),
                         d2.apply_unchecked(m2) - half * convolution(d, 1, 1, n, 1),
                         d1.apply_unchecked(m2) + d2.apply_unchecked(m1) - convolution(d, 0, 1, n, 1)};
        OrderResidual nr{n, convolution(d, 0, 0, n, 0), convolution(d, 1, 1, n, 0), convolution(d, 0, 1, n, 0)};
        const Rational square = n == 0 ? Rational(-1) : Rational(-2);
        const Rational cross = n == 0 ? Rational(-1, 2) : Rational(-1);
        if (!(nr.first == square * id.first && nr.second == square * id.second && nr.mixed == cross * id.mixed))
            report.paths_agree = false;
        report.identities.push_back(std::move(id));
        report.truncated_brackets.push_back(std::move(nr));
    }
    return report;
}

CompatibleCochain obstruction(const OrderPDeformation& d) {
    const OrderPReport report = verify_order_p(d);
    if (!report.passed())
        throw PreconditionError("obstruction: deformation fails its identities at t^" +
                                std::to_string(*report.first_failure()));
    const int top = d.order() + 1;
    const Rational half(1, 2);
    CompatibleCochain ob{3,
                         {half * convolution(d, 0, 0, top, 1), convolution(d, 0, 1, top, 1),
                          half * convolution(d, 1, 1, top, 1)}};
    const CompatibleHomLieAlgebra& c = d.base();
    if (!CompatibleDifferential(c, adjoint_representation(c)).apply(ob).is_zero())
        throw ContractError("obstruction: delta_cHom of the obstruction cochain is nonzero");
    return ob;
}

std::optional<std::pair<Cochain, Cochain>> is_extensible(const OrderPDeformation& d) {
    const CompatibleCochain ob = obstruction(d);
    const CompatibleHomLieAlgebra& c = d.base();
    const Representation adj = adjoint_representation(c);
    const CompatibleDifferential delta(c, adj, false);
    const auto basis = compatible_cochain_basis(c.alpha(), adj, 2);

    CompatibleCochain top = CompatibleCochain::zero(2, c.dim(), c.dim());
    if (!basis.empty()) {
        std::vector<Vector> images;
        for (const CompatibleCochain& b : basis) images.push_back(delta.apply_unchecked(b).flatten());
        const Vector target = ob.flatten();
        const auto x = solve(stack_columns<Rational>(images, target.size()), target);
        if (!x) return std::nullopt;
        for (std::size_t k = 0; k < basis.size(); ++k)
            if ((*x)(static_cast<Index>(k)) != 0) top += (*x)(static_cast<Index>(k)) * basis[k];
    } else if (!ob.is_zero()) {
        return std::nullopt;
    }

    const OrderPDeformation next = d.extended(top.components[0], top.components[1]);
    if (!verify_order_p(next).passed())
        throw ContractError("is_extensible: extended deformation fails verification");
    return std::make_pair(top.components[0], top.components[1]);
}

OrderPDeformation transported_deformation(const CompatibleHomLieAlgebra& c, const Matrix& n, int p) {
    const int d = c.dim();
    if (n.rows() != d || n.cols() != d) throw UsageError("transported_deformation: N has the wrong shape");
    if (p < 1) throw UsageError("transported_deformation: order must be at least 1");
    if (c.alpha() * n != n * c.alpha()) throw PreconditionError("transported_deformation: N does not commute with alpha");
    const Matrix zero = Matrix::Zero(d, d);
    const Matrix minus_n = -n;
    std::vector<Cochain> higher[2];
    for (int k = 0; k < 2; ++k) {
        const HomLieAlgebra l = c.component(k);
        const Cochain& mu = l.bracket();
        const Cochain once = operator_bracket(l, n, zero);
        const Cochain twice = d < 2 ? Cochain::zero(2, d, d) : Cochain(2, d, mu.coeffs() * exterior_power_matrix(n, 2));
        for (int m = 1; m <= p; ++m) {
            Cochain term = scaled(matrix_power(minus_n, m), mu) + scaled(matrix_power(minus_n, m - 1), once);
            if (m >= 2) term += scaled(matrix_power(minus_n, m - 2), twice);
            higher[k].push_back(std::move(term));
        }
    }
    return OrderPDeformation(c, std::move(higher[0]), std::move(higher[1]));
}

} // namespace hlie

#include "support.hpp"

#include "hlie/fixtures.hpp"

#include <doctest.h>

using namespace hlie;
using namespace hlie::test;
namespace fx = hlie::fixtures;

namespace {

bool check_passes(const ValidationReport& r, const std::string& name) {
    const Check* c = r.find(name);
    REQUIRE_MESSAGE(c != nullptr, "missing check " << name);
    return c->passed;
}

// Recomputes a multiplicativity witness from scratch.
Vector multiplicativity_defect(const HomLieAlgebra& l, int i, int j) {
    const Matrix& a = l.alpha();
    const int d = l.dim();
    return a * naive_evaluate(l.bracket(), {e(d, i), e(d, j)}) - naive_evaluate(l.bracket(), {a.col(i), a.col(j)});
}

} // namespace

TEST_CASE("structure constants") {
    const StructureConstants s = structure_constants(3, {{0, 2, vec({1, 2, 3})}});
    const HomLieAlgebra l(identity(3), s);
    CHECK(l.on_basis(0, 2) == vec({1, 2, 3}));
    CHECK(l.on_basis(2, 0) == -vec({1, 2, 3}));
    CHECK(is_zero(l.on_basis(1, 1)));
    CHECK(l(vec({1, 1, 0}), e(3, 2)) == vec({1, 2, 3}));
    CHECK_THROWS_AS(structure_constants(3, {{1, 0, vec({1, 0, 0})}}), UsageError);
    CHECK_THROWS_AS(structure_constants(3, {{0, 3, vec({1, 0, 0})}}), UsageError);
    CHECK_THROWS_AS(structure_constants(3, {{0, 1, vec({1, 0, 0})}, {0, 1, vec({1, 0, 0})}}), UsageError);
}

TEST_CASE("verify_structure on fixtures") {
    CHECK(verify_structure(fx::ab1()).passed());
    CHECK(verify_structure(fx::d2()).passed());
    CHECK(verify_structure(fx::h3()).passed());
    CHECK(verify_structure(fx::h3_pair()).passed());
    CHECK(verify_structure(fx::b3()).passed());
    CHECK(verify_structure(fx::g4a(0)).passed());
    CHECK(verify_structure(fx::g2a(0)).passed());

    for (int a : {1, 2, -3}) {
        const HomLieAlgebra g = fx::g4a(a);
        const ValidationReport r = verify_structure(g);
        CHECK(check_passes(r, "hom-jacobi"));
        const Check* m = r.find("multiplicativity");
        REQUIRE(m != nullptr);
        CHECK_FALSE(m->passed);
        REQUIRE(m->witnesses.size() == 1);
        CHECK(m->witnesses[0].indices == std::vector<int>{0, 1});
        CHECK(m->witnesses[0].defect == Rational(2 * a) * vec({1, 1, 0, 0}));
        CHECK(m->witnesses[0].defect == multiplicativity_defect(g, 0, 1));

        const ValidationReport r2 = verify_structure(fx::g2a(a));
        CHECK_FALSE(check_passes(r2, "multiplicativity"));
        CHECK(r2.find("multiplicativity")->witnesses[0].indices == std::vector<int>{0, 1});
    }
}

TEST_CASE("witnesses re-evaluate to their defects") {
    Gen gen(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = gen.integer(2, 3);
        const HomLieAlgebra l(gen.coin() ? Matrix(identity(d)) : gen.matrix(d, d), gen.bracket(d));
        const ValidationReport r = verify_structure(l);
        for (const Check& c : r.checks) {
            CHECK(c.passed == c.witnesses.empty());
            for (const Witness& w : c.witnesses) {
                CHECK_FALSE(is_zero(w.defect));
                if (c.name == "multiplicativity") CHECK(w.defect == multiplicativity_defect(l, w.indices[0], w.indices[1]));
            }
        }
        CHECK(check_passes(r, "hom-jacobi") == naive_hom_jacobi(l.alpha(), l.bracket()));
    }
}

TEST_CASE("sum brackets") {
    const CompatibleHomLieAlgebra d2 = fx::d2();
    CHECK(sum_bracket(d2, 1, 0).bracket() == d2.bracket(0));
    CHECK(sum_bracket(d2, 0, 0).bracket().is_zero());
    const HomLieAlgebra plus = sum_bracket(d2, 1, 1);
    CHECK(plus.on_basis(0, 1) == vec({1, 1}));
    CHECK(verify_structure(plus).passed());

    Gen gen(43);
    for (const CompatibleHomLieAlgebra& c : {fx::d2(), fx::h3_pair(), fx::b3()})
        for (int trial = 0; trial < 10; ++trial)
            CHECK(verify_structure(sum_bracket(c, gen.rational(0.0), gen.rational(0.0))).passed());
}

TEST_CASE("derived structures") {
    const HomLieAlgebra g = fx::g4a(1);
    const HomLieAlgebra g0 = derived_structure(g, 0);
    CHECK(g0.bracket() == g.bracket());
    CHECK(g0.alpha() == g.alpha());
    CHECK(derived_structure(fx::ab1(), 3).bracket().is_zero());
    const HomLieAlgebra g1 = derived_structure(g, 1);
    CHECK(g1.on_basis(0, 1) == vec({1, 1, 0, 0}));
    CHECK(g1.alpha() == g.alpha() * g.alpha());
    for (int n = 0; n <= 3; ++n) {
        CHECK(verify_structure(derived_structure(fx::b3(), n)).passed());
        CHECK(verify_structure(derived_structure(fx::g4a(0), n)).passed());
    }
}

TEST_CASE("representations and semidirect products") {
    const CompatibleHomLieAlgebra d2 = fx::d2();
    CHECK(verify_structure(d2, adjoint_representation(d2)).passed());
    CHECK(verify_structure(d2, fx::d2_split_rep()).passed());
    CHECK(verify_structure(fx::b3(), adjoint_representation(fx::b3())).passed());

    const CompatibleHomLieAlgebra s = semidirect_product(d2, adjoint_representation(d2));
    CHECK(s.dim() == 4);
    CHECK(verify_structure(s).passed());

    const CompatibleHomLieAlgebra zero(identity(2), Cochain::zero(2, 2, 2), Cochain::zero(2, 2, 2));
    const CompatibleHomLieAlgebra z = semidirect_product(zero, trivial_representation(2, 2, identity(3)));
    CHECK(z.dim() == 5);
    CHECK(z.bracket(0).is_zero());
    CHECK(z.bracket(1).is_zero());

    const CompatibleHomLieAlgebra t = semidirect_product(d2, trivial_representation(2, 2, identity(1)));
    for (int k = 0; k < 2; ++k) {
        Vector expected = Vector::Zero(3);
        expected.head(2) = d2.component(k).on_basis(0, 1);
        CHECK(t.component(k).on_basis(0, 1) == expected);
        CHECK(is_zero(t.component(k).on_basis(0, 2)));
        CHECK(is_zero(t.component(k).on_basis(1, 2)));
    }

    // A mismatched action table is rejected with the failing report attached.
    Representation bad(identity(2), {{identity(2), Matrix::Zero(2, 2)}, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)}});
    CHECK_FALSE(verify_structure(d2, bad).passed());
    CHECK_THROWS_AS(semidirect_product(d2, bad), InvalidStructureError);
}

TEST_CASE("twisted semidirect products") {
    const HomLieAlgebra l = fx::d2().component(0);
    const Representation adj = adjoint_representation(l);
    CHECK(twisted_semidirect(l, adj, Cochain::zero(2, 2, 2)).bracket() == semidirect_product(l, adj).bracket());

    Gen gen(47);
    for (int trial = 0; trial < 5; ++trial) {
        const Cochain tau(1, 2, gen.matrix(2, 2));
        const Cochain f = ce_coboundary(l, adj, tau);
        const HomLieAlgebra h = twisted_semidirect(l, adj, f);
        CHECK(verify_structure(h).passed());
        const HomLieAlgebra h0 = twisted_semidirect(l, adj, Cochain::zero(2, 2, 2));
        CHECK(verify_structure(CompatibleHomLieAlgebra(h.alpha(), h.bracket(), h0.bracket())).passed());
    }

    const HomLieAlgebra h = fx::h3();
    Cochain not_cocycle = Cochain::zero(2, 3, 3);
    while (is_zero(ce_coboundary(h, adjoint_representation(h), not_cocycle).coeffs()))
        not_cocycle = Cochain(2, 3, gen.matrix(3, 3));
    CHECK_THROWS_AS(twisted_semidirect(h, adjoint_representation(h), not_cocycle), PreconditionError);
}

TEST_CASE("nijenhuis operators") {
    for (int a : {0, 1, 2}) {
        const ValidationReport r = verify_operator(fx::g4a(a), fx::g4a_nijenhuis());
        CHECK(check_passes(r, "alpha-commutation"));
        CHECK(check_passes(r, "nijenhuis"));
    }
    CHECK(verify_operator(fx::h3(), LinearOperator::nijenhuis(identity(3))).passed());
    CHECK(verify_operator(fx::d2(), fx::d2_nijenhuis()).passed());

    const HomLieAlgebra h = fx::h3();
    CHECK(induced_bracket(h, LinearOperator::nijenhuis(Matrix::Zero(3, 3))).bracket().is_zero());
    CHECK(induced_bracket(h, LinearOperator::nijenhuis(identity(3))).bracket() == h.bracket());

    Matrix shear = identity(3);
    shear(0, 1) = 1;
    shear(2, 0) = 1;
    const LinearOperator bad = LinearOperator::nijenhuis(shear);
    if (!verify_operator(h, bad).passed()) CHECK_THROWS_AS(induced_bracket(h, bad), InvalidStructureError);

    // A passing Nijenhuis operator always yields a compatible pair.
    Gen gen(53);
    int found = 0;
    for (int trial = 0; trial < 200 && found < 10; ++trial) {
        Matrix n = Matrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i) n(i, i) = gen.integer(-2, 2);
        if (gen.coin()) n(gen.integer(0, 2), gen.integer(0, 2)) = gen.integer(-1, 1);
        const LinearOperator op = LinearOperator::nijenhuis(n);
        if (!verify_operator(h, op).passed()) continue;
        ++found;
        const HomLieAlgebra induced = induced_bracket(h, op);
        CHECK(verify_structure(CompatibleHomLieAlgebra(h.alpha(), h.bracket(), induced.bracket())).passed());
    }
    CHECK(found > 0);
}

TEST_CASE("rota-baxter operators") {
    for (int a : {0, 1, 2}) {
        const HomLieAlgebra g = fx::g2a(a);
        const LinearOperator r = fx::g2a_rota_baxter();
        CHECK(verify_operator(g, r).passed());

        const LinearOperator s = rb_companion(r);
        Matrix expected = identity(2) - g.alpha();
        CHECK(s.matrix == expected);
        CHECK(s.weight == -1);
        CHECK(rb_companion(s).matrix == r.matrix);

        const RotaBaxterPair pair = rb_pair(g, r, s);
        CHECK(pair.report.passed());
        REQUIRE(pair.induced.has_value());
        // [e1,e2]_R = [e2,e2] + [e1,e1] - [e1,e2] = -a(e1 + e2)
        CHECK(pair.induced->component(0).on_basis(0, 1) == Rational(-a) * vec({1, 1}));
        CHECK(verify_structure(*pair.induced).passed() == (a == 0));
    }

    const HomLieAlgebra h = fx::h3();
    const LinearOperator zero = LinearOperator::rota_baxter(Matrix::Zero(3, 3), 0);
    const RotaBaxterPair zz = rb_pair(h, zero, zero);
    CHECK(zz.report.passed());
    REQUIRE(zz.induced.has_value());
    CHECK(zz.induced->bracket(0).is_zero());
    CHECK(zz.induced->bracket(1).is_zero());

    const LinearOperator r = LinearOperator::rota_baxter(Matrix::Zero(3, 3), 0);
    CHECK(rb_companion(LinearOperator::rota_baxter(identity(3), 0)).matrix == -identity(3));
    CHECK_THROWS_AS(rb_pair(h, r, LinearOperator::rota_baxter(Matrix::Zero(3, 3), 1)), UsageError);
    CHECK_THROWS_AS(rb_companion(LinearOperator::nijenhuis(identity(3))), UsageError);

    // r = s: the pair identity is twice the weight-zero identity, so a nonzero weight breaks it.
    const LinearOperator scalar = LinearOperator::rota_baxter(Matrix(Rational(5, 2) * identity(1)), 0);
    CHECK(rb_pair(fx::ab1(), scalar, scalar).report.passed());
    const RotaBaxterPair same = rb_pair(fx::g2a(1), fx::g2a_rota_baxter(), fx::g2a_rota_baxter());
    CHECK(check_passes(same.report, "R.rota-baxter"));
    CHECK_FALSE(check_passes(same.report, "pair-compatibility"));
}

TEST_CASE("composition with an algebra morphism") {
    // b3 is alpha composed with two compatible Lie brackets, alpha a morphism of both.
    const CompatibleHomLieAlgebra b = fx::b3();
    CHECK(verify_structure(b).passed());
    CHECK(b.alpha() != identity(3));
}

TEST_CASE("maurer-cartan elements are exactly the hom-lie brackets") {
    Gen gen(59);
    const Matrix twists[] = {identity(3), fx::b3().alpha(), Matrix(Rational(2) * identity(3))};
    int jacobi = 0, not_jacobi = 0;
    for (const Matrix& alpha : twists) {
        const auto basis = hom_cochain_basis(alpha, alpha, 2);
        for (int trial = 0; trial < 30; ++trial) {
            Cochain mu = Cochain::zero(2, 3, 3);
            // Sparse combinations hit the Jacobi locus often enough.
            for (const Cochain& b : basis)
                if (gen.coin(0.3)) mu += Rational(gen.integer(-2, 2)) * b;
            const bool mc = is_mc_pair(mu, Cochain::zero(2, 3, 3), alpha).first.is_zero();
            const bool hj = naive_hom_jacobi(alpha, mu);
            CHECK(mc == hj);
            CHECK(check_passes(verify_structure(HomLieAlgebra(alpha, mu)), "hom-jacobi") == hj);
            (hj ? jacobi : not_jacobi)++;
        }
    }
    CHECK(jacobi > 0);
    CHECK(not_jacobi > 0);
}

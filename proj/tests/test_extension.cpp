#include "support.hpp"

#include "hlie/extension.hpp"
#include "hlie/fixtures.hpp"
#include "hlie/linalg.hpp"

#include <doctest.h>

using namespace hlie;
using namespace hlie::test;
namespace fx = hlie::fixtures;

namespace {

struct Setting {
    const char* name;
    CompatibleHomLieAlgebra c;
    Representation v;
};

std::vector<Setting> settings() {
    return {{"d2 split", fx::d2(), fx::d2_split_rep()},
            {"d2 adjoint", fx::d2(), adjoint_representation(fx::d2())},
            {"h3 pair", fx::h3_pair(), adjoint_representation(fx::h3_pair())},
            {"b3", fx::b3(), adjoint_representation(fx::b3())},
            {"ab1 trivial", fx::ab1_pair(), trivial_representation(1, 2, identity(2))}};
}

ExtensionCocycle random_cocycle(Gen& gen, const CohomologyReport& z2, const Setting& s) {
    const CompatibleCochain z = gen.combination(z2.cocycle_basis, 2, s.c.dim(), s.v.vdim());
    return {z.components[0], z.components[1]};
}

ExtensionCocycle operator+(const ExtensionCocycle& a, const CompatibleCochain& b) {
    return {a.f1 + b.components[0], a.f2 + b.components[1]};
}

bool same_representation(const Representation& a, const Representation& b) {
    if (!matrices_equal(a.beta(), b.beta()) || a.action_count() != b.action_count()) return false;
    for (int k = 0; k < a.action_count(); ++k)
        for (int i = 0; i < a.base_dim(); ++i)
            if (!matrices_equal(a.actions()[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)],
                                b.actions()[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]))
                return false;
    return true;
}

// Direct checks that phi is a morphism of extensions, bracket by bracket on basis pairs.
bool is_extension_morphism(const AbelianExtension& from, const AbelianExtension& to, const Matrix& phi) {
    if (!(to.projection() * phi == from.projection())) return false;
    if (!(phi * from.inclusion() == to.inclusion())) return false;
    if (!(phi * from.total().alpha() == to.total().alpha() * phi)) return false;
    const int n = from.total().dim();
    for (int k = 0; k < 2; ++k) {
        const HomLieAlgebra h = from.total().component(k);
        const HomLieAlgebra h2 = to.total().component(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(phi * h(e(n, i), e(n, j)) == h2(phi.col(i), phi.col(j)))) return false;
    }
    return true;
}

} // namespace

TEST_CASE("build and extract round trip") {
    Gen gen(131);
    for (const Setting& s : settings()) {
        CAPTURE(std::string(s.name));
        const CohomologyReport z2 = cohomology_dimensions(s.c, s.v, 2);
        for (int trial = 0; trial < 4; ++trial) {
            const ExtensionCocycle z = random_cocycle(gen, z2, s);
            const AbelianExtension e = build_extension(s.c, s.v, z);
            CHECK(e.total().dim() == s.c.dim() + s.v.vdim());
            CHECK(verify_structure(e.total()).passed());
            CHECK(verify_extension(s.c, s.v.beta(), e.total(), e.inclusion(), e.projection(), e.splitting()).passed());
            const auto [rep, back] = extract_cocycle(e);
            CHECK(same_representation(rep, s.v));
            CHECK(back == z);
            CHECK(ext_class(e) == z2.class_coordinates(z.as_cochain()));
        }
    }
}

TEST_CASE("the zero cocycle gives the semidirect product") {
    for (const Setting& s : settings()) {
        CAPTURE(std::string(s.name));
        const int d = s.c.dim();
        const Index t = s.v.vdim();
        const AbelianExtension e = build_extension(s.c, s.v, {Cochain::zero(2, d, t), Cochain::zero(2, d, t)});
        const CompatibleHomLieAlgebra sd = semidirect_product(s.c, s.v);
        CHECK(e.total().bracket(0) == sd.bracket(0));
        CHECK(e.total().bracket(1) == sd.bracket(1));
        CHECK(e.total().alpha() == sd.alpha());
        CHECK(is_zero(ext_class(e)));
    }
}

TEST_CASE("cohomologous cocycles give equivalent extensions") {
    Gen gen(137);
    for (const Setting& s : settings()) {
        CAPTURE(std::string(s.name));
        const int d = s.c.dim();
        const Index t = s.v.vdim();
        const CohomologyReport z2 = cohomology_dimensions(s.c, s.v, 2);
        const auto taus = hom_cochain_basis(s.c.alpha(), s.v.beta(), 1);
        for (int trial = 0; trial < 4; ++trial) {
            const ExtensionCocycle z = random_cocycle(gen, z2, s);
            const Cochain tau = gen.combination(taus, 1, d, t);
            const ExtensionCocycle z2c = z + compatible_coboundary(s.c, s.v, CompatibleCochain{1, {tau}});
            const AbelianExtension e = build_extension(s.c, s.v, z);
            const AbelianExtension f = build_extension(s.c, s.v, z2c);
            const auto phi = check_equivalence(e, f);
            REQUIRE(phi.has_value());
            CHECK(is_extension_morphism(e, f, *phi));
            CHECK(ext_class(e) == ext_class(f));

            const auto back = check_equivalence(f, e);
            REQUIRE(back.has_value());
            CHECK(*back * *phi == identity(d + t));

            const auto self = check_equivalence(e, e);
            REQUIRE(self.has_value());
            CHECK(is_extension_morphism(e, e, *self));
        }
    }
    const AbelianExtension e = build_extension(fx::d2(), fx::d2_split_rep(), {Cochain::zero(2, 2, 2), Cochain::zero(2, 2, 2)});
    CHECK(*check_equivalence(e, e) == identity(4));
}

TEST_CASE("distinct classes give inequivalent extensions") {
    Gen gen(139);
    for (const Setting& s : settings()) {
        CAPTURE(std::string(s.name));
        const CohomologyReport z2 = cohomology_dimensions(s.c, s.v, 2);
        const int d = s.c.dim();
        const Index t = s.v.vdim();
        const auto lower = compatible_cochain_basis(s.c.alpha(), s.v, 1);
        for (Index a = 0; a < z2.dim_cohomology && a < 4; ++a)
            for (Index b = 0; b < z2.dim_cohomology && b < 4; ++b) {
                const CompatibleCochain za = z2.representative(e(z2.dim_cohomology, a)) +
                                             compatible_coboundary(s.c, s.v, gen.combination(lower, 1, d, t));
                const CompatibleCochain zb = z2.representative(e(z2.dim_cohomology, b));
                const AbelianExtension ea = build_extension(s.c, s.v, {za.components[0], za.components[1]});
                const AbelianExtension eb = build_extension(s.c, s.v, {zb.components[0], zb.components[1]});
                CHECK(check_equivalence(ea, eb).has_value() == (a == b));
                CHECK(ext_class(ea) == e(z2.dim_cohomology, a));
            }
    }
}

TEST_CASE("classes biject with H2 on d2 with split coefficients") {
    const CompatibleHomLieAlgebra d2 = fx::d2();
    const Representation v = fx::d2_split_rep();
    const CohomologyReport z2 = cohomology_dimensions(d2, v, 2);
    REQUIRE(z2.dim_cohomology == 2);
    std::vector<AbelianExtension> built;
    std::vector<Vector> coords;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            const Vector c = vec({a, b});
            const CompatibleCochain z = z2.representative(c);
            built.push_back(build_extension(d2, v, {z.components[0], z.components[1]}));
            coords.push_back(c);
            CHECK(ext_class(built.back()) == c);
        }
    for (std::size_t i = 0; i < built.size(); ++i)
        for (std::size_t j = 0; j < built.size(); ++j)
            CHECK(check_equivalence(built[i], built[j]).has_value() == (i == j));
}

TEST_CASE("changing the splitting shifts the cocycle by a coboundary") {
    Gen gen(149);
    for (const Setting& s : settings()) {
        CAPTURE(std::string(s.name));
        const int d = s.c.dim();
        const Index t = s.v.vdim();
        const CohomologyReport z2 = cohomology_dimensions(s.c, s.v, 2);
        const auto taus = hom_cochain_basis(s.c.alpha(), s.v.beta(), 1);
        for (int trial = 0; trial < 3; ++trial) {
            const ExtensionCocycle z = random_cocycle(gen, z2, s);
            const AbelianExtension e = build_extension(s.c, s.v, z);
            const Cochain tau = gen.combination(taus, 1, d, t);
            const AbelianExtension moved = e.with_splitting(e.splitting() + e.inclusion() * tau.coeffs());
            const auto [rep, shifted] = extract_cocycle(moved);
            CHECK(same_representation(rep, s.v));
            CHECK(shifted == z + compatible_coboundary(s.c, s.v, CompatibleCochain{1, {tau}}));
            CHECK(ext_class(moved) == ext_class(e));
        }
    }
}

TEST_CASE("invalid extension data") {
    const CompatibleHomLieAlgebra d2 = fx::d2();
    const Representation v = fx::d2_split_rep();
    const AbelianExtension e = build_extension(d2, v, {Cochain::zero(2, 2, 2), Cochain::zero(2, 2, 2)});

    // Not a section of the projection.
    Matrix bad = e.splitting();
    bad(0, 0) = 2;
    CHECK_FALSE(verify_extension(d2, v.beta(), e.total(), e.inclusion(), e.projection(), bad).passed());
    CHECK_THROWS_AS(e.with_splitting(bad), InvalidStructureError);

    // A splitting that does not intertwine the twists.
    const CompatibleHomLieAlgebra b = fx::b3();
    const Representation adj = adjoint_representation(b);
    const AbelianExtension eb = build_extension(b, adj, {Cochain::zero(2, 3, 3), Cochain::zero(2, 3, 3)});
    Matrix off = Matrix::Zero(3, 3);
    off(0, 1) = 1;
    REQUIRE_FALSE(adj.beta() * off == off * b.alpha());
    try {
        (void)eb.with_splitting(eb.splitting() + eb.inclusion() * off);
        FAIL("accepted a splitting that does not commute with the twists");
    } catch (const InvalidStructureError& err) {
        CHECK_FALSE(err.report().find("alpha-splitting")->passed);
    }

    // Not exact: the inclusion misses part of the kernel.
    Matrix incl = e.inclusion();
    incl.col(1).setZero();
    CHECK_THROWS_AS(AbelianExtension(d2, v.beta(), e.total(), incl, e.projection(), e.splitting()), InvalidStructureError);

    // A non-cocycle is refused.
    const CompatibleHomLieAlgebra h = fx::h3_pair();
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = 1;
    CHECK_THROWS_AS(build_extension(h, adjoint_representation(h), {Cochain(2, 3, m), Cochain::zero(2, 3, 3)}),
                    PreconditionError);

    // Extensions over different representations cannot be compared.
    const AbelianExtension adj2 =
        build_extension(d2, adjoint_representation(d2), {Cochain::zero(2, 2, 2), Cochain::zero(2, 2, 2)});
    CHECK_THROWS_AS(check_equivalence(e, adj2), UsageError);
    const AbelianExtension other = build_extension(fx::ab1_pair(), trivial_representation(1, 2, identity(2)),
                                                   {Cochain::zero(2, 1, 2), Cochain::zero(2, 1, 2)});
    CHECK_THROWS_AS(check_equivalence(e, other), UsageError);
}

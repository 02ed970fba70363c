#include "hlie/fixtures.hpp"

namespace hlie::fixtures {

namespace {

Vector vec(std::initializer_list<int> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index k = 0;
    for (int x : xs) v(k++) = x;
    return v;
}

Matrix mat(int n, std::initializer_list<int> row_major) {
    Matrix m(n, n);
    auto it = row_major.begin();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = *it++;
    return m;
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

} // namespace

HomLieAlgebra ab1() { return HomLieAlgebra(identity(1), structure_constants(1, {})); }

CompatibleHomLieAlgebra ab1_pair() {
    return CompatibleHomLieAlgebra(identity(1), structure_constants(1, {}), structure_constants(1, {}));
}

HomLieAlgebra g4a(const Rational& a) {
    const Matrix alpha = mat(4, {0, 1, 0, 0, //
                                 1, 0, 0, 0, //
                                 0, 0, 0, 1, //
                                 0, 0, 0, 0});
    return HomLieAlgebra(alpha, structure_constants(4, {{0, 1, a * vec({1, 1, 0, 0})}}));
}

LinearOperator g4a_nijenhuis() {
    return LinearOperator::nijenhuis(mat(4, {0, 1, 0, 0, //
                                             1, 0, 0, 0, //
                                             0, 0, 1, 0, //
                                             0, 0, 0, 1}));
}

HomLieAlgebra g2a(const Rational& a) {
    return HomLieAlgebra(mat(2, {0, 1, 1, 0}), structure_constants(2, {{0, 1, a * vec({1, 1})}}));
}

LinearOperator g2a_rota_baxter() { return LinearOperator::rota_baxter(mat(2, {0, 1, 1, 0}), -1); }

CompatibleHomLieAlgebra d2() {
    return CompatibleHomLieAlgebra(identity(2), structure_constants(2, {{0, 1, vec({1, 0})}}),
                                   structure_constants(2, {{0, 1, vec({0, 1})}}));
}

LinearOperator d2_nijenhuis() { return LinearOperator::nijenhuis(mat(2, {1, 0, 0, 2})); }

Representation d2_split_rep() {
    const Matrix zero = Matrix::Zero(2, 2);
    return Representation(identity(2), {{zero, mat(2, {1, 0, 0, -1})}, {mat(2, {-1, 0, 0, 1}), zero}});
}

HomLieAlgebra h3() { return HomLieAlgebra(identity(3), structure_constants(3, {{0, 1, vec({0, 0, 1})}})); }

LinearOperator h3_nijenhuis() { return LinearOperator::nijenhuis(mat(3, {1, 0, 0, 0, 2, 0, 0, 0, 1})); }

CompatibleHomLieAlgebra h3_pair() {
    const HomLieAlgebra l = h3();
    return CompatibleHomLieAlgebra(l.alpha(), l.bracket(), induced_bracket(l, h3_nijenhuis()).bracket());
}

CompatibleHomLieAlgebra b3() {
    const Matrix alpha = mat(3, {1, 0, 0, //
                                 0, 2, 0, //
                                 0, 1, 2});
    const StructureConstants lie1 = structure_constants(3, {{0, 1, vec({0, 1, 0})}, {0, 2, vec({0, 0, 1})}});
    const StructureConstants lie2 = structure_constants(3, {{0, 1, vec({0, 0, 1})}});
    return CompatibleHomLieAlgebra(alpha, Cochain(2, 3, alpha * lie1.coeffs()), Cochain(2, 3, alpha * lie2.coeffs()));
}

} // namespace hlie::fixtures

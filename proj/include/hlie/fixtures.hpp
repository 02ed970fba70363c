#pragma once

// Small named algebras used throughout the tests, the acceptance suite and the CLI
// fixture corpus. Indices in comments are 1-based to match the usual e_1, e_2, ...

#include "hlie/algebra.hpp"

namespace hlie::fixtures {

/// Dimension 1, zero bracket, alpha = id.
HomLieAlgebra ab1();
CompatibleHomLieAlgebra ab1_pair();

/// [e1,e2] = a(e1+e2); alpha swaps e1, e2, sends e3 to 0 and e4 to e3.
HomLieAlgebra g4a(const Rational& a = 1);
/// N swaps e1, e2 and fixes e3, e4.
LinearOperator g4a_nijenhuis();

/// [e1,e2] = a(e1+e2); alpha swaps e1, e2.
HomLieAlgebra g2a(const Rational& a = 1);
/// R = alpha, weight -1.
LinearOperator g2a_rota_baxter();

/// alpha = id, [e1,e2]_1 = e1, [e1,e2]_2 = e2.
CompatibleHomLieAlgebra d2();
/// diag(1, 2): Nijenhuis for both brackets of d2().
LinearOperator d2_nijenhuis();
/// K+ (+) K- over d2 with beta = id: e1 ._1 = 0, e2 ._1 = diag(1, -1),
/// e1 ._2 = diag(-1, 1), e2 ._2 = 0. Its compatible H^2 is 2-dimensional.
Representation d2_split_rep();

/// Heisenberg: alpha = id, [e1,e2] = e3.
HomLieAlgebra h3();
/// diag(1, 2, 1).
LinearOperator h3_nijenhuis();
/// (h3, [,]_N) for h3_nijenhuis().
CompatibleHomLieAlgebra h3_pair();

/// A 3-dimensional compatible pair with a non-identity twist, obtained by composing
/// alpha = 1 (+) [[2,0],[1,2]] with the Lie algebra morphisms of
/// [e1,e2]_1 = e2, [e1,e3]_1 = e3 and [e1,e2]_2 = e3.
CompatibleHomLieAlgebra b3();

} // namespace hlie::fixtures

#pragma once

#include <functional>

#include "reson/locator.hpp"
#include "reson/potential.hpp"

namespace reson {

// The connection coefficient phi(z) = C1(inf) + z C2(inf) for the whole-line
// problem, integrated in the scaled variable ft = f e^{-zx} (ft'' + 2z ft' =
// V ft, ft(-inf) = 1) so nothing overflows.  Zeros with Re z > 0 are the
// complex eigenvalues lambda = -z^2.
struct PhiEvaluation {
    Cplx z;
    Cplx C1_inf;
    Cplx C2_inf;
    Cplx phi;
    Real f_tilde_sup = 0;
};

namespace whole_line {

PhiEvaluation phi(const Problem& prob, Cplx z, Real tol);

std::function<Cplx(Cplx)> make_phi(const Problem& prob, Real tol = 0);

// Exact zero count of phi inside the rectangle by the argument principle.
int count_zeros(const Problem& prob, const Rect& rectangle, Real tol);

}  // namespace whole_line

}  // namespace reson

#pragma once

#include <functional>
#include <vector>

#include "reson/types.hpp"

namespace reson {

// Adaptive Gauss-Kronrod 15(7) on a finite interval, absolute error target.
// Throws ConvergenceError when the subdivision budget is exhausted.
Real integrate_adaptive(const std::function<Real(Real)>& f, Real a, Real b,
                        Real abs_tol, int max_subdivisions = 2000);

Cplx integrate_adaptive(const std::function<Cplx(Real)>& f, Real a, Real b,
                        Real abs_tol, int max_subdivisions = 2000);

// n-node Gauss-Legendre rule mapped to [a, b]; building block for Nystrom
// matrices and per-step quadratures.
void gauss_legendre(int n, Real a, Real b, std::vector<Real>& nodes,
                    std::vector<Real>& weights);

}  // namespace reson

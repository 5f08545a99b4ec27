#pragma once

#include <functional>

#include "reson/potential.hpp"
#include "reson/riccati.hpp"

namespace reson {

// Shared by both shooting methods.  When V has a nonzero limit at infinity
// the computation runs on V - V_inf with the shifted variable
// zt = sqrt(z^2 + V_inf), Re zt > 0, and lambda = -zt^2 + V_inf = -z^2.
Cplx shifted_z(const Potential& p, Cplx z);

struct Method1Options {
    Cplx alpha0 = 0;     // 0 = automatic (zt, re-chosen on admissibility failure)
    Real xmax = 0;       // 0 = decay rule
    Real ode_tol = 0;    // 0 = problem tolerance
};

// Boundary data of the resonance solution f = e^{zt x} + g computed from the
// two Riccati trajectories and the accumulated integrals I_+/I_-.
struct Method1State {
    Cplx z;        // caller's (unshifted) z
    Cplx zt;       // shifted z actually integrated with
    Cplx alpha0;
    Cplx i_plus_0;
    Cplx i_minus_0;
    Cplx exp_int_alpha_minus;  // e^{int_0^inf alpha_-}
    Cplx alpha_minus_0;
    Cplx g0;
    Cplx g0_prime;
    Cplx wronskian_denominator;  // alpha0 - alpha_-(0) + 2 zt
};

namespace method_one {

Method1State boundary_values(const Problem& prob, Cplx z, const Method1Options& opts = {});

// a (1 + g(0)) + b (zt + g'(0)); zeros with Re z > 0 are resonances
// lambda = -z^2.
Cplx residual(const Problem& prob, Cplx z, const Method1Options& opts = {});

std::function<Cplx(Cplx)> make_residual(const Problem& prob, Method1Options opts = {});

}  // namespace method_one

}  // namespace reson

#pragma once

#include "reson/ode.hpp"
#include "reson/potential.hpp"

namespace reson {

// Truncation point: smallest X with |V(x) - V_inf| e^{2 Re z x} <= tol_decay
// on [X, X+1].  Throws DecayError when the cap is reached first.
Real choose_xmax(const Potential& p, Cplx z, const Tolerances& tol);

// Solution of alpha' = -alpha^2 -+ 2 alpha z + (V - V_inf) together with the
// path integrals the two boundary-value methods need.  All fields refer to
// the decaying part of the potential; callers shift z when V_inf != 0.
struct RiccatiSolution {
    enum class Side { Minus, Plus };

    Side side;
    Cplx z;
    Real xmax;
    Trajectory trajectory;  // minus: [alpha, int_x^X alpha, int_x^X V e^{-S}]
                            // plus:  [alpha, int_0^x alpha]

    // minus side
    Cplx tail_int_alpha = 0;  // int_X^inf alpha ~ -int_X^inf V / (2z)
    Cplx int_alpha_half_line = 0;  // int_0^inf alpha_-
    Cplx i_plus_0 = 0;  // int_0^inf V(t) exp(-int_t^inf alpha_-) dt
    Cplx c1_integral = 0;  // int_0^inf e^{2zt}(gamma(2z-alpha)-2z)/gamma^2 dt

    // plus side
    Cplx i_minus_0 = 0;  // int_0^inf V(t) exp(2zt + int_0^t alpha_+) dt

    Cplx alpha_at(Real x) const { return trajectory.eval(x, 0); }
    Cplx int_alpha_0_to(Real x) const;
    Cplx int_alpha_to_inf(Real x) const;  // minus side only
};

RiccatiSolution solve_alpha_minus(const Potential& p, Cplx z, Real xmax, Real tol);

// Minus-side solve in the scaled variables rho = alpha / w, q = (int_x^X
// alpha) / w with w = -(V - V_inf)/(2z), available when the potential has a
// tail log-derivative.  Every small factor of the c1 integrand is then carried
// relative to the exactly evaluated V(t) e^{2zt}, which removes the absolute
// dense-output noise that e^{2zt} would otherwise amplify.
struct ScaledMinusSolution {
    Cplx z;
    Real xmax = 0;
    Cplx alpha0 = 0;               // alpha_-(0)
    Cplx int_alpha_half_line = 0;  // int_0^inf alpha_-
    Cplx c1_integral = 0;
};

ScaledMinusSolution solve_alpha_minus_scaled(const Potential& p, Cplx z, Real xmax,
                                             Real tol);
RiccatiSolution solve_alpha_plus(const Potential& p, Cplx z, Cplx alpha0, Real xmax,
                                 Real tol);

// i_minus_0 computed along a rotated ray t = e^{i phi} s instead of the real
// axis.  For analytic V the integrand is holomorphic in the sector and decays
// on the closing arc, so the value is unchanged, while rotation shrinks (or
// removes) the e^{2 Re z t} growth and with it the cancellation that limits
// the real-axis quadrature to an absolute noise floor of
// ~eps * max_t |V| e^{2 Re z t}.  The angle is chosen automatically with
// |phi| <= |phi_max|, rotating toward sign(phi_max); phi_max must lie
// strictly inside the declared analyticity sector.
Cplx solve_i_minus_ray(const Potential& p, Cplx z, Cplx alpha0, Real phi_max, Real tol,
                       Real decay_tol, Real cap);

// max_t |V(t) - V_inf| e^{2 Re z t} on [0, xmax]: the cancellation peak of the
// real-axis i_minus / c1 quadratures, hence the factor multiplying roundoff.
Real amplification_peak(const Potential& p, Cplx z, Real xmax);

}  // namespace reson

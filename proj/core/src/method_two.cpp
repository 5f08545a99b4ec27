#include "reson/method_two.hpp"

#include <cmath>

namespace reson {

namespace method_two {

Method2State boundary_values(const Problem& prob, Cplx z, const Method2Options& opts) {
    const Potential& p = prob.potential;
    const Cplx zt = shifted_z(p, z);
    if (!(zt.real() > 0)) throw SolverError("method two: Re z must be positive");
    const Real tol = opts.ode_tol > 0 ? opts.ode_tol : prob.tol.ode;
    const Real xmax = opts.xmax > 0 ? opts.xmax : choose_xmax(p, zt, prob.tol);

    Cplx alpha0, int_alpha, c1_integral;
    if (p.has_tail_log_derivative()) {
        // scaled tail variables keep the e^{2zt}-weighted c1 integrand
        // relative-accurate; essential once (Im z)^2 is large
        ScaledMinusSolution minus = solve_alpha_minus_scaled(p, zt, xmax, tol);
        alpha0 = minus.alpha0;
        int_alpha = minus.int_alpha_half_line;
        c1_integral = minus.c1_integral;
    } else {
        RiccatiSolution minus = solve_alpha_minus(p, zt, xmax, tol);
        alpha0 = minus.alpha_at(0);
        int_alpha = minus.int_alpha_half_line;
        c1_integral = minus.c1_integral;
    }

    Method2State st;
    st.z = z;
    st.zt = zt;
    st.u_minus_0 = std::exp(-int_alpha);  // gamma(0)
    st.c1 = 1.0L / st.u_minus_0 + c1_integral;
    st.f0 = st.c1 * st.u_minus_0;
    // u_-' = (alpha_- - zt) u_- from alpha_- = u_-'/u_- + zt
    const Cplx u_minus_prime_0 = (alpha0 - zt) * st.u_minus_0;
    st.f0_prime = st.c1 * u_minus_prime_0 + 2.0L * zt / st.u_minus_0;
    if (!std::isfinite(st.f0.real()) || !std::isfinite(st.f0_prime.real()))
        throw SolverError("method two: non-finite boundary values");
    return st;
}

Cplx residual(const Problem& prob, Cplx z, const Method2Options& opts) {
    if (!prob.bc.valid()) throw SolverError("boundary condition must have |a|+|b| > 0");
    Method2State st = boundary_values(prob, z, opts);
    return prob.bc.a * st.f0 + prob.bc.b * st.f0_prime;
}

std::function<Cplx(Cplx)> make_residual(const Problem& prob, Method2Options opts) {
    return [prob, opts](Cplx z) { return residual(prob, z, opts); };
}

}  // namespace method_two

}  // namespace reson

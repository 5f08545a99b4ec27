#include "reson/method_one.hpp"

#include <cmath>

namespace reson {

Cplx shifted_z(const Potential& p, Cplx z) {
    if (p.v_infinity() == Cplx(0)) return z;
    Cplx zt = std::sqrt(z * z + p.v_infinity());
    if (zt.real() < 0) zt = -zt;
    return zt;
}

namespace method_one {

Method1State boundary_values(const Problem& prob, Cplx z, const Method1Options& opts) {
    const Potential& p = prob.potential;
    const Cplx zt = shifted_z(p, z);
    if (!(zt.real() > 0)) throw SolverError("method one: Re z must be positive");
    const Real tol = opts.ode_tol > 0 ? opts.ode_tol : prob.tol.ode;
    const Real xmax = opts.xmax > 0 ? opts.xmax : choose_xmax(p, zt, prob.tol);

    RiccatiSolution minus = solve_alpha_minus(p, zt, xmax, tol);
    const Cplx alpha_minus_0 = minus.alpha_at(0);

    // any alpha0 != alpha_-(0) - 2z is admissible; keep a safe margin
    Cplx alpha0 = opts.alpha0;
    const Real margin = 1e-6L * std::abs(zt);
    if (alpha0 == Cplx(0)) {
        for (Cplx cand : {zt, 2.0L * zt, Cplx(0, 1) * zt}) {
            if (std::abs(cand - alpha_minus_0 + 2.0L * zt) >= margin) {
                alpha0 = cand;
                break;
            }
        }
    }
    const Cplx denom = alpha0 - alpha_minus_0 + 2.0L * zt;
    if (std::abs(denom) < margin)
        throw SolverError("method one: alpha0 violates the admissibility margin");

    // The plus-side quadrature cancels down from a peak of
    // max_t |V| e^{2 Re z t}, which multiplies roundoff; once that exceeds
    // ~1e9 the real-axis value loses enough digits to matter.  For analytic
    // potentials the same integral evaluated along a rotated ray has little
    // or no growth, so it stays accurate at machine precision arbitrarily
    // deep.
    Cplx i_minus_0;
    const Real peak = p.analytic() ? amplification_peak(p, zt, xmax) : 0;
    if (peak > 1e9L) {
        const Real phi_max = (std::arg(zt) >= 0 ? 0.98L : -0.98L) *
                             (p.analytic_sector_alpha() / 2);
        i_minus_0 = solve_i_minus_ray(p, zt, alpha0, phi_max, tol, prob.tol.decay,
                                      2 * prob.tol.xmax_cap);
    } else {
        i_minus_0 = solve_alpha_plus(p, zt, alpha0, xmax, tol).i_minus_0;
    }

    Method1State st;
    st.z = z;
    st.zt = zt;
    st.alpha0 = alpha0;
    st.alpha_minus_0 = alpha_minus_0;
    st.i_plus_0 = minus.i_plus_0;
    st.i_minus_0 = i_minus_0;
    st.exp_int_alpha_minus = std::exp(minus.int_alpha_half_line);
    st.wronskian_denominator = denom;
    const Cplx ie = st.i_plus_0 * st.exp_int_alpha_minus;
    st.g0 = (st.i_minus_0 - ie) / denom;
    st.g0_prime = (st.i_minus_0 * (alpha_minus_0 - zt) - ie * (alpha0 + zt)) / denom;
    if (!std::isfinite(st.g0.real()) || !std::isfinite(st.g0_prime.real()))
        throw SolverError("method one: non-finite boundary values");
    return st;
}

Cplx residual(const Problem& prob, Cplx z, const Method1Options& opts) {
    if (!prob.bc.valid()) throw SolverError("boundary condition must have |a|+|b| > 0");
    Method1State st = boundary_values(prob, z, opts);
    return prob.bc.a * (1.0L + st.g0) + prob.bc.b * (st.zt + st.g0_prime);
}

std::function<Cplx(Cplx)> make_residual(const Problem& prob, Method1Options opts) {
    return [prob, opts](Cplx z) { return residual(prob, z, opts); };
}

}  // namespace method_one

}  // namespace reson

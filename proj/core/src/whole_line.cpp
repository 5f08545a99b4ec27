#include "reson/whole_line.hpp"

#include <cmath>

#include "reson/ode.hpp"

namespace reson {

namespace whole_line {

namespace {

// cutoff with |V| below the decay tolerance on both tails (ft stays O(1),
// so no e^{2 Re z x} weighting is needed here)
Real phi_cutoff(const Potential& p, const Tolerances& tol) {
    int hits = 0;
    for (Real x = 1; x <= tol.xmax_cap; x += 0.5L) {
        Real m = std::max(std::abs(p.eval_decaying(x)), std::abs(p.eval_decaying(-x)));
        hits = m <= tol.decay ? hits + 1 : 0;
        if (hits == 3) return x;
    }
    throw DecayError("whole-line potential does not decay before the cap");
}

}  // namespace

PhiEvaluation phi(const Problem& prob, Cplx z, Real tol) {
    const Potential& p = prob.potential;
    if (prob.domain != Domain::WholeLine)
        throw SolverError("phi: whole-line problems only");
    if (p.v_infinity() != Cplx(0))
        throw SolverError("phi: potential must vanish at infinity");
    if (!(z.real() > 0)) throw SolverError("phi: Re z must be positive");

    const Real X = phi_cutoff(p, prob.tol);
    auto rhs = [&p, z](Real x, const State& y, State& dy) {
        dy.resize(2);
        dy[0] = y[1];
        dy[1] = p.eval(x) * y[0] - 2.0L * z * y[1];
        if (std::abs(y[0]) > 1e12L)
            throw SolverError("phi: scaled solution overflow");
    };
    Trajectory traj = integrate(rhs, -X, X, State{1, 0}, tol, p.breakpoints());

    PhiEvaluation out;
    out.z = z;
    const Cplx ft = traj.final_state()[0], ftp = traj.final_state()[1];
    out.phi = 2.0L * z * ft + ftp;
    // beyond the support ft = A + B e^{-2zx}; recover the connection
    // coefficients of sinh(zx)/z and cosh(zx)
    const Cplx A = ft + ftp / (2.0L * z);
    const Cplx B = -ftp * std::exp(2.0L * z * X) / (2.0L * z);
    out.C1_inf = z * (A - B);
    out.C2_inf = A + B;
    Real sup = 0;
    for (const auto& st : traj.steps()) sup = std::max(sup, std::abs(st.rcont[0][0]));
    out.f_tilde_sup = std::max(sup, std::abs(ft));
    return out;
}

std::function<Cplx(Cplx)> make_phi(const Problem& prob, Real tol) {
    Real t = tol > 0 ? tol : prob.tol.ode;
    return [prob, t](Cplx z) { return phi(prob, z, t).phi; };
}

int count_zeros(const Problem& prob, const Rect& rectangle, Real tol) {
    if (!(rectangle.lo.real() > 0))
        throw SolverError("count_zeros: rectangle must lie in Re z > 0");
    return winding_number(make_phi(prob, tol), rectangle);
}

}  // namespace whole_line

}  // namespace reson

#include "reson/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <quadmath.h>

#include "reson/quadrature.hpp"

namespace reson {

namespace {

// accurate e^s - 1 for complex s
Cplx cexpm1(Cplx s) {
    Real a = s.real(), b = s.imag();
    Real sinb2 = std::sin(b / 2);
    return {std::expm1(a) * std::cos(b) - 2 * sinb2 * sinb2,
            std::exp(a) * std::sin(b)};
}

// potential evaluation restricted to the interior of a smooth piece
struct PieceV {
    const Potential* p;
    Real lo = 0, hi = 0;
    Cplx operator()(Real x) const {
        return p->eval_decaying(std::min(std::max(x, lo), hi));
    }
};

constexpr Real kAlphaGuard = 1e6L;

const std::vector<Real>& gl15_nodes() {
    static std::vector<Real> nodes, weights;
    if (nodes.empty()) gauss_legendre(15, 0, 1, nodes, weights);
    return nodes;
}
const std::vector<Real>& gl15_weights() {
    static std::vector<Real> nodes, weights;
    if (weights.empty()) gauss_legendre(15, 0, 1, nodes, weights);
    return weights;
}

// Integrate over smooth pieces between breakpoints, concatenating the
// trajectories.  `make_rhs` receives the piece-clamped potential.
template <typename MakeRhs>
Trajectory integrate_pieces(const Potential& p, Real from, Real to, const State& y0,
                            Real tol, Real hmax, MakeRhs&& make_rhs) {
    const int dir = to >= from ? 1 : -1;
    std::vector<Real> cuts;
    for (Real b : p.breakpoints())
        if ((b - from) * dir > 0 && (to - b) * dir > 0) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    if (dir < 0) std::reverse(cuts.begin(), cuts.end());
    cuts.push_back(to);

    Trajectory traj;
    Real x = from;
    State y = y0;
    bool first = true;
    for (Real next : cuts) {
        PieceV v{&p, 0, 0};
        const Real delta = 1e-12L;
        v.lo = std::min(x, next) + delta;
        v.hi = std::max(x, next) - delta;
        Trajectory piece = integrate(make_rhs(v), x, next, y, tol, {}, 1000000, hmax);
        y = piece.final_state();
        x = next;
        if (first) {
            traj = std::move(piece);
            first = false;
        } else {
            traj.append(std::move(piece));
        }
    }
    return traj;
}

// sum of f over Gauss-Legendre nodes of every accepted step;
// equals the integral from trajectory begin to end (signed).
template <typename F>
Cplx quad_over_steps(const Trajectory& traj, F&& f) {
    const auto& un = gl15_nodes();
    const auto& uw = gl15_weights();
    // Kahan summation: the panels cancel down by ~e^{(Im z)^2}, so plain
    // accumulation rounds at the panel scale rather than the result scale.
    Cplx total = 0, comp = 0;
    auto add = [&](Cplx term) {
        Cplx y = term - comp;
        Cplx t = total + y;
        comp = (t - total) - y;
        total = t;
    };
    for (const auto& st : traj.steps()) {
        Cplx acc = 0, acc_c = 0;
        for (std::size_t i = 0; i < un.size(); ++i) {
            Cplx y = uw[i] * f(st.x0 + un[i] * st.h) - acc_c;
            Cplx t = acc + y;
            acc_c = (t - acc) - y;
            acc = t;
        }
        add(acc * st.h);
    }
    return total;
}

// The oscillatory integrals I_- and c1 cancel down from an integrand peak
// ~e^{(Re z)^2} to a value ~e^{Re z^2}, amplifying any integrand error by
// ~e^{(Im z)^2}.  Tighten the ODE tolerance accordingly (floored just above
// long-double machine precision) and cap the step so each 15-node panel sees
// only a few radians of the e^{2zt} phase.
Real effective_tol(Cplx z, Real tol) {
    Real im2 = std::min(z.imag() * z.imag(), (Real)80);
    return std::max((Real)1e-17L, std::min(tol, 1e-9L * std::exp(-im2)));
}

Real effective_hmax(Cplx z) { return std::min((Real)0.25L, 1.5L / std::abs(z)); }

// Quad-precision path for the deepest resonances.  Long double carries the
// minus-side state with ~1e-17 relative noise, and the e^{2zt}-weighted c1
// integral amplifies that noise by ~e^{(Im z)^2}, which caps the attainable
// residual around 1e-7 once (Im z)^2 > 22.  Redoing the scaled solve in
// __float128 -- with the c1 integral carried as a fourth state component so
// its error is smooth solver truncation rather than per-node roundoff --
// pushes the floor far below anything the refinement needs.
using Quad = __float128;
using QCplx = std::complex<Quad>;

QCplx qc(Cplx v) { return {(Quad)v.real(), (Quad)v.imag()}; }
Cplx from_qc(QCplx v) { return {(Real)v.real(), (Real)v.imag()}; }
QCplx qc_exp(QCplx s) {
    Quad e = expq(s.real());
    return {e * cosq(s.imag()), e * sinq(s.imag())};
}
QCplx qc_expm1(QCplx s) {
    Quad sb2 = sinq(s.imag() / 2);
    return {expm1q(s.real()) * cosq(s.imag()) - 2 * sb2 * sb2,
            expq(s.real()) * sinq(s.imag())};
}
QCplx qc_div(QCplx a, QCplx b) {
    Quad n = b.real() * b.real() + b.imag() * b.imag();
    return {(a.real() * b.real() + a.imag() * b.imag()) / n,
            (a.imag() * b.real() - a.real() * b.imag()) / n};
}
Quad qabs(QCplx v) { return sqrtq(v.real() * v.real() + v.imag() * v.imag()); }

using QState4 = std::array<QCplx, 4>;

// Self-contained adaptive Dormand-Prince 5(4) in __float128, no dense output.
template <typename Rhs>
QState4 quad_dopri5(Rhs&& rhs, Quad t0, Quad t1, QState4 y, Quad tol, Quad hmax) {
    static const Quad c2 = Quad(1) / 5, c3 = Quad(3) / 10, c4 = Quad(4) / 5,
                      c5 = Quad(8) / 9;
    static const Quad a21 = Quad(1) / 5;
    static const Quad a31 = Quad(3) / 40, a32 = Quad(9) / 40;
    static const Quad a41 = Quad(44) / 45, a42 = Quad(-56) / 15, a43 = Quad(32) / 9;
    static const Quad a51 = Quad(19372) / 6561, a52 = Quad(-25360) / 2187,
                      a53 = Quad(64448) / 6561, a54 = Quad(-212) / 729;
    static const Quad a61 = Quad(9017) / 3168, a62 = Quad(-355) / 33,
                      a63 = Quad(46732) / 5247, a64 = Quad(49) / 176,
                      a65 = Quad(-5103) / 18656;
    static const Quad b1 = Quad(35) / 384, b3 = Quad(500) / 1113, b4 = Quad(125) / 192,
                      b5 = Quad(-2187) / 6784, b6 = Quad(11) / 84;
    static const Quad e1 = Quad(71) / 57600, e3 = Quad(-71) / 16695, e4 = Quad(71) / 1920,
                      e5 = Quad(-17253) / 339200, e6 = Quad(22) / 525, e7 = Quad(-1) / 40;

    const Quad dir = t1 >= t0 ? 1 : -1;
    Quad t = t0;
    Quad h = dir * (hmax < Quad(1e-3) ? hmax : Quad(1e-3));
    QState4 k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    rhs(t, y, k1);
    for (long step = 0; dir * (t1 - t) > 0; ++step) {
        if (step > 50000000) throw ConvergenceError("quad_dopri5: step budget exhausted");
        if (dir * (t + h - t1) > 0) h = t1 - t;
        for (int i = 0; i < 4; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
        rhs(t + c2 * h, ytmp, k2);
        for (int i = 0; i < 4; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (int i = 0; i < 4; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (int i = 0; i < 4; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (int i = 0; i < 4; ++i)
            ytmp[i] = y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (int i = 0; i < 4; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7);
        Quad err = 0;
        for (int i = 0; i < 4; ++i) {
            QCplx le = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
            Quad ya = qabs(y[i]), yb = qabs(ynew[i]);
            Quad sc = tol + tol * (ya > yb ? ya : yb);
            Quad r = qabs(le) / sc;
            if (r > err) err = r;
        }
        if (err <= 1) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
        }
        Quad fac = err > 0 ? Quad(0.9) * powq(err, Quad(-0.2)) : Quad(5);
        if (fac > 5) fac = 5;
        if (fac < Quad(0.2)) fac = Quad(0.2);
        h *= fac;
        if (fabsq(h) > hmax) h = dir * hmax;
    }
    return y;
}

Cplx tail_integral_v(const Potential& p, Real xmax) {
    Real width = std::max((Real)2, 0.1L * xmax);
    auto f = [&](Real x) { return p.eval_decaying(x); };
    return integrate_adaptive(std::function<Cplx(Real)>(f), xmax, xmax + width, 1e-18L, 200);
}

}  // namespace

Real choose_xmax(const Potential& p, Cplx z, const Tolerances& tol) {
    if (!(z.real() > 0)) throw SolverError("choose_xmax: Re z must be positive");
    const Real step = 0.5;
    int hits = 0;
    for (Real x = 1; x <= tol.xmax_cap; x += step) {
        Real decay = std::abs(p.eval_decaying(x)) * std::exp(2 * z.real() * x);
        hits = decay <= tol.decay ? hits + 1 : 0;
        if (hits == 3) return x;
    }
    throw DecayError("decay condition |V| e^{2 Re z x} -> 0 not met before the cap; "
                     "Re z too large for this potential");
}

Cplx RiccatiSolution::int_alpha_0_to(Real x) const {
    if (side == Side::Plus) return trajectory.eval(x, 1);
    return trajectory.final_state()[1] - trajectory.eval(x, 1);
}

Cplx RiccatiSolution::int_alpha_to_inf(Real x) const {
    return trajectory.eval(x, 1) + tail_int_alpha;
}

RiccatiSolution solve_alpha_minus(const Potential& p, Cplx z, Real xmax, Real tol) {
    if (!(z.real() > 0)) throw SolverError("solve_alpha_minus: Re z must be positive");
    RiccatiSolution sol;
    sol.side = RiccatiSolution::Side::Minus;
    sol.z = z;
    sol.xmax = xmax;

    Cplx tail_v = tail_integral_v(p, xmax);
    sol.tail_int_alpha = -tail_v / (2.0L * z);

    // state: [alpha, I(x) = int_x^X alpha, J(x) = int_x^X V e^{-S}]
    auto make_rhs = [&](PieceV v) {
        return [v, z, tail = sol.tail_int_alpha](Real x, const State& y, State& dy) {
            const Cplx a = y[0];
            if (std::abs(a) > kAlphaGuard)
                throw PoleError("alpha_- blow-up: z too close to a zero of u_-");
            const Cplx vv = v(x);
            dy.resize(3);
            dy[0] = -a * a + 2.0L * a * z + vv;
            dy[1] = -a;
            dy[2] = -vv * std::exp(-(tail + y[1]));
        };
    };
    const Cplx seed = -p.eval_decaying(xmax) / (2.0L * z);
    sol.trajectory = integrate_pieces(p, xmax, 0, State{seed, 0, 0}, effective_tol(z, tol),
                                      effective_hmax(z), make_rhs);

    const State& at0 = sol.trajectory.final_state();
    sol.int_alpha_half_line = at0[1] + sol.tail_int_alpha;
    sol.i_plus_0 = at0[2] + tail_v;  // e^{-S} ~ 1 beyond X

    // c1 integrand e^{2zt}(gamma (2z - alpha) - 2z)/gamma^2 rewritten through
    // E = e^{S} - 1 so the e^{2zt} cancellation happens in exact arithmetic:
    //   bracket = -alpha - (2z + alpha) E - 2z E^2.
    const Cplx tail = sol.tail_int_alpha;
    const Trajectory& traj = sol.trajectory;
    // The bracket has exact size ~|V(t)| / |2z|, but its numerical noise does
    // not decay with V; multiplied by e^{2 Re z t} that noise dominates once V
    // drops below roundoff scale (and over the whole exterior of a compactly
    // supported V).  Skip nodes where every later V sample is negligible: the
    // bracket there depends only on that negligible tail.  The suffix maximum
    // runs over the step grid (the trajectory goes from X down to 0).
    std::vector<Real> xs, msuf;
    for (const DenseStep& st : traj.steps()) {
        xs.push_back(st.x0);
        const Real m = std::abs(p.eval_decaying(st.x0));
        msuf.push_back(msuf.empty() ? m : std::max(msuf.back(), m));
    }
    const Real cut = msuf.empty() ? 0 : 1e-18L * msuf.back();
    auto suffix_v = [&](Real t) -> Real {
        // first grid point <= t: its cumulative max covers all samples >= t,
        // plus the one step containing t (which may straddle a breakpoint)
        auto it = std::lower_bound(xs.begin(), xs.end(), t, std::greater<Real>());
        auto idx = std::min(static_cast<std::size_t>(it - xs.begin()), msuf.size() - 1);
        return std::max(msuf[idx], std::abs(p.eval_decaying(t)));
    };
    Cplx c1 = quad_over_steps(traj, [&](Real t) -> Cplx {
        if (suffix_v(t) <= cut) return 0;
        Cplx a = traj.eval(t, 0);
        Cplx e = cexpm1(tail + traj.eval(t, 1));
        return std::exp(2.0L * z * t) * (-a - (2.0L * z + a) * e - 2.0L * z * e * e);
    });
    sol.c1_integral = -c1;  // trajectory runs from X down to 0
    return sol;
}

ScaledMinusSolution solve_alpha_minus_scaled(const Potential& p, Cplx z, Real xmax,
                                             Real tol) {
    if (!(z.real() > 0)) throw SolverError("solve_alpha_minus_scaled: Re z must be positive");
    if (!p.has_tail_log_derivative())
        throw SolverError("solve_alpha_minus_scaled: potential lacks a tail log-derivative");

    ScaledMinusSolution sol;
    sol.z = z;
    sol.xmax = xmax;

    const Cplx tail = -tail_integral_v(p, xmax) / (2.0L * z);
    const bool have_tail = std::abs(tail) > 0;

    auto w_of = [&](Real t) { return -p.eval_decaying(t) / (2.0L * z); };

    if (z.imag() * z.imag() > 22) {
        // decaying part V - V_inf = w0 e^{g(t)}, with log-derivative g'(t)
        std::function<Quad(Quad)> g_of, l_of;
        Cplx w0;
        switch (p.kind()) {
            case Potential::Kind::GaussianWell:
                g_of = [](Quad t) { return -t * t; };
                l_of = [](Quad t) { return -2 * t; };
                w0 = -1;
                break;
            case Potential::Kind::PerturbedGaussian: {
                Quad eps = (Quad)p.params().at("eps");
                g_of = [eps](Quad t) { return (1 - sqrtq(1 + 2 * eps * t * t)) / eps; };
                l_of = [eps](Quad t) { return -2 * t / sqrtq(1 + 2 * eps * t * t); };
                w0 = -1;
                break;
            }
            case Potential::Kind::DecaySum: {
                const DecayTerm& dt = p.terms()[0];
                Quad rate = (Quad)dt.rate;
                int rr = dt.r;
                g_of = [rate, rr](Quad t) { return rr == 2 ? -rate * t * t : -rate * t; };
                l_of = [rate, rr](Quad t) { return rr == 2 ? -2 * rate * t : -rate; };
                w0 = dt.weight;
                break;
            }
            default:
                throw SolverError("solve_alpha_minus_scaled: no quad evaluation path");
        }
        const QCplx w0q = qc(w0), tailq = qc(tail), two_z = qc(2.0L * z);
        const QCplx inv2z = qc_div(QCplx(1), two_z);
        auto rhs = [&](Quad t, const QState4& y, QState4& dy) {
            const QCplx rho = y[0], q = y[1];
            if (qabs(rho) > kAlphaGuard)
                throw PoleError("alpha_- blow-up: z too close to a zero of u_-");
            const QCplx vt = w0q * expq(g_of(t));
            const QCplx w = -vt * inv2z;
            const Quad l = l_of(t);
            dy[0] = -w * rho * rho + two_z * (rho - QCplx(1)) - l * rho;
            dy[1] = -rho - l * q;
            dy[2] = -w * rho;
            // c1 integrand e^{2zt}(-alpha - (2z+alpha)E - 2zE^2)/(1+E)^0 with
            // E = e^{S}-1, S = w q + tail, regrouped against exact V e^{2zt}
            const QCplx s = w * q + tailq;
            QCplx r;  // (e^s - 1)/s
            if (s.real() * s.real() + s.imag() * s.imag() < Quad(1e-30))
                r = QCplx(1) + s * (QCplx(0.5) + s * (QCplx(1.0 / 6) + s * QCplx(1.0 / 24)));
            else
                r = qc_div(qc_expm1(s), s);
            const QCplx alpha = w * rho;
            const QCplx e2zt = qc_exp(two_z * t);
            QCplx val = vt * e2zt *
                        (rho * inv2z + (two_z + alpha) * r * q * inv2z +
                         r * r * q * (w * q + QCplx(2) * tailq));
            if (have_tail)
                val -= e2zt * tailq * ((two_z + alpha) * r + two_z * r * r * tailq);
            dy[3] = val;
        };
        QState4 y0 = {QCplx(1), QCplx(0), QCplx(0), QCplx(0)};
        QState4 at0 = quad_dopri5(rhs, (Quad)xmax, Quad(0), y0, Quad(1e-22),
                                  (Quad)effective_hmax(z));
        sol.alpha0 = w_of(0) * from_qc(at0[0]);
        sol.int_alpha_half_line = from_qc(at0[2]) + tail;
        sol.c1_integral = -from_qc(at0[3]);  // trajectory runs from X down to 0
        return sol;
    }

    // state: [rho = alpha/w, q = (int_x^X alpha)/w, m = int_x^X alpha]
    auto rhs = [&](Real t, const State& y, State& dy) {
        const Cplx rho = y[0], q = y[1];
        if (std::abs(rho) > kAlphaGuard)
            throw PoleError("alpha_- blow-up: z too close to a zero of u_-");
        const Cplx w = w_of(t);
        const Cplx l = p.tail_log_derivative(t);
        dy.resize(3);
        dy[0] = -w * rho * rho + 2.0L * z * (rho - 1.0L) - l * rho;
        dy[1] = -rho - l * q;
        dy[2] = -w * rho;
    };
    Trajectory traj = integrate(rhs, xmax, 0, State{Cplx(1), Cplx(0), Cplx(0)},
                                effective_tol(z, tol), {}, 1000000, effective_hmax(z));

    const State& at0 = traj.final_state();
    sol.alpha0 = w_of(0) * at0[0];
    sol.int_alpha_half_line = at0[2] + tail;

    // c1 integrand e^{2zt}(-alpha - (2z+alpha)E - 2zE^2), E = e^{S}-1,
    // S = w q + tail, regrouped so every term is a product of the exact
    // P = V(t) e^{2zt} (or e^{2zt} tail) with O(1) scaled factors.
    const Cplx ltail = have_tail ? std::log(tail) : Cplx(0);
    Cplx c1 = quad_over_steps(traj, [&](Real t) {
        const Cplx rho = traj.eval(t, 0), q = traj.eval(t, 1);
        const Cplx w = w_of(t);
        const Cplx s = w * q + tail;
        Cplx r;  // (e^s - 1)/s
        if (std::abs(s) < 1e-4L)
            r = 1.0L + s * (0.5L + s * (1.0L / 6 + s / 24.0L));
        else
            r = cexpm1(s) / s;
        const Cplx alpha = w * rho;
        const Cplx pp = p.eval_decaying(t) * std::exp(2.0L * z * t);
        Cplx val = pp * (rho / (2.0L * z) + (2.0L * z + alpha) * r * q / (2.0L * z) +
                         r * r * q * (w * q + 2.0L * tail));
        if (have_tail) {
            const Cplx tt = std::exp(2.0L * z * t + ltail);
            val -= tt * ((2.0L * z + alpha) * r + 2.0L * z * r * r * tail);
        }
        return val;
    });
    sol.c1_integral = -c1;  // trajectory runs from X down to 0
    return sol;
}

RiccatiSolution solve_alpha_plus(const Potential& p, Cplx z, Cplx alpha0, Real xmax,
                                 Real tol) {
    if (!(z.real() > 0)) throw SolverError("solve_alpha_plus: Re z must be positive");
    RiccatiSolution sol;
    sol.side = RiccatiSolution::Side::Plus;
    sol.z = z;
    sol.xmax = xmax;

    // state: [alpha, K(x) = int_0^x alpha]
    auto make_rhs = [&](PieceV v) {
        return [v, z](Real x, const State& y, State& dy) {
            const Cplx a = y[0];
            if (std::abs(a) > kAlphaGuard)
                throw PoleError("alpha_+ blow-up: Riccati pole on the integration path");
            dy.resize(2);
            dy[0] = -a * a - 2.0L * a * z + v(x);
            dy[1] = a;
        };
    };
    sol.trajectory = integrate_pieces(p, 0, xmax, State{alpha0, 0}, effective_tol(z, tol),
                                      effective_hmax(z), make_rhs);

    const Trajectory& traj = sol.trajectory;
    sol.i_minus_0 = quad_over_steps(traj, [&](Real t) {
        return p.eval_decaying(t) * std::exp(2.0L * z * t + traj.eval(t, 1));
    });
    return sol;
}

Real amplification_peak(const Potential& p, Cplx z, Real xmax) {
    Real peak = 0;
    for (Real t = 0; t <= xmax; t += 0.5L)
        peak = std::max(peak, std::abs(p.eval_decaying(t)) * std::exp(2 * z.real() * t));
    return peak;
}

Cplx solve_i_minus_ray(const Potential& p, Cplx z, Cplx alpha0, Real phi_max, Real tol,
                       Real decay_tol, Real cap) {
    if (!p.analytic())
        throw SolverError("ray quadrature requires an analytic potential");
    const Cplx vinf = p.v_infinity();

    // Pick the rotation angle by minimizing the integrand's peak
    // amplification (digits of cancellation) plus a small cost for the
    // truncation length.  The maximal rotation is often not optimal: close
    // to the sector edge a Gaussian-type tail decays very slowly and its
    // quadratic phase oscillates over a long stretch.
    const Real sign = phi_max >= 0 ? 1 : -1;
    const Real lim = std::abs(phi_max);
    Real best_score = 0, phi = 0, smax = 0;
    bool found = false;
    for (int k = 1; k <= 24; ++k) {
        const Real cand = lim * k / 24;
        const Cplx d = std::polar((Real)1, sign * cand);
        const Real grow = 2 * (z * d).real();
        Real peak = 0, send = 0;
        int hits = 0;
        for (Real s = 1; s <= cap; s += 1.0L) {
            // u(0) = 1 splits O(1)-O(1) between e^{zt} and e^{-zt}, so when
            // the rotation makes Re(z e^{i phi}) negative the integrand's
            // envelope is |V| times the *subdominant* component's O(1)
            // coefficient, not |V| e^{grow s}.  Taking the max keeps both the
            // amplification estimate and the truncation point honest; without
            // it a strongly rotated ray looks free and gets cut while the
            // integrand is still large.
            const Real m = std::abs(p.eval(d * s) - vinf) *
                           std::max(std::exp(grow * s), (Real)1);
            peak = std::max(peak, m);
            hits = m <= decay_tol ? hits + 1 : 0;
            if (hits >= 2) {
                send = s;
                break;
            }
        }
        if (send == 0) continue;
        const Real score = std::log(std::max(peak, (Real)1)) + 0.02L * send;
        if (!found || score < best_score) {
            found = true;
            best_score = score;
            phi = sign * cand;
            smax = send + 1;
        }
    }
    if (!found)
        throw DecayError("ray quadrature: integrand does not decay before the cap");

    const Cplx dir = std::polar((Real)1, phi);
    auto vtilde = [&](Real s) { return p.eval(dir * s) - vinf; };

    // In the linear variable u (u'' = (z^2 + V) u, alpha = u'/u - z) the
    // integrand V e^{2zt + int alpha} = V e^{zt} u(t) / u(0) contains u
    // linearly, so zeros of u along the ray -- which are pole strings of the
    // Riccati variable and stall any step control -- are harmless.
    // state: [u, u', L(s) = int_0^s V e^{zt} u dt] along t = e^{i phi} s
    auto rhs = [&](Real s, const State& y, State& dy) {
        const Cplx t = dir * s;
        const Cplx v = vtilde(s);
        dy.resize(3);
        dy[0] = dir * y[1];
        dy[1] = dir * (z * z + v) * y[0];
        dy[2] = dir * v * std::exp(z * t) * y[0];
    };
    Trajectory traj = integrate(rhs, 0, smax, State{Cplx(1), alpha0 + z, Cplx(0)},
                                std::min(tol, (Real)1e-12L), {}, 4000000,
                                effective_hmax(z));
    return traj.final_state()[2];
}

}  // namespace reson

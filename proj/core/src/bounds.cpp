#include "reson/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace reson {
namespace bounds {

namespace {

// distance from lambda to the ray e^{-i theta} R+
Real ray_distance(Cplx lambda, Real theta) {
    Cplx w = lambda * std::polar((Real)1, theta);
    return w.real() >= 0 ? std::abs(w.imag()) : std::abs(w);
}

// distance to the closed sector {|arg| <= half} after rotating by theta
Real sector_distance(Cplx lambda, Real theta, Real half) {
    Cplx w = lambda * std::polar((Real)1, theta);
    if (w == Cplx(0)) return 0;
    Real excess = std::abs(std::arg(w)) - half;
    if (excess <= 0) return 0;
    return excess >= kPi / 2 ? std::abs(w) : std::abs(w) * std::sin(excess);
}

template <typename F>
Real golden_max(F&& f, Real lo, Real hi, Real xtol) {
    const Real phi = (std::sqrt((Real)5) - 1) / 2;
    Real x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    Real f1 = f(x1), f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

// maximum of a real-valued function on [0, X]: grid scan plus refinement
template <typename F>
Real grid_max(F&& f, Real X, int n) {
    Real best = f(0);
    int ibest = 0;
    for (int i = 1; i <= n; ++i) {
        Real v = f(X * i / n);
        if (v > best) {
            best = v;
            ibest = i;
        }
    }
    Real h = X / n;
    Real lo = std::max((Real)0, X * ibest / n - h);
    Real hi = std::min(X, X * ibest / n + h);
    return std::max(best, golden_max(f, lo, hi, h * 1e-12L));
}

Real decay_cutoff(const Potential& p) {
    Real X = 1;
    while (std::abs(p.eval_decaying(X)) > 1e-14L && X < 1e4L) X *= 1.5L;
    return std::min(X, (Real)1e4L);
}

}  // namespace

bool region_thm1(const Potential& p, Cplx lambda, Real tol, int n_theta) {
    const Real alpha = p.analytic_sector_alpha();
    for (int k = 0; k <= n_theta; ++k) {
        Real theta = alpha * k / n_theta;
        Real c;
        try {
            c = p.sup_norm_rotated(theta, tol);
        } catch (const SolverError&) {
            continue;  // unbounded on this ray: no constraint
        }
        if (ray_distance(lambda, theta) > c + tol) return false;
    }
    return true;
}

bool inside_S(const Potential& p, Cplx lambda, Real tol, int n_theta) {
    const Real alpha = p.analytic_sector_alpha();
    for (int k = 0; k <= n_theta; ++k) {
        Real theta = alpha * k / n_theta;
        Real a;
        try {
            a = p.ray_sup_a(theta, tol);
        } catch (const SolverError&) {
            continue;
        }
        if (lambda.real() * std::sin(theta) + lambda.imag() * std::cos(theta) > a + tol)
            return false;
    }
    return true;
}

bool region_thm2(const Potential& p, Cplx lambda, Real tol, int n_theta) {
    if (lambda.imag() <= 0) return true;  // statement assumes Im lambda > 0
    return inside_S(p, lambda, tol, n_theta);
}

bool region_thm3(const std::vector<SectorBallParam>& params, Cplx lambda, Real tol) {
    for (const auto& q : params) {
        if (!(q.gamma >= 0 && q.gamma < 1))
            throw DomainError("region_thm3: gamma must lie in [0, 1)");
        if (sector_distance(lambda, q.theta, std::asin(q.gamma)) > q.beta + tol)
            return false;
    }
    return true;
}

Envelope envelope_S(const Potential& p, int n, Real tol) {
    if (n < 2) throw DomainError("envelope_S: need at least two samples");
    const Real alpha = p.analytic_sector_alpha();
    Envelope env;

    const Real X = decay_cutoff(p);
    auto v_re = [&p](Real x) { return p.eval(x).real(); };
    env.big_m = std::max(grid_max(v_re, X, 4096), p.v_infinity().real());

    // a1 = max{V + x V'/2}; complex-step derivative when V is analytic
    auto vprime = [&p](Real x) -> Real {
        if (p.analytic() && x > 1e-3L) {
            const Real h = 1e-14L * x;  // keeps the complex step inside the sector
            return p.eval(Cplx(x, h)).imag() / h;
        }
        const Real h = 1e-6L;
        if (x >= h) return (p.eval(x + h).real() - p.eval(x - h).real()) / (2 * h);
        return (-3 * p.eval(x).real() + 4 * p.eval(x + h).real() - p.eval(x + 2 * h).real()) /
               (2 * h);
    };
    auto g = [&](Real x) { return p.eval(x).real() + x * vprime(x) / 2; };
    env.a1 = grid_max(g, X, 4096);

    // a(theta) and its derivative by finite differences, step ~ tol^{1/3}
    auto a_of = [&p, tol](Real theta) { return p.ray_sup_a(theta, tol); };
    const Real h = std::max(std::cbrt(tol), (Real)1e-6L);
    env.samples.reserve(n);
    for (int k = 0; k < n; ++k) {
        Real theta = alpha * k / n;
        Real a, ap;
        try {
            a = a_of(theta);
            if (theta < h) {
                ap = (-3 * a_of(theta) + 4 * a_of(theta + h) - a_of(theta + 2 * h)) / (2 * h);
            } else if (theta + h >= alpha) {
                ap = (3 * a_of(theta) - 4 * a_of(theta - h) + a_of(theta - 2 * h)) / (2 * h);
            } else {
                ap = (a_of(theta + h) - a_of(theta - h)) / (2 * h);
            }
        } catch (const SolverError&) {
            break;  // a blows up approaching the sector boundary; stop the polyline
        }
        EnvelopeSample s;
        s.theta = theta;
        s.a_theta = a;
        s.x = a * std::sin(theta) + ap * std::cos(theta);
        s.y = a * std::cos(theta) - ap * std::sin(theta);
        env.samples.push_back(s);
    }

    // quadratic coefficient near theta = 0, least squares on (0, 0.1]
    if (alpha > 0.1L) {
        Real num = 0, den = 0;
        for (int j = 1; j <= 10; ++j) {
            Real t = 0.01L * j;
            Real r = a_of(t) - env.a1 * t;
            num += t * t * r;
            den += t * t * t * t;
        }
        env.a2 = num / den;
    }
    env.tip_parabola_valid = env.a2 > 1e-2L * std::max((Real)1, env.a1);

    // the boundary polyline of a convex region turns one way only
    Real worst = 0, scale = 0, orient = 0;
    for (std::size_t i = 2; i < env.samples.size(); ++i) {
        const auto &s0 = env.samples[i - 2], &s1 = env.samples[i - 1], &s2 = env.samples[i];
        Real cx = (s1.x - s0.x) * (s2.y - s1.y) - (s1.y - s0.y) * (s2.x - s1.x);
        scale = std::max(scale, std::abs(cx));
        if (std::abs(cx) > std::abs(orient)) orient = cx;
    }
    for (std::size_t i = 2; i < env.samples.size(); ++i) {
        const auto &s0 = env.samples[i - 2], &s1 = env.samples[i - 1], &s2 = env.samples[i];
        Real cx = (s1.x - s0.x) * (s2.y - s1.y) - (s1.y - s0.y) * (s2.x - s1.x);
        if (orient < 0) cx = -cx;
        worst = std::min(worst, cx);
    }
    if (scale > 0 && worst < -1e-6L * scale)
        throw SolverError("envelope_S: sampled boundary is not convex (derivative noise)");

    return env;
}

ThresholdResult threshold(const Potential& p) {
    ThresholdResult best;
    best.provenance = "none";

    // total mass of the representing measure, for declared exponential sums
    bool measure_ok = false;
    Real gamma = 0;
    if (p.kind() == Potential::Kind::GaussianWell) {
        measure_ok = true;
        gamma = 1;
    } else if (p.kind() == Potential::Kind::DecaySum && !p.terms().empty()) {
        measure_ok = true;
        int r0 = p.terms().front().r;
        for (const auto& t : p.terms()) {
            if (t.r != r0) measure_ok = false;
            gamma += std::abs(t.weight);
        }
    }
    if (measure_ok) {
        best.finite = true;
        best.value = gamma;
        best.provenance = "measure-mass";
    }

    if (p.analytic_sector_alpha() >= kPi / 2 - 1e-12L) {
        try {
            Real a_half = p.ray_sup_a(kPi / 2, 1e-8L);
            if (!best.finite || a_half < best.value) {
                best.finite = true;
                best.value = a_half;
                best.provenance = "a(pi/2)";
            }
        } catch (const SolverError&) {
            // sup unbounded on the boundary ray: this route gives nothing
        }
    }
    return best;
}

NormBoundVerdict check_norm_bounds(const Potential& p, Cplx lambda, Real tol) {
    NormBoundVerdict v;
    v.l1 = p.l1_norm(tol, Domain::WholeLine);
    v.bound4 = v.l1 * v.l1 / 4;
    v.bound5 = 2.25L * v.l1 * v.l1;
    Real m = std::abs(lambda);
    v.thm4 = m <= v.bound4 + tol * (1 + v.bound4);
    v.thm5 = m <= v.bound5 + tol * (1 + v.bound5);
    return v;
}

}  // namespace bounds
}  // namespace reson

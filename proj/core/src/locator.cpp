#include "reson/locator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace reson {

namespace {

Real wrap_angle(Real a) {
    while (a > kPi) a -= 2 * kPi;
    while (a < -kPi) a += 2 * kPi;
    return a;
}

// phase change of f along [za, zb].  A small wrapped endpoint jump is not
// enough on its own: a true change of 2 pi - eps also wraps small.  Accept the
// direct jump only when the midpoint sample confirms it; otherwise subdivide.
Real edge_phase(const ResidualFn& f, Cplx za, Cplx fa, Cplx zb, Cplx fb, int depth) {
    if (std::abs(fa) == 0 || std::abs(fb) == 0)
        throw ZeroOnContourError("winding: residual vanishes on the contour");
    const Real direct = wrap_angle(std::arg(fb) - std::arg(fa));
    if (depth <= 0) {
        if (std::abs(direct) < kPi / 2) return direct;
        throw ZeroOnContourError("winding: phase cannot be tracked (zero on or near contour)");
    }
    Cplx zm = (za + zb) / (Real)2;
    Cplx fm = f(zm);
    if (std::abs(fm) == 0)
        throw ZeroOnContourError("winding: residual vanishes on the contour");
    const Real j1 = wrap_angle(std::arg(fm) - std::arg(fa));
    const Real j2 = wrap_angle(std::arg(fb) - std::arg(fm));
    if (std::abs(j1) < kPi / 2 && std::abs(j2) < kPi / 2 &&
        std::abs(j1 + j2 - direct) < 1e-9L)
        return direct;
    return edge_phase(f, za, fa, zm, fm, depth - 1) +
           edge_phase(f, zm, fm, zb, fb, depth - 1);
}

}  // namespace

int winding_number(const ResidualFn& f, const std::vector<Cplx>& vertices, int max_depth) {
    Real total = 0;
    std::vector<Cplx> values(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) values[i] = f(vertices[i]);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::size_t j = (i + 1) % vertices.size();
        total += edge_phase(f, vertices[i], values[i], vertices[j], values[j], max_depth);
    }
    Real w = total / (2 * kPi);
    long n = std::lround((double)w);
    if (std::abs(w - n) > 0.25L)
        throw ZeroOnContourError("winding: non-integer phase total");
    return (int)n;
}

int winding_number(const ResidualFn& f, const Rect& r, int max_depth) {
    std::vector<Cplx> corners = {r.lo, Cplx(r.hi.real(), r.lo.imag()), r.hi,
                                 Cplx(r.lo.real(), r.hi.imag())};
    return winding_number(f, corners, max_depth);
}

namespace {

// Residual evaluations cancel from a peak ~e^{(Re z)^2} down to ~e^{Re z^2},
// so roundoff leaves a noise floor ~eps * e^{(Im z)^2}.  Below it the residual
// test is unsatisfiable and iterates only stagnate.
Real residual_noise_floor(Cplx z) {
    Real im2 = std::min(z.imag() * z.imag(), (Real)80);
    return 1e-15L * (1 + std::abs(z)) * std::exp(im2);
}

}  // namespace

Resonance refine(const ResidualFn& f, Cplx z_guess, const RefineOptions& opts) {
    if (!(z_guess.real() > 0)) throw SolverError("refine: guess must have Re z > 0");

    Resonance r;
    r.method = opts.method;

    Cplx best_z = z_guess;
    Real best_res = -1;
    Real last_dz = -1;
    // Iterates bouncing inside the noise ball cannot do better than the floor.
    // Averaging the residual over a small circle of samples cancels the noise
    // and locates the underlying zero well below single-evaluation accuracy.
    auto stagnation_result = [&]() -> Resonance* {
        if (best_res < 0 || best_res > residual_noise_floor(best_z)) return nullptr;
        if (last_dz < 0 || last_dz > 1e3L * opts.tol * (1 + std::abs(best_z)))
            return nullptr;
        r.z = best_z;
        r.residual_abs = best_res;
        const Real r0 = 1e-6L * (1 + std::abs(best_z));
        const Cplx slope = (f(best_z + r0) - f(best_z - r0)) / (2 * r0);
        if (std::abs(slope) > 0 && std::isfinite(slope.real())) {
            const Real rc =
                std::min(r0, std::max((Real)1e-12L, 30 * best_res / std::abs(slope)));
            const int m = 12;
            Cplx sa = 0, sb = 0;
            for (int i = 0; i < m; ++i) {
                Cplx w = std::polar(rc, 2 * kPi * i / m);
                Cplx fi = f(best_z + w);
                sa += fi;
                sb += std::conj(w) * fi;
            }
            const Cplx a = sa / (Real)m;        // circle mean = intercept
            const Cplx b = sb / (m * rc * rc);  // first Fourier mode = slope
            const Cplx bu = std::abs(b) > 0.1L * std::abs(slope) ? b : slope;
            Cplx zfit = best_z - a / bu;
            if (std::abs(zfit - best_z) <= 10 * rc) r.z = zfit;
        }
        r.lambda = -r.z * r.z;
        return &r;
    };
    int stagnant = 0;

    const Real spread = 1e-4L * (1 + std::abs(z_guess));
    Cplx z0 = z_guess + spread, z1 = z_guess - spread * Cplx(0, 1), z2 = z_guess;
    Cplx f0 = f(z0), f1 = f(z1), f2 = f(z2);
    r.refinement_history = {{z0, std::abs(f0)}, {z1, std::abs(f1)}, {z2, std::abs(f2)}};

    for (int it = 0; it < opts.max_iter; ++it) {
        ++r.iterations;
        Cplx dz;
        // Muller: quadratic through the last three iterates
        const Cplx h1 = z1 - z0, h2 = z2 - z1;
        const Cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
        const Cplx a = (d2 - d1) / (h2 + h1);
        const Cplx b = a * h2 + d2;
        const Cplx disc = std::sqrt(b * b - 4.0L * f2 * a);
        const Cplx den1 = b + disc, den2 = b - disc;
        const Cplx den = std::abs(den1) >= std::abs(den2) ? den1 : den2;
        if (std::abs(den) > 0 && std::isfinite(den.real())) {
            dz = -2.0L * f2 / den;
        } else if (f2 != f1) {
            dz = -f2 * (z2 - z1) / (f2 - f1);  // secant fallback
        } else {
            if (Resonance* done = stagnation_result()) return *done;
            throw ConvergenceError("refine: degenerate iteration");
        }
        Cplx znew = z2 + dz;
        if (!(znew.real() > 0))
            throw ConvergenceError("refine: iterates escaped the half-plane Re z > 0");
        Cplx fnew = f(znew);
        z0 = z1; f0 = f1;
        z1 = z2; f1 = f2;
        z2 = znew; f2 = fnew;
        r.refinement_history.emplace_back(znew, std::abs(fnew));
        
        if (best_res < 0 || std::abs(fnew) < best_res) {
            best_res = std::abs(fnew);
            best_z = znew;
        }
        last_dz = std::abs(dz);
        if (std::abs(dz) <= 1e3L * opts.tol * (1 + std::abs(znew)) &&
            std::abs(fnew) <= residual_noise_floor(znew) &&
            std::abs(fnew) > opts.tol_res) {
            if (++stagnant >= 6)
                if (Resonance* done = stagnation_result()) return *done;
        } else {
            stagnant = 0;
        }
        if (std::abs(dz) <= opts.tol * (1 + std::abs(znew)) &&
            std::abs(fnew) <= opts.tol_res) {
            r.z = znew;
            r.lambda = -znew * znew;
            r.residual_abs = std::abs(fnew);
            return r;
        }
    }
    if (Resonance* done = stagnation_result()) return *done;
    throw ConvergenceError("refine: no convergence within the iteration budget");
}

namespace {

void scan_rect(const ResidualFn& f, Rect r, int depth, Real tol, ScanReport& report) {
    int w;
    Real jitter = 1e-3L * (std::abs(r.hi - r.lo));
    int attempt = 0;
    for (;;) {
        try {
            w = winding_number(f, r);
            break;
        } catch (const ZeroOnContourError&) {
            if (++attempt > 3) throw;
            r.lo -= Cplx(jitter, jitter);
            r.hi += Cplx(jitter, jitter);
            if (r.lo.real() <= 0) r.lo = Cplx(jitter / 2, r.lo.imag());
        }
    }
    if (w == 0) {
        report.subdivisions.emplace_back(r, 0);
        return;
    }
    if (w == 1) {
        report.subdivisions.emplace_back(r, 1);
        report.candidates.push_back(r.center());
        return;
    }
    if (depth <= 0) {
        report.subdivisions.emplace_back(r, w);
        report.unresolved.push_back(r);
        return;
    }
    const Cplx c = r.center();
    Rect q[4] = {{r.lo, c},
                 {Cplx(c.real(), r.lo.imag()), Cplx(r.hi.real(), c.imag())},
                 {Cplx(r.lo.real(), c.imag()), Cplx(c.real(), r.hi.imag())},
                 {c, r.hi}};
    for (const Rect& sub : q) scan_rect(f, sub, depth - 1, tol, report);
}

}  // namespace

ScanReport scan(const ResidualFn& f, Rect rectangle, int depth, Real tol) {
    if (!(rectangle.lo.real() > 0))
        throw SolverError("scan: rectangle must lie in Re z > 0");
    ScanReport report;
    report.rectangle = rectangle;
    scan_rect(f, rectangle, depth, tol, report);
    for (const auto& [rect, w] : report.subdivisions) report.winding += w;
    return report;
}

std::pair<Resonance, Resonance> deflate_pair(const ResidualFn& f, Cplx center, Real radius,
                                             const RefineOptions& opts) {
    // quadratic least-squares model of the residual on a circle of samples
    const int m = 12;
    std::vector<Cplx> zs(m), fs(m);
    for (int i = 0; i < m; ++i) {
        zs[i] = center + std::polar(radius, 2 * kPi * i / m);
        fs[i] = f(zs[i]);
    }
    // least-squares fit of c0 + c1 w + c2 w^2, w = z - center.  On a uniform
    // circle the monomials are orthogonal, so the fit reduces to discrete
    // Fourier coefficients.
    Cplx c0 = 0, c1 = 0, c2 = 0;
    for (int i = 0; i < m; ++i) {
        Cplx w = zs[i] - center;
        c0 += fs[i];
        c1 += std::conj(w) * fs[i];
        c2 += std::conj(w * w) * fs[i];
    }
    c0 /= m;
    c1 /= m * radius * radius;
    c2 /= m * radius * radius * radius * radius;

    Cplx disc = std::sqrt(c1 * c1 - 4.0L * c0 * c2);
    Cplx w1 = (-c1 + disc) / (2.0L * c2);
    Cplx w2 = (-c1 - disc) / (2.0L * c2);
    Cplx g1 = center + w1, g2 = center + w2;

    // alternate refinement with mutual deflation
    Resonance r1, r2;
    for (int round = 0; round < 3; ++round) {
        auto defl1 = [&](Cplx zz) { return f(zz) / (zz - g2); };
        r1 = refine(defl1, g1, opts);
        g1 = r1.z;
        auto defl2 = [&](Cplx zz) { return f(zz) / (zz - g1); };
        r2 = refine(defl2, g2, opts);
        g2 = r2.z;
    }
    if (std::abs(g1 - g2) <= opts.tol * (1 + std::abs(g1)))
        throw ConvergenceError("deflate_pair: roots collapsed (exact degeneracy)");
    // report residuals of the undeflated function
    r1.residual_abs = std::abs(f(r1.z));
    r2.residual_abs = std::abs(f(r2.z));
    return {r1, r2};
}

}  // namespace reson

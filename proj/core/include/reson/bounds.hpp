#pragma once

#include <string>
#include <vector>

#include "reson/potential.hpp"

namespace reson {

struct EnvelopeSample {
    Real theta, a_theta, x, y;
};

// Boundary of the convex enclosure S = inter_theta {x sin t + y cos t <= a(t)}
// with the small-angle data of its parabolic tip.
struct Envelope {
    std::vector<EnvelopeSample> samples;
    Real a1 = 0;     // max{V(x) + x V'(x)/2}
    Real a2 = 0;     // quadratic coefficient of a(theta) near 0
    Real big_m = 0;  // max V
    bool tip_parabola_valid = false;  // a2 bounded away from 0
};

struct ThresholdResult {
    bool finite = false;
    Real value = 0;
    std::string provenance;  // "a(pi/2)" | "measure-mass" | "none"
};

struct NormBoundVerdict {
    bool thm4 = false, thm5 = false;
    Real bound4 = 0, bound5 = 0;
    Real l1 = 0;
};

struct SectorBallParam {
    Real theta, gamma, beta;  // 0 <= gamma < 1
};

namespace bounds {

// lambda inside inter_theta {e^{-i theta} R+ + B(0, c(theta))}; angles whose
// rotated sup-norm is unbounded impose no constraint and are skipped.
bool region_thm1(const Potential& p, Cplx lambda, Real tol, int n_theta = 64);

// half-plane family x sin t + y cos t <= a(t); vacuously true for
// Im lambda <= 0 (the eigenvalue statement assumes Im lambda > 0).
bool region_thm2(const Potential& p, Cplx lambda, Real tol, int n_theta = 64);

// same half-plane family applied to resonances in -alpha < arg z <= 0
bool inside_S(const Potential& p, Cplx lambda, Real tol, int n_theta = 64);

bool region_thm3(const std::vector<SectorBallParam>& params, Cplx lambda, Real tol);

Envelope envelope_S(const Potential& p, int n, Real tol);

ThresholdResult threshold(const Potential& p);

NormBoundVerdict check_norm_bounds(const Potential& p, Cplx lambda, Real tol = 1e-10L);

}  // namespace bounds

}  // namespace reson

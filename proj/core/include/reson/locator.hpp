#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "reson/types.hpp"

namespace reson {

using ResidualFn = std::function<Cplx(Cplx)>;

// Axis-aligned rectangle in the z plane, corners lo = (left, bottom),
// hi = (right, top); must lie in Re z > 0 for resonance scans.
struct Rect {
    Cplx lo, hi;
    Cplx center() const { return (lo + hi) / (Real)2; }
    Real width() const { return hi.real() - lo.real(); }
    Real height() const { return hi.imag() - lo.imag(); }
};

struct ZeroOnContourError : SolverError {
    using SolverError::SolverError;
};

// Argument-principle winding number of f along the closed polyline through
// `vertices`, by adaptive phase tracking (successive phase jumps < pi/2).
int winding_number(const ResidualFn& f, const std::vector<Cplx>& vertices,
                   int max_depth = 48);
int winding_number(const ResidualFn& f, const Rect& r, int max_depth = 48);

struct Resonance {
    Cplx lambda;  // -z^2
    Cplx z;       // Re z > 0
    Real residual_abs = 0;
    std::string method = "custom";
    int iterations = 0;
    std::vector<std::pair<Cplx, Real>> refinement_history;  // (z, |residual|)
};

struct RefineOptions {
    Real tol = 1e-10L;
    Real tol_res = 1e-9L;
    int max_iter = 60;
    std::string method = "custom";
};

// Muller iteration with complex-secant fallback; converged when
// |dz| <= tol (1+|z|) and |residual| <= tol_res.
Resonance refine(const ResidualFn& f, Cplx z_guess, const RefineOptions& opts = {});

struct ScanReport {
    Rect rectangle;
    int winding = 0;
    std::vector<std::pair<Rect, int>> subdivisions;  // leaves with their winding
    std::vector<Cplx> candidates;                    // winding-1 leaf centers
    std::vector<Rect> unresolved;                    // winding >= 2 at depth limit
};

// Winding-number quadrisection until every leaf holds at most one zero or
// the depth budget runs out; zero-on-contour handled by rectangle jitter.
ScanReport scan(const ResidualFn& f, Rect rectangle, int depth = 6, Real tol = 1e-10L);

// Resolve a winding-2 cluster: quadratic model of the residual in the disc,
// then alternating Muller refinement with mutual deflation.
std::pair<Resonance, Resonance> deflate_pair(const ResidualFn& f, Cplx center,
                                             Real radius, const RefineOptions& opts = {});

}  // namespace reson

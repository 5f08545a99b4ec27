#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "reson/types.hpp"

namespace reson {

using State = std::vector<Cplx>;
using Rhs = std::function<void(Real x, const State& y, State& dy)>;

// One accepted step with the DOPRI5 continuous extension (order 4).
struct DenseStep {
    Real x0;
    Real h;  // signed
    std::vector<std::array<Cplx, 5>> rcont;  // per component
};

// Piecewise-polynomial solution of a complex ODE system on a real interval.
// Breakpoints are strictly monotone in the integration direction.
class Trajectory {
public:
    Real x_begin() const { return x_begin_; }
    Real x_end() const { return x_end_; }
    std::size_t dimension() const { return dim_; }
    std::size_t step_count() const { return steps_.size(); }
    const std::vector<DenseStep>& steps() const { return steps_; }
    const State& final_state() const { return y_end_; }

    Cplx eval(Real x, std::size_t component) const;
    Cplx derivative(Real x, std::size_t component) const;
    State eval(Real x) const;

    // Concatenate a continuation piece (other.x_begin() == x_end()).
    void append(Trajectory&& other);

    std::map<std::string, Cplx> functionals;

private:
    friend Trajectory integrate(const Rhs&, Real, Real, const State&, Real,
                                const std::vector<Real>&, int, Real);
    const DenseStep& locate(Real x) const;

    Real x_begin_ = 0, x_end_ = 0;
    std::size_t dim_ = 0;
    std::vector<DenseStep> steps_;
    State y_end_;
};

// Adaptive DOPRI5 with PI step-size control; local error per step <= tol
// (mixed absolute/relative).  `mandatory` lists interior points the stepper
// must land on exactly (potential breakpoints).  Integrates in either
// direction.  hmax > 0 caps |h| so dense output stays usable for per-step
// quadrature.  Throws ConvergenceError on step underflow or step budget.
Trajectory integrate(const Rhs& f, Real x_from, Real x_to, const State& y0,
                     Real tol, const std::vector<Real>& mandatory = {},
                     int max_steps = 1000000, Real hmax = 0);

}  // namespace reson

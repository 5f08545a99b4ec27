#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reson/expression.hpp"
#include "reson/types.hpp"

namespace reson {

// One term weight * exp(-rate * |x|^r), r in {1, 2}.
struct DecayTerm {
    Cplx weight;
    Real rate;
    int r;
};

// A 1-D potential evaluable at complex arguments along rotated rays
// w = e^{i theta/2} v.  Immutable; all operations are pure.
class Potential {
public:
    enum class Kind {
        Zero,
        GaussianWell,       // -exp(-x^2)
        ModifiedGaussian,   // x^2 exp(-x^2/b^2)
        Rittby,             // (x^2 - J) exp(-0.1 x^2) + J
        PerturbedGaussian,  // -exp((1 - sqrt(1 + 2 eps x^2)) / eps)
        SquareWell,         // -depth on [0, width)
        DecaySum,           // sum of DecayTerm
        Expr,
    };

    static Potential zero();
    static Potential gaussian_well();
    static Potential modified_gaussian(Real b);
    static Potential rittby(Real j = 1.6L);
    static Potential perturbed_gaussian(Real eps);
    static Potential square_well(Real depth, Real width = 1);
    static Potential decay_sum(std::vector<DecayTerm> terms);
    static Potential parse(const std::string& src);

    Kind kind() const { return kind_; }
    const std::map<std::string, Real>& params() const { return params_; }
    Cplx v_infinity() const { return v_inf_; }
    Real analytic_sector_alpha() const { return alpha_; }
    Domain domain_hint() const { return domain_hint_; }
    bool analytic() const { return analytic_; }
    // Points where V is not smooth; integrators must not step across them.
    const std::vector<Real>& breakpoints() const { return breakpoints_; }
    const std::vector<DecayTerm>& terms() const { return terms_; }

    Cplx eval(Cplx w) const;
    Cplx eval(Real x) const { return eval_real(x); }
    // V - V_infinity, the part all decay and norm logic applies to; evaluated
    // without the cancellation of subtracting V_inf from an already-rounded
    // V(x) (the far tail would round to exactly zero)
    Cplx eval_decaying(Real x) const;

    // d/dx log(V - V_inf) on (0, inf); available when the decaying part is
    // smooth and nonvanishing there.  Lets solvers carry tail quantities
    // relative to V, which keeps e^{2zx}-weighted integrals accurate.
    bool has_tail_log_derivative() const;
    Cplx tail_log_derivative(Real x) const;

    Real l1_norm(Real tol) const { return l1_norm(tol, domain_hint_); }
    Real l1_norm(Real tol, Domain domain) const;
    Real ray_sup_a(Real theta, Real tol) const;
    Real sup_norm_rotated(Real theta, Real tol) const;

private:
    Potential() = default;
    Cplx eval_real(Real x) const;
    Cplx eval_at(Cplx w) const;  // no sector check
    void require_in_sector(Cplx w) const;
    Real scan_sup(Real theta, Real tol, bool absolute) const;

    Kind kind_ = Kind::Zero;
    std::map<std::string, Real> params_;
    std::optional<Expression> expr_;
    std::vector<DecayTerm> terms_;
    Cplx v_inf_ = 0;
    Real alpha_ = kPi;
    Domain domain_hint_ = Domain::HalfLine;
    bool analytic_ = true;
    std::vector<Real> breakpoints_;
};

struct Problem {
    Potential potential = Potential::zero();
    Domain domain = Domain::HalfLine;
    BoundaryCondition bc = BoundaryCondition::dirichlet();
    Tolerances tol;
};

}  // namespace reson

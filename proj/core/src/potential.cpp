#include "reson/potential.hpp"

#include <algorithm>
#include <cmath>

#include "reson/quadrature.hpp"

namespace reson {

namespace {

// Golden-section refinement of a local maximum bracketed by [lo, hi].
template <typename F>
Real golden_max(F&& f, Real lo, Real hi, Real xtol) {
    const Real phi = (std::sqrt((Real)5) - 1) / 2;
    Real x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    Real f1 = f(x1), f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

Potential Potential::zero() {
    Potential p;
    p.kind_ = Kind::Zero;
    return p;
}

Potential Potential::gaussian_well() {
    Potential p;
    p.kind_ = Kind::GaussianWell;
    p.alpha_ = kPi / 2;
    return p;
}

Potential Potential::modified_gaussian(Real b) {
    Potential p;
    p.kind_ = Kind::ModifiedGaussian;
    p.params_["b"] = b;
    p.alpha_ = kPi / 2;
    return p;
}

Potential Potential::rittby(Real j) {
    Potential p;
    p.kind_ = Kind::Rittby;
    p.params_["J"] = j;
    p.v_inf_ = j;
    p.alpha_ = kPi / 2;
    return p;
}

Potential Potential::perturbed_gaussian(Real eps) {
    Potential p;
    p.kind_ = Kind::PerturbedGaussian;
    p.params_["eps"] = eps;
    p.alpha_ = kPi;
    return p;
}

Potential Potential::square_well(Real depth, Real width) {
    Potential p;
    p.kind_ = Kind::SquareWell;
    p.params_["depth"] = depth;
    p.params_["width"] = width;
    p.analytic_ = false;
    p.breakpoints_ = {width};
    return p;
}

Potential Potential::decay_sum(std::vector<DecayTerm> terms) {
    Potential p;
    p.kind_ = Kind::DecaySum;
    p.terms_ = std::move(terms);
    p.alpha_ = kPi / 2;
    p.domain_hint_ = Domain::WholeLine;
    for (const auto& t : p.terms_)
        if (t.r == 1) p.breakpoints_ = {0};  // |x| kink at the origin
    return p;
}

Potential Potential::parse(const std::string& src) {
    Potential p;
    p.kind_ = Kind::Expr;
    p.expr_ = Expression::parse(src);
    // All grammar functions are entire; sqrt stays on the principal branch
    // for the arguments the built-in uses, so the sector is not reduced.
    p.alpha_ = kPi;
    return p;
}

Cplx Potential::eval_decaying(Real x) const {
    if (kind_ == Kind::Rittby) {
        const Real j = params_.at("J");
        return (x * x - j) * std::exp(-0.1L * x * x);
    }
    return eval_real(x) - v_inf_;
}

Cplx Potential::eval_at(Cplx w) const {
    switch (kind_) {
        case Kind::Zero:
            return 0;
        case Kind::GaussianWell:
            return -std::exp(-w * w);
        case Kind::ModifiedGaussian: {
            const Real b = params_.at("b");
            return w * w * std::exp(-w * w / (b * b));
        }
        case Kind::Rittby: {
            const Real j = params_.at("J");
            return (w * w - j) * std::exp(-0.1L * w * w) + j;
        }
        case Kind::PerturbedGaussian: {
            const Real eps = params_.at("eps");
            return -std::exp((Real(1) - std::sqrt(Real(1) + 2 * eps * w * w)) / eps);
        }
        case Kind::SquareWell:
            return w.real() >= 0 && w.real() < params_.at("width") ? -params_.at("depth") : 0;
        case Kind::DecaySum: {
            Cplx sum = 0;
            for (const auto& t : terms_) {
                Cplx arg = t.r == 2 ? w * w : std::sqrt(w * w);  // |x| -> sqrt(x^2) continuation
                sum += t.weight * std::exp(-t.rate * arg);
            }
            return sum;
        }
        case Kind::Expr:
            return expr_->eval(w);
    }
    return 0;
}

Cplx Potential::eval_real(Real x) const { return eval_at(Cplx(x, 0)); }

bool Potential::has_tail_log_derivative() const {
    switch (kind_) {
        case Kind::GaussianWell:
        case Kind::PerturbedGaussian:
            return true;
        case Kind::DecaySum:
            return terms_.size() == 1 && terms_[0].weight != Cplx(0);
        default:
            return false;
    }
}

Cplx Potential::tail_log_derivative(Real x) const {
    switch (kind_) {
        case Kind::GaussianWell:
            return -2 * x;
        case Kind::PerturbedGaussian: {
            const Real eps = params_.at("eps");
            return -2 * x / std::sqrt(1 + 2 * eps * x * x);
        }
        case Kind::DecaySum:
            if (terms_.size() == 1)
                return terms_[0].r == 2 ? Cplx(-2 * terms_[0].rate * x) : Cplx(-terms_[0].rate);
            break;
        default:
            break;
    }
    throw SolverError("tail_log_derivative: not available for this potential");
}

void Potential::require_in_sector(Cplx w) const {
    if (w.imag() == 0) return;
    if (!analytic_)
        throw DomainError("potential has a non-analytic node; complex evaluation undefined");
    Real phi = std::arg(w);
    const Real half = alpha_ / 2 + 1e-12L;
    // w or -w must lie in {0 <= arg <= alpha/2}; rays cover both half-axes.
    if (phi >= -1e-12L && phi <= half) return;
    if (phi <= -kPi + half || std::abs(phi - kPi) <= 1e-12L) return;
    throw DomainError("argument outside the declared analyticity sector");
}

Cplx Potential::eval(Cplx w) const {
    require_in_sector(w);
    return eval_at(w);
}

Real Potential::l1_norm(Real tol, Domain domain) const {
    if (kind_ == Kind::Zero) return 0;
    if (kind_ == Kind::SquareWell) return params_.at("depth") * params_.at("width");
    // locate a cutoff beyond which the decaying part is below tol
    Real X = 1;
    while (std::abs(eval_decaying(X)) > tol * 1e-3L / (1 + X)) {
        X *= 1.5L;
        if (X > 1e4L)
            throw ConvergenceError("l1_norm: potential does not appear to be integrable");
    }
    auto f = [this](Real x) { return std::abs(eval_decaying(x)); };
    Real half = integrate_adaptive(std::function<Real(Real)>(f), 0, X, tol / 2);
    if (domain == Domain::HalfLine) return half;
    Real left = integrate_adaptive(std::function<Real(Real)>(f), -X, (Real)0, tol / 2);
    return half + left;
}

Real Potential::scan_sup(Real theta, Real tol, bool absolute) const {
    if (theta < 0 || theta > alpha_ + 1e-12L)
        throw DomainError("theta outside the analyticity sector");
    const Cplx ray = std::polar((Real)1, theta / 2);
    const Cplx phase = std::polar((Real)1, theta);
    auto f = [&](Real v) -> Real {
        Cplx val = eval_at(ray * v);
        return absolute ? std::abs(val) : std::imag(phase * val);
    };
    if (kind_ == Kind::Zero) return 0;

    // cutoff where the rotated potential has decayed below tol/10
    Real X = 1;
    const Real mag0 = std::abs(eval_at(ray) - v_inf_);
    while (std::abs(eval_at(ray * X) - v_inf_) > tol / 10) {
        X *= 1.25L;
        if (X > 1e4L) {
            if (std::abs(eval_at(ray * X / 1.25L) - v_inf_) > 1e6L * (1 + mag0))
                throw SolverError("ray supremum unbounded up to the grid cutoff");
            // bounded but not decaying (boundary angle); the sup is attained early
            X = 50;
            break;
        }
    }

    Real limit_candidate = absolute ? std::abs(v_inf_) : std::imag(phase * v_inf_);
    Real best = limit_candidate;
    int n = 1024;
    Real prev = -1e30L;
    for (int pass = 0; pass < 8; ++pass) {
        int ibest = -1;
        Real sup = limit_candidate;
        for (int i = 0; i <= n; ++i) {
            Real fv = f(X * i / n);
            if (fv > sup) {
                sup = fv;
                ibest = i;
            }
        }
        if (ibest >= 0) {
            Real h = X / n;
            Real lo = std::max((Real)0, X * ibest / n - h);
            Real hi = std::min(X, X * ibest / n + h);
            sup = std::max(sup, golden_max(f, lo, hi, h * 1e-10L));
        }
        best = sup;
        if (std::abs(sup - prev) < tol / 2) break;
        prev = sup;
        n *= 2;
    }
    return best;
}

Real Potential::ray_sup_a(Real theta, Real tol) const { return scan_sup(theta, tol, false); }

Real Potential::sup_norm_rotated(Real theta, Real tol) const { return scan_sup(theta, tol, true); }

}  // namespace reson

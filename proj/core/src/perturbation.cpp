#include "reson/perturbation.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "reson/locator.hpp"
#include "reson/method_one.hpp"
#include "reson/quadrature.hpp"
#include "reson/riccati.hpp"

namespace reson {

Cplx NystromOperator::pairing(const std::vector<Cplx>& u, const std::vector<Cplx>& v) const {
    Cplx s = 0;
    for (int i = 0; i < n; ++i) s += u[i] * v[i] * weights[i];
    return s;
}

std::vector<Cplx> NystromOperator::apply(const std::vector<Cplx>& g) const {
    std::vector<Cplx> out(n, Cplx(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += entry(i, j) * g[j];
    return out;
}

namespace perturbation {

namespace {

using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;

Cplx kappa(const BoundaryCondition& bc, Cplx z) {
    Cplx den = bc.b * z - bc.a;
    if (std::abs(den) < 1e-12L * (1 + std::abs(z)))
        throw PoleError("greens_function: bz = a (free-problem resonance)");
    return (bc.b * z + bc.a) / den;
}

struct NodeData {
    std::vector<Real> v;   // V at the nodes (real part)
    std::vector<Real> xw;  // |V|^{1/2}
    Real sigma = 1;
};

NodeData sample_potential(const Potential& p, const std::vector<Real>& nodes) {
    NodeData d;
    d.v.reserve(nodes.size());
    bool any_pos = false, any_neg = false;
    for (Real x : nodes) {
        Cplx val = p.eval(x);
        if (std::abs(val.imag()) > 1e-12L * (1 + std::abs(val)))
            throw SolverError("perturbation: potential must be real-valued");
        d.v.push_back(val.real());
        if (val.real() > 1e-14L) any_pos = true;
        if (val.real() < -1e-14L) any_neg = true;
    }
    if (any_pos && any_neg)
        throw SolverError("perturbation: sign-indefinite potential unsupported");
    d.sigma = any_neg ? -1 : 1;
    d.xw.reserve(nodes.size());
    for (Real v : d.v) d.xw.push_back(std::sqrt(std::abs(v)));
    return d;
}

}  // namespace

Cplx greens_function(const BoundaryCondition& bc, Real x, Real y, Cplx z, Domain domain) {
    if (std::abs(z) < 1e-12L) throw SolverError("greens_function: z too close to 0");
    Cplx g = std::exp(-z * std::abs(x - y));
    if (domain == Domain::HalfLine) g += kappa(bc, z) * std::exp(-z * (x + y));
    return g / (2.0L * z);
}

Cplx greens_function_dz(const BoundaryCondition& bc, Real x, Real y, Cplx z, Domain domain) {
    if (std::abs(z) < 1e-12L) throw SolverError("greens_function: z too close to 0");
    const Real d = std::abs(x - y), s = x + y;
    Cplx num = std::exp(-z * d), dnum = -d * num;
    if (domain == Domain::HalfLine) {
        Cplx k = kappa(bc, z);
        Cplx den = bc.b * z - bc.a;
        Cplx kp = -2.0L * bc.a * bc.b / (den * den);
        Cplx e = std::exp(-z * s);
        num += k * e;
        dnum += (kp - s * k) * e;
    }
    return dnum / (2.0L * z) - num / (2.0L * z * z);
}

NystromOperator build_A(const Problem& prob, Cplx z, int n) {
    if (!(z.real() > 0)) throw SolverError("build_A: Re z must be positive");
    const Potential& p = prob.potential;
    Real xmax = choose_xmax(p, z, prob.tol);

    NystromOperator op;
    op.z = z;
    op.n = n;
    const Real lo = prob.domain == Domain::WholeLine ? -xmax : 0;
    gauss_legendre(n, lo, xmax, op.nodes, op.weights);

    NodeData d = sample_potential(p, op.nodes);
    op.entries.assign((std::size_t)n * n, Cplx(0));
    // resonances see the outgoing (second-sheet) resolvent: the kernel built
    // on e^{+zx} instead of e^{-zx}, i.e. the first-sheet formula at -z
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Cplx g = greens_function(prob.bc, op.nodes[i], op.nodes[j], -z, prob.domain);
            op.entries[(std::size_t)i * n + j] =
                d.sigma * d.xw[i] * g * d.xw[j] * op.weights[j];
        }
        op.entries[(std::size_t)i * n + i] += 1.0L;
    }
    return op;
}

std::pair<Real, std::vector<Cplx>> null_vector(const NystromOperator& op) {
    Mat a(op.n, op.n);
    for (int i = 0; i < op.n; ++i)
        for (int j = 0; j < op.n; ++j) a(i, j) = op.entry(i, j);
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinV);
    std::vector<Cplx> g(op.n);
    for (int i = 0; i < op.n; ++i) g[i] = svd.matrixV()(i, op.n - 1);
    return {svd.singularValues()(op.n - 1), g};
}

Cplx nu_correction(const Problem& prob, const Potential& v1, Cplx z0,
                   const std::vector<Cplx>& g0, const NystromOperator& op) {
    const int n = op.n;
    NodeData d = sample_potential(prob.potential, op.nodes);

    std::vector<Real> v1n(n), ratio(n);
    for (int i = 0; i < n; ++i) {
        Cplx val = v1.eval(op.nodes[i]);
        if (std::abs(val.imag()) > 1e-12L * (1 + std::abs(val)))
            throw SolverError("nu_correction: perturbation must be real-valued");
        v1n[i] = val.real();
        ratio[i] = d.xw[i] > 0 ? v1n[i] / (2 * d.xw[i]) : 0;
    }

    // (A_eps g0)_i and (A_z g0)_i row by row; kernels share the Green's factor
    std::vector<Cplx> be(n, Cplx(0)), bz(n, Cplx(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Cplx g = greens_function(prob.bc, op.nodes[i], op.nodes[j], -z0, prob.domain);
            Cplx gp =
                -greens_function_dz(prob.bc, op.nodes[i], op.nodes[j], -z0, prob.domain);
            Cplx wj = op.weights[j] * g0[j];
            be[i] += (ratio[i] * g * d.xw[j] + d.xw[i] * g * ratio[j]) * wj;
            bz[i] += d.sigma * d.xw[i] * gp * d.xw[j] * wj;
        }
    }
    Cplx num = op.pairing(be, g0), den = op.pairing(bz, g0);
    Cplx norm = op.pairing(g0, g0);
    if (std::abs(den) < 1e-10L * std::abs(norm))
        throw ConvergenceError("nu_correction: denominator too small");
    return -num / den;
}

Cplx nu_correction(const Problem& prob, const Potential& v1, Cplx z0, int n) {
    NystromOperator op = build_A(prob, z0, n);
    auto [smin, g0] = null_vector(op);
    if (smin > 1e-3L)
        throw ConvergenceError("nu_correction: z0 is not a null point of A");
    return nu_correction(prob, v1, z0, g0, op);
}

std::vector<std::pair<Real, Cplx>> shift_fd(const Problem& prob,
                                            const std::function<Potential(Real)>& family,
                                            Cplx z0, const std::vector<Real>& eps_list) {
    RefineOptions ropts;
    ropts.tol = prob.tol.root;
    ropts.tol_res = prob.tol.residual;

    auto solve_at = [&](Real eps) {
        Problem q = prob;
        q.potential = family(eps);
        return refine(method_one::make_residual(q), z0, ropts).lambda;
    };
    Cplx lambda0 = solve_at(0);

    std::vector<std::pair<Real, Cplx>> out;
    out.reserve(eps_list.size());
    for (Real eps : eps_list)
        out.emplace_back(eps, eps == 0 ? Cplx(0) : solve_at(eps) - lambda0);
    return out;
}

}  // namespace perturbation

}  // namespace reson

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "reson/potential.hpp"

namespace reson {

// Gauss-Legendre Nystrom discretization of the Birman-Schwinger operator
// A(z) = I + sgn(V) X G X on the quadrature nodes, X = |V|^{1/2}, where G is
// the outgoing continuation of the free resolvent (the first-sheet kernel
// evaluated at -z), so null vectors of A(z) are resonances rather than bound
// states.  A is self-transpose in the weighted bilinear pairing
// (u, v) = sum u_i v_i w_i.
struct NystromOperator {
    Cplx z;
    int n = 0;
    std::vector<Real> nodes, weights;
    std::vector<Cplx> entries;  // row-major n x n

    Cplx entry(int i, int j) const { return entries[(std::size_t)i * n + j]; }
    Cplx pairing(const std::vector<Cplx>& u, const std::vector<Cplx>& v) const;
    std::vector<Cplx> apply(const std::vector<Cplx>& g) const;
};

namespace perturbation {

// Resolvent kernel of -d^2/dx^2 + z^2; half line uses the image term with
// reflection coefficient kappa = (bz + a)/(bz - a).
Cplx greens_function(const BoundaryCondition& bc, Real x, Real y, Cplx z,
                     Domain domain = Domain::HalfLine);
Cplx greens_function_dz(const BoundaryCondition& bc, Real x, Real y, Cplx z,
                        Domain domain = Domain::HalfLine);

NystromOperator build_A(const Problem& prob, Cplx z, int n = 200);

// smallest singular value and the matching right singular vector
std::pair<Real, std::vector<Cplx>> null_vector(const NystromOperator& op);

// First-order shift nu = dz/deps of the null point under V + eps V1:
// nu = -(A_eps g0, g0) / (A_z g0, g0) with the bilinear weighted pairing.
// The resonance moves as lambda = lambda0 - 2 nu z0 eps + O(eps^2).
Cplx nu_correction(const Problem& prob, const Potential& v1, Cplx z0,
                   const std::vector<Cplx>& g0, const NystromOperator& op);
// convenience: builds A(z0) and its null vector first
Cplx nu_correction(const Problem& prob, const Potential& v1, Cplx z0, int n = 200);

// Recomputed resonance differences lambda(eps) - lambda(0) for a potential
// family, each refined from the unperturbed z0.
std::vector<std::pair<Real, Cplx>> shift_fd(const Problem& prob,
                                            const std::function<Potential(Real)>& family,
                                            Cplx z0, const std::vector<Real>& eps_list);

}  // namespace perturbation

}  // namespace reson

#include <doctest.h>

#include <cmath>
#include <random>

#include "reson/locator.hpp"
#include "reson/method_one.hpp"
#include "reson/perturbation.hpp"

using namespace reson;
using perturbation::greens_function;
using perturbation::greens_function_dz;

TEST_CASE("free resolvent kernel: dirichlet image form") {
    const Cplx z(0.7L, 0.2L);
    const BoundaryCondition bc = BoundaryCondition::dirichlet();
    for (Real x : {0.3L, 1.1L}) {
        for (Real y : {0.6L, 2.0L}) {
            const Cplx direct = std::exp(-z * std::abs(x - y)) / (2.0L * z);
            const Cplx image = std::exp(-z * (x + y)) / (2.0L * z);
            CHECK(std::abs(greens_function(bc, x, y, z) - (direct - image)) < 1e-15L);
        }
    }
    CHECK(std::abs(greens_function(bc, 0, 1.3L, z)) < 1e-17L);  // BC at x = 0
}

TEST_CASE("kernel symmetry and boundary condition for a robin problem") {
    const Cplx z(0.9L, 0.35L);
    const BoundaryCondition bc{2, 1};
    CHECK(std::abs(greens_function(bc, 0.4L, 1.7L, z) -
                   greens_function(bc, 1.7L, 0.4L, z)) < 1e-16L);
    // a G(0, y) + b dG/dx(0, y) = 0
    const Real h = 1e-7L, y = 1.2L;
    const Cplx gx = (greens_function(bc, h, y, z) - greens_function(bc, 0, y, z)) / h;
    CHECK(std::abs(bc.a * greens_function(bc, 0, y, z) + bc.b * gx) < 1e-6L);
}

TEST_CASE("kernel satisfies the ODE and the derivative jump") {
    const Cplx z(0.8L, 0.1L);
    const BoundaryCondition bc = BoundaryCondition::neumann();
    const Real y = 1.0L, h = 1e-4L;
    // -G'' + z^2 G = 0 away from the diagonal
    for (Real x : {0.5L, 1.6L}) {
        const Cplx g2 = (greens_function(bc, x + h, y, z) - 2.0L * greens_function(bc, x, y, z) +
                         greens_function(bc, x - h, y, z)) / (h * h);
        CHECK(std::abs(-g2 + z * z * greens_function(bc, x, y, z)) < 1e-6L);
    }
    // jump of G' across x = y equals -1
    const Cplx gp_right = (greens_function(bc, y + 2 * h, y, z) -
                           greens_function(bc, y + h, y, z)) / h;
    const Cplx gp_left = (greens_function(bc, y - h, y, z) -
                          greens_function(bc, y - 2 * h, y, z)) / h;
    CHECK(std::abs(gp_right - gp_left + 1.0L) < 1e-3L);
}

TEST_CASE("z derivative of the kernel matches a finite difference") {
    const BoundaryCondition bc{1, -0.5L};
    const Cplx z(1.1L, 0.4L);
    const Real x = 0.7L, y = 1.9L, h = 1e-6L;
    const Cplx fd = (greens_function(bc, x, y, z + h) - greens_function(bc, x, y, z - h)) /
                    (2.0L * h);
    CHECK(std::abs(greens_function_dz(bc, x, y, z) - fd) < 1e-9L);
}

TEST_CASE("whole-line kernel has no image term") {
    const Cplx z(0.6L, 0.15L);
    const Cplx g = greens_function(BoundaryCondition::dirichlet(), 0.4L, 1.1L, z,
                                   Domain::WholeLine);
    CHECK(std::abs(g - std::exp(-0.7L * z) / (2.0L * z)) < 1e-16L);
}

TEST_CASE("discretized operator is self-transpose in the weighted pairing") {
    Problem prob;
    prob.potential = Potential::gaussian_well();
    prob.bc = BoundaryCondition::dirichlet();
    NystromOperator op = perturbation::build_A(prob, Cplx(0.75L, 0.05L), 60);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<Cplx> a(op.n), b(op.n);
    for (int i = 0; i < op.n; ++i) {
        a[i] = Cplx(u(rng), u(rng));
        b[i] = Cplx(u(rng), u(rng));
    }
    CHECK(std::abs(op.pairing(op.apply(a), b) - op.pairing(a, op.apply(b))) < 1e-12L);
}

TEST_CASE("null vector appears exactly at a resonance") {
    Problem prob;
    prob.potential = Potential::gaussian_well();
    prob.bc = BoundaryCondition::dirichlet();
    Resonance r = refine(method_one::make_residual(prob), Cplx(0.7278L, 0));
    auto [sigma_at, v1] = perturbation::null_vector(perturbation::build_A(prob, r.z, 120));
    auto [sigma_off, v2] =
        perturbation::null_vector(perturbation::build_A(prob, r.z + Cplx(0.1L, 0.05L), 120));
    CHECK(sigma_at < 1e-3L);  // Nystrom discretisation error at n = 120
    CHECK(sigma_off > 100 * sigma_at);
}

#include <doctest.h>

#include <cmath>

#include "reson/riccati.hpp"

using namespace reson;

TEST_CASE("alpha_+ closed form for V = 0") {
    // alpha' = -alpha^2 - 2 alpha z, alpha(0) = 1, z = 1:
    // 1/alpha = (1/alpha0 + 1/(2z)) e^{2zx} - 1/(2z) => alpha = 2/(3 e^{2x} - 1)
    const Potential p = Potential::zero();
    RiccatiSolution plus = solve_alpha_plus(p, Cplx(1), Cplx(1), 4, 1e-14L);
    for (Real x : {0.0L, 0.5L, 1.3L, 3.7L}) {
        const Cplx exact = 2.0L / (3.0L * std::exp(2 * x) - 1.0L);
        CHECK(std::abs(plus.alpha_at(x) - exact) < 1e-12L);
    }
    CHECK(std::abs(plus.i_minus_0) < 1e-15L);  // integrand carries V = 0
}

TEST_CASE("alpha_- vanishes identically for V = 0") {
    const Potential p = Potential::zero();
    RiccatiSolution minus = solve_alpha_minus(p, Cplx(1.5L, 0.3L), 5, 1e-14L);
    CHECK(std::abs(minus.alpha_at(0)) < 1e-16L);
    CHECK(std::abs(minus.int_alpha_half_line) < 1e-16L);
    CHECK(std::abs(minus.i_plus_0) < 1e-16L);
    CHECK(std::abs(minus.c1_integral) < 1e-14L);
}

TEST_CASE("riccati trajectory reproduces the schroedinger solution") {
    // check alpha_-' = -alpha^2 + 2 alpha z + V along the trajectory
    const Potential p = Potential::gaussian_well();
    const Cplx z(1.2L, 0.4L);
    RiccatiSolution minus = solve_alpha_minus(p, z, 7, 1e-13L);
    for (Real x : {0.3L, 1.1L, 2.6L}) {
        const Cplx a = minus.alpha_at(x);
        const Real h = 1e-6L;
        const Cplx fd = (minus.alpha_at(x + h) - minus.alpha_at(x - h)) / (2 * h);
        const Cplx rhs = -a * a + 2.0L * a * z + p.eval(Cplx(x));
        CHECK(std::abs(fd - rhs) < 1e-6L);
    }
}

TEST_CASE("scaled and direct minus-side solves agree") {
    const Potential p = Potential::gaussian_well();
    const Cplx z(2.0L, 1.5L);
    const Real xmax = 8;
    RiccatiSolution a = solve_alpha_minus(p, z, xmax, 1e-13L);
    ScaledMinusSolution b = solve_alpha_minus_scaled(p, z, xmax, 1e-13L);
    CHECK(std::abs(a.alpha_at(0) - b.alpha0) < 1e-12L);
    CHECK(std::abs(a.int_alpha_half_line - b.int_alpha_half_line) < 1e-12L);
    // the direct form carries an absolute noise floor in the tail that the
    // e^{2 Re z t} weight amplifies; the scaled form is the accurate one
    CHECK(std::abs(a.c1_integral - b.c1_integral) < 3e-6L);
}

TEST_CASE("quad-precision deep branch matches the long double branch") {
    // (Im z)^2 > 22 routes through the quad-precision solve; the unamplified
    // outputs must agree tightly, c1 to the long double noise floor
    const Potential p = Potential::gaussian_well();
    const Cplx z(2.0L, 4.8L);
    const Real xmax = 7;
    RiccatiSolution a = solve_alpha_minus(p, z, xmax, 1e-13L);
    ScaledMinusSolution b = solve_alpha_minus_scaled(p, z, xmax, 1e-13L);
    CHECK(std::abs(a.alpha_at(0) - b.alpha0) < 1e-12L);
    CHECK(std::abs(a.int_alpha_half_line - b.int_alpha_half_line) < 1e-12L);
    CHECK(std::abs(a.c1_integral - b.c1_integral) < 1e-4L);
}

TEST_CASE("choose_xmax honours the decay rule") {
    const Potential g = Potential::gaussian_well();
    Tolerances tol;
    const Real x1 = choose_xmax(g, Cplx(1), tol);
    const Real x2 = choose_xmax(g, Cplx(3), tol);
    CHECK(x2 > x1);  // more growth to suppress
    CHECK(std::abs(g.eval(Cplx(x1)) * std::exp(2 * x1)) <= tol.decay);
    // rittby decays like e^{-0.1 x^2}: Re z = 12 needs x > 240, beyond the cap
    CHECK_THROWS_AS(choose_xmax(Potential::rittby(1.6L), Cplx(12), tol), DecayError);
}

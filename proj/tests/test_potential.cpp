#include <doctest.h>

#include <cmath>

#include "reson/potential.hpp"

using namespace reson;

TEST_CASE("built-in potentials evaluate correctly") {
    CHECK(std::abs(Potential::gaussian_well().eval(Cplx(1)) + std::exp((Real)-1)) < 1e-18L);
    CHECK(std::abs(Potential::modified_gaussian(10).eval(Cplx(2)) -
                   4.0L * std::exp(-0.04L)) < 1e-17L);
    const Potential r = Potential::rittby(1.6L);
    CHECK(r.v_infinity() == Cplx(1.6L));
    CHECK(std::abs(r.eval(Cplx(0)) - Cplx(0)) < 1e-18L);  // (0 - J) + J
    CHECK(std::abs(r.eval_decaying(3) - (9.0L - 1.6L) * std::exp(-0.9L)) < 1e-17L);
    CHECK(Potential::square_well(4).eval(Cplx(0.5L)) == Cplx(-4));
    CHECK(Potential::square_well(4).eval(Cplx(1.5L)) == Cplx(0));
}

TEST_CASE("perturbed gaussian converges to the gaussian as eps -> 0") {
    const Potential p = Potential::perturbed_gaussian(1e-8L);
    for (Real x : {0.5L, 1.0L, 2.0L})
        CHECK(std::abs(p.eval(Cplx(x)) + std::exp(-x * x)) < 1e-7L);
}

TEST_CASE("L1 norms of the gaussian") {
    const Potential g = Potential::gaussian_well();
    CHECK(g.l1_norm(1e-12L, Domain::HalfLine) ==
          doctest::Approx(0.886226925452758).epsilon(1e-10));  // sqrt(pi)/2
    CHECK(g.l1_norm(1e-12L, Domain::WholeLine) ==
          doctest::Approx(1.772453850905516).epsilon(1e-10));
}

TEST_CASE("square well: exact L1 norm, breakpoints, no complex evaluation") {
    const Potential w = Potential::square_well(4, 1);
    CHECK(w.l1_norm(1e-12L) == 4);
    REQUIRE(w.breakpoints().size() == 1);
    CHECK(w.breakpoints()[0] == 1);
    CHECK_FALSE(w.analytic());
    CHECK_THROWS_AS(w.eval(Cplx(0.5L, 0.1L)), DomainError);
}

TEST_CASE("analyticity sectors") {
    const Potential g = Potential::gaussian_well();  // alpha = pi/2
    CHECK_NOTHROW(g.eval(std::polar((Real)1, kPi / 5)));
    CHECK_THROWS_AS(g.eval(std::polar((Real)1, kPi / 3)), DomainError);
    const Potential p = Potential::perturbed_gaussian(1e-3L);  // alpha = pi
    CHECK_NOTHROW(p.eval(std::polar((Real)1, kPi / 3)));
}

TEST_CASE("decay sums") {
    const Potential d = Potential::decay_sum({{Cplx(-1), 1, 1}, {Cplx(0.5L), 2, 2}});
    CHECK(d.domain_hint() == Domain::WholeLine);
    const Real x = 1.3L;
    CHECK(std::abs(d.eval(Cplx(x)) -
                   (-std::exp(-x) + 0.5L * std::exp(-2 * x * x))) < 1e-18L);
    // |x| kink from the r = 1 term
    REQUIRE(d.breakpoints().size() == 1);
    CHECK(d.breakpoints()[0] == 0);
    CHECK_FALSE(d.has_tail_log_derivative());  // two terms
}

TEST_CASE("tail log-derivative") {
    CHECK(Potential::gaussian_well().tail_log_derivative(2) == Cplx(-4));
    const Potential d = Potential::decay_sum({{Cplx(-2), 3, 2}});
    REQUIRE(d.has_tail_log_derivative());
    CHECK(d.tail_log_derivative(2) == Cplx(-12));
    const Real eps = 1e-3L, x = 1.5L;
    const Potential p = Potential::perturbed_gaussian(eps);
    // matches a finite difference of log(-V)
    const Real h = 1e-6L;
    const Real fd = (std::log(-p.eval(Cplx(x + h)).real()) -
                     std::log(-p.eval(Cplx(x - h)).real())) / (2 * h);
    CHECK(std::abs(p.tail_log_derivative(x) - fd) < 1e-8L);
    CHECK_THROWS_AS(Potential::modified_gaussian(2).tail_log_derivative(1), SolverError);
}

TEST_CASE("parsed potentials") {
    const Potential p = Potential::parse("-exp(-x^2)");
    CHECK(std::abs(p.eval(Cplx(1.2L)) + std::exp(-1.44L)) < 1e-17L);
    CHECK_THROWS_AS(Potential::parse(""), ParseError);
}

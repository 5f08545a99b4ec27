#include <doctest.h>

#include "reson/expression.hpp"

using namespace reson;

TEST_CASE("literals, constants and the variable") {
    CHECK(Expression::parse("1.5").eval(0).real() == doctest::Approx(1.5));
    CHECK(Expression::parse("pi").eval(0).real() == doctest::Approx((double)kPi));
    CHECK(Expression::parse("e").eval(0).real() == doctest::Approx(2.718281828459045));
    CHECK(Expression::parse("x").eval(Cplx(2, 3)) == Cplx(2, 3));
}

TEST_CASE("precedence and associativity") {
    CHECK(Expression::parse("1+2*3").eval(0).real() == doctest::Approx(7));
    CHECK(Expression::parse("2*x^2").eval(3).real() == doctest::Approx(18));
    // '^' is right-associative: x^3^2 = x^9
    CHECK(Expression::parse("x^3^2").eval(2).real() == doctest::Approx(512));
    CHECK(Expression::parse("-x^2").eval(3).real() == doctest::Approx(-9));
    CHECK(Expression::parse("(1+2)*3").eval(0).real() == doctest::Approx(9));
    CHECK(Expression::parse("6/4/2").eval(0).real() == doctest::Approx(0.75));
}

TEST_CASE("functions evaluate at complex arguments") {
    const Cplx w(0.3L, 0.4L);
    const Expression g = Expression::parse("-exp(-x^2)");
    CHECK(std::abs(g.eval(w) - (-std::exp(-w * w))) < 1e-17L);
    const Expression s = Expression::parse("sin(x)*cos(x)");
    CHECK(std::abs(s.eval(w) - std::sin(w) * std::cos(w)) < 1e-17L);
    const Expression h = Expression::parse("sinh(x)+cosh(x)");
    CHECK(std::abs(h.eval(w) - std::exp(w)) < 1e-17L);
}

TEST_CASE("sqrt is tracked") {
    CHECK(Expression::parse("sqrt(1+x^2)").has_sqrt());
    CHECK_FALSE(Expression::parse("exp(-x^2)").has_sqrt());
}

TEST_CASE("parse errors carry an offset") {
    CHECK_THROWS_AS(Expression::parse(""), ParseError);
    CHECK_THROWS_AS(Expression::parse("2*"), ParseError);
    CHECK_THROWS_AS(Expression::parse("exp(-x"), ParseError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), ParseError);
    try {
        Expression::parse("1+&2");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 2);
    }
}

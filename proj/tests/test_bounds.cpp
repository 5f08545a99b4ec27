#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "reson/bounds.hpp"

using namespace reson;

TEST_CASE("threshold of the gaussian well is a(pi/2) = 1") {
    // a(pi/2) = sup_v Im(i V(e^{i pi/4} v)) = sup_u cos(u) = 1
    ThresholdResult th = bounds::threshold(Potential::gaussian_well());
    REQUIRE(th.finite);
    // the measure mass gives the same constant; either provenance is valid
    CHECK((th.provenance == "a(pi/2)" || th.provenance == "measure-mass"));
    CHECK(std::abs(th.value - 1.0L) < 1e-6L);
}

TEST_CASE("envelope data of the modified gaussian") {
    const Real b = 1;
    Envelope env = bounds::envelope_S(Potential::modified_gaussian(b), 64, 1e-8L);
    // M = max x^2 e^{-x^2} = 1/e
    CHECK(std::abs(env.big_m - std::exp((Real)-1)) < 1e-7L);
    // a1 = max (V + x V'/2) = max (2x^2 - x^4) e^{-x^2}, maximised at
    // x^2 = 2 - sqrt(2)
    const Real x2 = 2 - std::sqrt((Real)2);
    const Real a1 = (2 * x2 - x2 * x2) * std::exp(-x2);
    CHECK(std::abs(env.a1 - a1) < 1e-6L);
    REQUIRE(!env.samples.empty());
    for (const auto& s : env.samples) CHECK(std::isfinite((double)s.a_theta));
}

TEST_CASE("a(theta) is convex on the sampled grid") {
    Envelope env = bounds::envelope_S(Potential::modified_gaussian(2), 48, 1e-7L);
    std::vector<EnvelopeSample> s = env.samples;
    std::sort(s.begin(), s.end(),
              [](const EnvelopeSample& u, const EnvelopeSample& v) { return u.theta < v.theta; });
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const Real lhs = 2 * s[i].a_theta;
        const Real rhs = s[i - 1].a_theta + s[i + 1].a_theta;
        CHECK(lhs <= rhs + 1e-6L * (1 + std::abs(rhs)));
    }
}

TEST_CASE("known gaussian resonances satisfy the sector enclosure") {
    const Potential g = Potential::gaussian_well();
    // table values lambda = -z^2 for rows 2 and 5
    CHECK(bounds::inside_S(g, Cplx(-1.23692584L, -3.48426766L), 1e-8L));
    CHECK(bounds::inside_S(g, Cplx(-1.59459136L, -13.14969428L), 1e-8L));
    // far outside the enclosure on the positive real side
    CHECK_FALSE(bounds::inside_S(g, Cplx(50.0L, -2.0L), 1e-8L));
}

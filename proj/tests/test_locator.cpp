#include <doctest.h>

#include <cmath>

#include "reson/locator.hpp"

using namespace reson;

namespace {

ResidualFn poly(std::vector<Cplx> roots) {
    return [roots](Cplx z) {
        Cplx v = 1;
        for (Cplx r : roots) v *= z - r;
        return v;
    };
}

}  // namespace

TEST_CASE("winding number counts enclosed zeros with multiplicity") {
    ResidualFn f = poly({Cplx(1, 1), Cplx(2, 0.5L), Cplx(2, 0.5L), Cplx(9, 9)});
    Rect r{Cplx(0.5L, 0.2L), Cplx(3, 2)};
    CHECK(winding_number(f, r) == 3);
    CHECK(winding_number(f, Rect{Cplx(4, 4), Cplx(6, 6)}) == 0);
}

TEST_CASE("winding is additive across a subdivision") {
    ResidualFn f = poly({Cplx(1, 1), Cplx(2.5L, 0.8L)});
    Rect whole{Cplx(0.5L, 0.2L), Cplx(3, 2)};
    Rect left{whole.lo, Cplx(1.75L, 2)};
    Rect right{Cplx(1.75L, 0.2L), whole.hi};
    CHECK(winding_number(f, whole) ==
          winding_number(f, left) + winding_number(f, right));
}

TEST_CASE("a zero on the contour is reported, not miscounted") {
    ResidualFn f = poly({Cplx(1, 1)});
    Rect r{Cplx(1, 0.5L), Cplx(2, 2)};  // root on the left edge
    CHECK_THROWS_AS(winding_number(f, r), ZeroOnContourError);
}

TEST_CASE("refine converges on an analytic model") {
    ResidualFn f = [](Cplx z) { return std::sin(z) - 0.5L; };
    Resonance r = refine(f, Cplx(0.6L, 0.1L));
    CHECK(std::abs(r.z - kPi / 6) < 1e-12L);
    CHECK(r.residual_abs < 1e-9L);
    CHECK(std::abs(r.lambda + r.z * r.z) < 1e-15L);
}

TEST_CASE("refine rejects iterates escaping Re z > 0") {
    ResidualFn f = [](Cplx z) { return z + 5.0L; };  // only zero at -5
    CHECK_THROWS_AS(refine(f, Cplx(0.5L, 0)), ConvergenceError);
}

TEST_CASE("scan isolates simple zeros and flags clusters") {
    ResidualFn f = poly({Cplx(1, 1), Cplx(2.2L, 1.4L)});
    ScanReport rep = scan(f, Rect{Cplx(0.4L, 0.3L), Cplx(3, 2)}, 6);
    CHECK(rep.winding == 2);
    REQUIRE(rep.candidates.size() == 2);
    for (Cplx c : rep.candidates) {
        Resonance r = refine(f, c);
        CHECK((std::abs(r.z - Cplx(1, 1)) < 1e-10L ||
               std::abs(r.z - Cplx(2.2L, 1.4L)) < 1e-10L));
    }
}

TEST_CASE("deflate_pair splits a tight pair") {
    const Cplx za(1.5L, 1.0L), zb(1.52L, 1.015L);
    ResidualFn f = poly({za, zb});
    auto [r1, r2] = deflate_pair(f, Cplx(1.51L, 1.01L), 0.05L);
    const Real d11 = std::abs(r1.z - za), d12 = std::abs(r1.z - zb);
    const Real d21 = std::abs(r2.z - za), d22 = std::abs(r2.z - zb);
    CHECK(std::min(d11, d12) < 1e-9L);
    CHECK(std::min(d21, d22) < 1e-9L);
    CHECK(std::abs(r1.z - r2.z) > 0.01L);  // found both, not the same one twice
}

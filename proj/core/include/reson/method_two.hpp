#pragma once

#include <functional>

#include "reson/method_one.hpp"

namespace reson {

struct Method2Options {
    Real xmax = 0;
    Real ode_tol = 0;
};

// u_- = e^{-zt x} gamma(x) built from alpha_- alone; f = u_-(c1 + 2zt
// int dt/u_-^2) with c1 from the absolutely convergent limit integral.
struct Method2State {
    Cplx z;
    Cplx zt;
    Cplx u_minus_0;
    Cplx c1;
    Cplx f0;
    Cplx f0_prime;
};

namespace method_two {

Method2State boundary_values(const Problem& prob, Cplx z, const Method2Options& opts = {});

Cplx residual(const Problem& prob, Cplx z, const Method2Options& opts = {});

std::function<Cplx(Cplx)> make_residual(const Problem& prob, Method2Options opts = {});

}  // namespace method_two

}  // namespace reson

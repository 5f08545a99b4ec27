#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace reson {

// Core arithmetic runs in extended precision.  The slowly convergent
// oscillatory integrals (I_- and the c1 integral) peak at exp((Im z)^2)
// above their final value, which eats ~10 digits in plain double for the
// deeper Gaussian resonances.
using Real = long double;
using Cplx = std::complex<Real>;

inline constexpr Real kPi = 3.14159265358979323846264338327950288L;

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : SolverError {
    using SolverError::SolverError;
};

struct ConvergenceError : SolverError {
    using SolverError::SolverError;
};

// Riccati trajectory left the guard band: z is too close to a zero of u_-.
struct PoleError : SolverError {
    using SolverError::SolverError;
};

// Condition int |V| e^{2 Re z x} dx < infty fails at the truncation point.
struct DecayError : SolverError {
    using SolverError::SolverError;
};

struct ParseError : SolverError {
    ParseError(const std::string& msg, std::size_t offset)
        : SolverError(msg + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

enum class Domain { HalfLine, WholeLine };

// a f(0) + b f'(0) = 0, |a|+|b| > 0.
struct BoundaryCondition {
    Real a = 1;
    Real b = 0;

    static BoundaryCondition dirichlet() { return {1, 0}; }
    static BoundaryCondition neumann() { return {0, 1}; }
    bool valid() const { return std::abs(a) + std::abs(b) > 0; }
};

struct Tolerances {
    Real ode = 1e-12L;        // local error per integration step
    Real root = 1e-10L;       // |dz| <= root * (1 + |z|)
    Real residual = 1e-9L;    // |residual| at an accepted root
    Real decay = 1e-12L;      // truncation rule for Xmax
    Real xmax_cap = 200.0L;
};

}  // namespace reson

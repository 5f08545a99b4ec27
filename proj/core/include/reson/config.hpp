#pragma once

#include <map>
#include <string>
#include <vector>

#include "reson/locator.hpp"
#include "reson/potential.hpp"

namespace reson {

// Flat key = value configuration with [section] headers; see README for the
// full key list.  Strict: unknown keys are rejected.
struct RunConfig {
    std::string task = "solve";
    std::string method = "one";  // one | two | both

    std::string potential = "gaussian";
    std::map<std::string, Real> pot_params;  // b, J, depth, width, eps
    std::string expression;
    Domain domain = Domain::HalfLine;
    BoundaryCondition bc = BoundaryCondition::dirichlet();
    Tolerances tol;

    std::vector<Cplx> guesses;
    Rect rect{Cplx(0.2L, 0.35L), Cplx(2.5L, 2.0L)};
    bool have_rect = false;
    int depth = 6;
    int rows = 17;
    int theta_samples = 64;
    std::vector<Real> eps_list;
    Cplx lambda{0, 0};
    bool have_lambda = false;

    std::string format = "csv";  // csv | json
    std::string out_path;
    bool verbose = false;
};

RunConfig parse_config(const std::string& text);

Potential make_potential(const RunConfig& cfg);
Problem make_problem(const RunConfig& cfg);

}  // namespace reson

#include <doctest.h>

#include <cmath>

#include "reson/report.hpp"
#include "reson/runner.hpp"

using namespace reson;

TEST_CASE("config parsing: sections, keys, values") {
    RunConfig cfg = parse_config(
        "[problem]\n"
        "potential = rittby\n"
        "J = 2.5\n"
        "bc = neumann\n"
        "domain = halfline\n"
        "[task]\n"
        "name = scan\n"
        "rect = 0.5, 0.1, 2.0, 1.5\n"
        "depth = 4\n"
        "[tolerances]\n"
        "ode = 1e-11\n"
        "[output]\n"
        "format = json  # trailing comment\n");
    CHECK(cfg.potential == "rittby");
    CHECK(cfg.pot_params.at("J") == 2.5L);
    CHECK(cfg.bc.a == 0);
    CHECK(cfg.bc.b == 1);
    CHECK(cfg.task == "scan");
    CHECK(cfg.rect.lo == Cplx(0.5L, 0.1L));
    CHECK(cfg.rect.hi == Cplx(2.0L, 1.5L));
    CHECK(cfg.depth == 4);
    CHECK(cfg.tol.ode == 1e-11L);
    CHECK(cfg.format == "json");
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
    CHECK_THROWS_AS(parse_config("[problem]\nfrequency = 3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("[orbit]\n"), ParseError);
    CHECK_THROWS_AS(parse_config("[problem]\nbc = 0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_config("[task]\nrect = 1,2,3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("potential\n"), ParseError);
}

TEST_CASE("solve task emits the documented columns and succeeds") {
    RunConfig cfg = parse_config(
        "[problem]\npotential = gaussian\nbc = dirichlet\n"
        "[task]\nname = solve\nguess = 0.73\n");
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.output.rfind("n,method,re_lambda,im_lambda,re_z,im_z,residual_abs,"
                           "iterations,status\n", 0) == 0);
    CHECK(res.output.find("ok") != std::string::npos);
    CHECK(res.output.back() == '\n');
}

TEST_CASE("output is byte-stable across repeated runs") {
    RunConfig cfg = parse_config(
        "[problem]\npotential = gaussian\nbc = neumann\n"
        "[task]\nname = solve\nguess = 1.57, 1.11\nmethod = both\n");
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
}

TEST_CASE("json mirrors the csv fields") {
    RunConfig cfg = parse_config(
        "[problem]\npotential = gaussian\n"
        "[task]\nname = solve\nguess = 0.73\n"
        "[output]\nformat = json\n");
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"re_lambda\"") != std::string::npos);
    CHECK(res.output.find("\"status\"") != std::string::npos);
}

TEST_CASE("invalid configuration exits 3, non-convergence exits 2") {
    RunConfig bad = parse_config("[task]\nname = solve\n");  // no guess
    CHECK(run(bad).exit_code == 3);
    RunConfig stuck = parse_config(
        "[problem]\npotential = zero\n"
        "[task]\nname = solve\nguess = 1.0, 0.5\n");  // no resonance to find
    RunResult res = run(stuck);
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("\n") != std::string::npos);  // partial row still emitted
}

TEST_CASE("number formatting: 12 significant digits, stable") {
    CHECK(format_real(0.5L) == "5.00000000000e-01");
    CHECK(format_real(-1.23692584375L) == "-1.23692584375e+00");
    CHECK(format_real(1e-4L) == "1.00000000000e-04");
    CHECK(format_real(0) == "0.00000000000e+00");
    CHECK(format_real(std::nan("")) == "nan");
}

#include "reson/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace reson {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Real parse_real(const std::string& s, std::size_t line) {
    char* end = nullptr;
    Real v = std::strtold(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError("config: bad number '" + s + "'", line);
    return v;
}

// "re" or "re,im"
Cplx parse_complex(const std::string& s, std::size_t line) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return Cplx(parse_real(trim(s), line), 0);
    return Cplx(parse_real(trim(s.substr(0, comma)), line),
                parse_real(trim(s.substr(comma + 1)), line));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

bool parse_bool(const std::string& s, std::size_t line) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ParseError("config: bad boolean '" + s + "'", line);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section = "problem";
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("config: unterminated section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "problem" && section != "task" && section != "tolerances" &&
                section != "output")
                throw ParseError("config: unknown section '" + section + "'", lineno);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config: expected key = value", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ParseError("config: empty value for '" + key + "'", lineno);

        if (section == "problem") {
            if (key == "potential") cfg.potential = val;
            else if (key == "expression") cfg.expression = val;
            else if (key == "domain") {
                if (val == "halfline") cfg.domain = Domain::HalfLine;
                else if (val == "wholeline") cfg.domain = Domain::WholeLine;
                else throw ParseError("config: domain must be halfline or wholeline", lineno);
            } else if (key == "bc") {
                if (val == "dirichlet") cfg.bc = BoundaryCondition::dirichlet();
                else if (val == "neumann") cfg.bc = BoundaryCondition::neumann();
                else {
                    Cplx ab = parse_complex(val, lineno);
                    cfg.bc = BoundaryCondition{ab.real(), ab.imag()};
                }
                if (!cfg.bc.valid())
                    throw ParseError("config: boundary condition needs |a|+|b| > 0", lineno);
            } else if (key == "b" || key == "J" || key == "depth" || key == "width" ||
                       key == "eps") {
                cfg.pot_params[key] = parse_real(val, lineno);
            } else {
                throw ParseError("config: unknown problem key '" + key + "'", lineno);
            }
        } else if (section == "task") {
            if (key == "name") cfg.task = val;
            else if (key == "method") cfg.method = val;
            else if (key == "guess") {
                for (const auto& g : split(val, ';'))
                    cfg.guesses.push_back(parse_complex(g, lineno));
            } else if (key == "rect") {
                auto parts = split(val, ',');
                if (parts.size() != 4)
                    throw ParseError("config: rect needs re_lo,im_lo,re_hi,im_hi", lineno);
                cfg.rect.lo = Cplx(parse_real(parts[0], lineno), parse_real(parts[1], lineno));
                cfg.rect.hi = Cplx(parse_real(parts[2], lineno), parse_real(parts[3], lineno));
                cfg.have_rect = true;
            } else if (key == "depth") cfg.depth = (int)parse_real(val, lineno);
            else if (key == "rows") cfg.rows = (int)parse_real(val, lineno);
            else if (key == "theta_samples") cfg.theta_samples = (int)parse_real(val, lineno);
            else if (key == "eps_list") {
                for (const auto& e : split(val, ','))
                    cfg.eps_list.push_back(parse_real(e, lineno));
            } else if (key == "lambda") {
                cfg.lambda = parse_complex(val, lineno);
                cfg.have_lambda = true;
            } else {
                throw ParseError("config: unknown task key '" + key + "'", lineno);
            }
        } else if (section == "tolerances") {
            if (key == "ode") cfg.tol.ode = parse_real(val, lineno);
            else if (key == "root") cfg.tol.root = parse_real(val, lineno);
            else if (key == "residual") cfg.tol.residual = parse_real(val, lineno);
            else if (key == "decay") cfg.tol.decay = parse_real(val, lineno);
            else if (key == "xmax_cap") cfg.tol.xmax_cap = parse_real(val, lineno);
            else throw ParseError("config: unknown tolerance key '" + key + "'", lineno);
        } else {  // output
            if (key == "format") {
                if (val != "csv" && val != "json")
                    throw ParseError("config: format must be csv or json", lineno);
                cfg.format = val;
            } else if (key == "path") cfg.out_path = val;
            else if (key == "verbose") cfg.verbose = parse_bool(val, lineno);
            else throw ParseError("config: unknown output key '" + key + "'", lineno);
        }
    }

    static const char* tasks[] = {"solve", "scan", "table", "envelope",
                                  "bounds", "perturb", "phi-scan"};
    if (std::find_if(std::begin(tasks), std::end(tasks),
                     [&](const char* t) { return cfg.task == t; }) == std::end(tasks))
        throw ParseError("config: unknown task '" + cfg.task + "'", 0);
    if (cfg.method != "one" && cfg.method != "two" && cfg.method != "both")
        throw ParseError("config: method must be one, two or both", 0);
    return cfg;
}

Potential make_potential(const RunConfig& cfg) {
    auto param = [&cfg](const char* key, Real fallback) {
        auto it = cfg.pot_params.find(key);
        return it == cfg.pot_params.end() ? fallback : it->second;
    };
    if (cfg.potential == "zero") return Potential::zero();
    if (cfg.potential == "gaussian") return Potential::gaussian_well();
    if (cfg.potential == "modified_gaussian")
        return Potential::modified_gaussian(param("b", 10));
    if (cfg.potential == "rittby") return Potential::rittby(param("J", 1.6L));
    if (cfg.potential == "perturbed_gaussian") {
        auto it = cfg.pot_params.find("eps");
        if (it == cfg.pot_params.end())
            throw ParseError("config: perturbed_gaussian needs eps", 0);
        return Potential::perturbed_gaussian(it->second);
    }
    if (cfg.potential == "square_well")
        return Potential::square_well(param("depth", 1), param("width", 1));
    if (cfg.potential == "expr") {
        if (cfg.expression.empty())
            throw ParseError("config: potential expr needs an expression", 0);
        return Potential::parse(cfg.expression);
    }
    throw ParseError("config: unknown potential '" + cfg.potential + "'", 0);
}

Problem make_problem(const RunConfig& cfg) {
    Problem prob;
    prob.potential = make_potential(cfg);
    prob.domain = cfg.domain;
    prob.bc = cfg.bc;
    prob.tol = cfg.tol;
    return prob;
}

}  // namespace reson

// Command-line front end: assembles a flat config from the optional config
// file plus flag overrides, hands it to the runner, and writes the table.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reson/runner.hpp"

namespace {

struct CliState {
    std::string config_path, out_path, format, tol, method;
    std::string potential, expression, domain, bc;
    std::vector<std::string> params, guesses, eps;
    std::string rect, lambda;
    int rows = -1, depth = -1, theta_samples = -1;
    bool verbose = false;
};

void add_common(CLI::App* cmd, CliState& s) {
    cmd->add_option("--config", s.config_path, "config file (key = value sections)");
    cmd->add_option("--out", s.out_path, "output path (default stdout)");
    cmd->add_option("--format", s.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", s.tol, "root/residual tolerance override");
    cmd->add_flag("--verbose", s.verbose, "diagnostics on stderr");
    cmd->add_option("--potential", s.potential,
                    "zero|gaussian|modified_gaussian|rittby|perturbed_gaussian|"
                    "square_well|expr");
    cmd->add_option("--expression", s.expression, "potential formula for --potential expr");
    cmd->add_option("--param", s.params, "potential parameter key=value (repeatable)");
    cmd->add_option("--domain", s.domain, "halfline or wholeline");
    cmd->add_option("--bc", s.bc, "dirichlet, neumann, or a,b");
    cmd->add_option("--method", s.method, "one, two or both");
    cmd->add_option("--guess", s.guesses, "initial z as re[,im] (repeatable)");
    cmd->add_option("--rect", s.rect, "scan rectangle re_lo,im_lo,re_hi,im_hi");
    cmd->add_option("--rows", s.rows, "table rows");
    cmd->add_option("--depth", s.depth, "scan subdivision depth");
    cmd->add_option("--theta-samples", s.theta_samples, "envelope samples");
    cmd->add_option("--eps", s.eps, "perturbation size (repeatable)");
    cmd->add_option("--lambda", s.lambda, "point re[,im] for bounds verdicts");
}

std::string overrides_text(const std::string& task, const CliState& s) {
    std::ostringstream os;
    os << "[problem]\n";
    if (!s.potential.empty()) os << "potential = " << s.potential << "\n";
    if (!s.expression.empty()) os << "expression = " << s.expression << "\n";
    if (!s.domain.empty()) os << "domain = " << s.domain << "\n";
    if (!s.bc.empty()) os << "bc = " << s.bc << "\n";
    for (const auto& p : s.params) {
        auto eq = p.find('=');
        if (eq == std::string::npos)
            throw reson::ParseError("--param expects key=value", 0);
        os << p.substr(0, eq) << " = " << p.substr(eq + 1) << "\n";
    }
    os << "[task]\nname = " << task << "\n";
    if (!s.method.empty()) os << "method = " << s.method << "\n";
    for (const auto& g : s.guesses) os << "guess = " << g << "\n";
    if (!s.rect.empty()) os << "rect = " << s.rect << "\n";
    if (s.rows >= 0) os << "rows = " << s.rows << "\n";
    if (s.depth >= 0) os << "depth = " << s.depth << "\n";
    if (s.theta_samples >= 0) os << "theta_samples = " << s.theta_samples << "\n";
    if (!s.eps.empty()) {
        os << "eps_list = ";
        for (std::size_t i = 0; i < s.eps.size(); ++i) os << (i ? "," : "") << s.eps[i];
        os << "\n";
    }
    if (!s.lambda.empty()) os << "lambda = " << s.lambda << "\n";
    if (!s.tol.empty())
        os << "[tolerances]\nroot = " << s.tol << "\nresidual = " << s.tol << "\n";
    os << "[output]\n";
    if (!s.format.empty()) os << "format = " << s.format << "\n";
    if (!s.out_path.empty()) os << "path = " << s.out_path << "\n";
    if (s.verbose) os << "verbose = true\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonances and complex eigenvalues of -f'' + V f = lambda f"};
    app.require_subcommand(1);

    CliState s;
    const char* tasks[] = {"solve", "scan", "table", "envelope", "bounds", "perturb",
                           "phi-scan"};
    const char* blurbs[] = {
        "refine resonances from initial guesses",
        "certified rectangle scan for resonances",
        "ladder of alternating Dirichlet/Neumann resonances",
        "boundary polyline of the enclosing convex set",
        "norm bounds, thresholds and region verdicts",
        "first-order resonance shifts under a potential perturbation",
        "whole-line eigenvalue scan via the connection coefficient"};
    for (int i = 0; i < 7; ++i) add_common(app.add_subcommand(tasks[i], blurbs[i]), s);

    CLI11_PARSE(app, argc, argv);
    const std::string task = app.get_subcommands().front()->get_name();

    try {
        std::string text;
        if (!s.config_path.empty()) {
            std::ifstream in(s.config_path);
            if (!in) {
                std::cerr << "cannot read config file " << s.config_path << "\n";
                return 3;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        text += "\n" + overrides_text(task, s);

        reson::RunConfig cfg = reson::parse_config(text);
        reson::RunResult res = reson::run(cfg);

        if (cfg.verbose && !res.log.empty()) std::cerr << res.log;
        if (!cfg.out_path.empty()) {
            std::ofstream out(cfg.out_path);
            if (!out) {
                std::cerr << "cannot write " << cfg.out_path << "\n";
                return 3;
            }
            out << res.output;
        } else {
            std::cout << res.output;
        }
        return res.exit_code;
    } catch (const reson::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}

#include "reson/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reson/bounds.hpp"
#include "reson/method_one.hpp"
#include "reson/method_two.hpp"
#include "reson/perturbation.hpp"
#include "reson/report.hpp"
#include "reson/whole_line.hpp"

namespace reson {

namespace {

Table resonance_table() {
    Table t;
    t.columns = {"n",    "method",       "re_lambda", "im_lambda", "re_z",
                 "im_z", "residual_abs", "iterations", "status"};
    return t;
}

void add_resonance_row(Table& t, long n, const std::string& method, const Resonance& r) {
    t.add_row({Cell::integer(n), Cell::text(method), Cell::num(r.lambda.real()),
               Cell::num(r.lambda.imag()), Cell::num(r.z.real()), Cell::num(r.z.imag()),
               Cell::num(r.residual_abs), Cell::integer(r.iterations), Cell::text("ok")});
}

void add_failure_row(Table& t, long n, const std::string& method, const std::string& what) {
    const Real nan = std::nan("");
    t.add_row({Cell::integer(n), Cell::text(method), Cell::num(nan), Cell::num(nan),
               Cell::num(nan), Cell::num(nan), Cell::num(nan), Cell::integer(0),
               Cell::text(what)});
}

ResidualFn residual_fn(const Problem& prob, const std::string& method) {
    if (method == "two") return method_two::make_residual(prob);
    return method_one::make_residual(prob);
}

RefineOptions refine_options(const RunConfig& cfg, const std::string& method) {
    RefineOptions o;
    o.tol = cfg.tol.root;
    o.tol_res = cfg.tol.residual;
    o.method = method;
    return o;
}

// first zero on the positive real z axis: sign change of the (real) residual
Resonance real_axis_zero(const ResidualFn& f, const RefineOptions& opts,
                         Real lo = 0.05L, Real hi = 2.5L, Real step = 0.05L) {
    bool have_prev = false;
    Real prev_x = 0, prev = 0;
    for (Real x = lo; x <= hi + 1e-12L; x += step) {
        Real cur;
        try {
            cur = f(Cplx(x, 0)).real();
        } catch (const SolverError&) {
            have_prev = false;  // pole or blow-up at this sample; restart bracket
            continue;
        }
        if (have_prev && (prev == 0 || (prev < 0) != (cur < 0)))
            return refine(f, Cplx((prev_x + x) / 2, 0), opts);
        prev = cur;
        prev_x = x;
        have_prev = true;
    }
    throw ConvergenceError("no sign change of the residual on the real axis");
}

std::vector<Resonance> scan_and_refine(const ResidualFn& f, const Rect& rect, int depth,
                                       const RefineOptions& opts, std::ostringstream& log,
                                       bool& partial) {
    ScanReport rep = scan(f, rect, depth, opts.tol);
    log << "scan: winding " << rep.winding << ", " << rep.candidates.size()
        << " candidates, " << rep.unresolved.size() << " unresolved\n";
    std::vector<Resonance> out;
    for (Cplx c : rep.candidates) {
        try {
            out.push_back(refine(f, c, opts));
        } catch (const SolverError& e) {
            log << "refine from " << (double)c.real() << "+" << (double)c.imag()
                << "i failed: " << e.what() << "\n";
            partial = true;
        }
    }
    for (const Rect& r : rep.unresolved) {
        try {
            auto [r1, r2] = deflate_pair(f, r.center(),
                                         std::abs(r.hi - r.lo) / 2, opts);
            out.push_back(r1);
            out.push_back(r2);
        } catch (const SolverError& e) {
            log << "deflation in unresolved cell failed: " << e.what() << "\n";
            partial = true;
        }
    }
    // deterministic order, duplicates (same zero reached twice) removed
    std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) {
        if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
        return a.z.real() < b.z.real();
    });
    std::vector<Resonance> unique;
    for (const auto& r : out) {
        bool dup = false;
        for (const auto& u : unique)
            if (std::abs(u.z - r.z) <= 1e-6L * (1 + std::abs(r.z))) dup = true;
        if (!dup) unique.push_back(r);
    }
    return unique;
}

int task_solve(const RunConfig& cfg, Table& t, std::ostringstream&) {
    if (cfg.guesses.empty())
        throw ParseError("solve: at least one guess is required", 0);
    int rc = 0;
    long n = 0;
    std::vector<std::string> methods =
        cfg.method == "both" ? std::vector<std::string>{"one", "two"}
                             : std::vector<std::string>{cfg.method};
    for (Cplx g : cfg.guesses) {
        for (const auto& m : methods) {
            ++n;
            Problem prob = make_problem(cfg);
            try {
                Resonance r = refine(residual_fn(prob, m), g, refine_options(cfg, m));
                add_resonance_row(t, n, m, r);
            } catch (const SolverError& e) {
                add_failure_row(t, n, m, e.what());
                rc = 2;
            }
        }
    }
    return rc;
}

int task_scan(const RunConfig& cfg, Table& t, std::ostringstream& log) {
    Problem prob = make_problem(cfg);
    if (!(cfg.rect.lo.real() > 0))
        throw ParseError("scan: rectangle must lie in Re z > 0", 0);
    bool partial = false;
    auto rs = scan_and_refine(residual_fn(prob, cfg.method), cfg.rect, cfg.depth,
                              refine_options(cfg, cfg.method), log, partial);
    long n = 0;
    for (const auto& r : rs) add_resonance_row(t, ++n, cfg.method, r);
    return partial ? 2 : 0;
}

// Ladder of alternating Dirichlet/Neumann resonances: row 1 from a real-axis
// search, row 2 from a rectangle scan, later rows by linear extrapolation of
// lambda_n.
int task_table(const RunConfig& cfg, Table& t, std::ostringstream& log) {
    int rc = 0;
    std::vector<Cplx> lambdas;
    for (int n = 1; n <= cfg.rows; ++n) {
        Problem prob = make_problem(cfg);
        prob.bc = n % 2 ? BoundaryCondition::dirichlet() : BoundaryCondition::neumann();
        const std::string label = cfg.method + (n % 2 ? ":D" : ":N");
        ResidualFn f = residual_fn(prob, cfg.method);
        RefineOptions opts = refine_options(cfg, cfg.method);
        try {
            Resonance r;
            if (n == 1) {
                r = real_axis_zero(f, opts);
            } else if (n == 2) {
                bool partial = false;
                auto rs = scan_and_refine(f, cfg.rect, cfg.depth, opts, log, partial);
                if (rs.empty()) throw ConvergenceError("table: no resonance in the seed rectangle");
                r = rs.front();  // smallest Im z: nearest the real axis
            } else {
                Cplx guess = std::sqrt(-(2.0L * lambdas[n - 2] - lambdas[n - 3]));
                if (guess.real() < 0) guess = -guess;
                r = refine(f, guess, opts);
            }
            lambdas.push_back(r.lambda);
            add_resonance_row(t, n, label, r);
        } catch (const SolverError& e) {
            add_failure_row(t, n, label, e.what());
            rc = 2;
            if (n <= 2 || lambdas.size() < (std::size_t)n) break;  // ladder lost its seeds
        }
    }
    return rc;
}

int task_envelope(const RunConfig& cfg, Table& t, std::ostringstream& log) {
    t.columns = {"theta", "a_theta", "x", "y"};
    Potential p = make_potential(cfg);
    Envelope env = bounds::envelope_S(p, cfg.theta_samples, 1e-8L);
    for (const auto& s : env.samples)
        t.add_row({Cell::num(s.theta), Cell::num(s.a_theta), Cell::num(s.x), Cell::num(s.y)});
    log << "a1 " << (double)env.a1 << ", a2 " << (double)env.a2 << ", max V "
        << (double)env.big_m << ", tip parabola "
        << (env.tip_parabola_valid ? "valid" : "degenerate") << "\n";
    return 0;
}

int task_bounds(const RunConfig& cfg, Table& t, std::ostringstream& log) {
    t.columns = {"name", "value", "verdict"};
    Potential p = make_potential(cfg);

    auto value_row = [&t](const std::string& name, Real v) {
        t.add_row({Cell::text(name), Cell::num(v), Cell::text("")});
    };
    auto verdict_row = [&t](const std::string& name, bool v) {
        t.add_row({Cell::text(name), Cell::text(""), Cell::boolean(v)});
    };

    NormBoundVerdict nb = bounds::check_norm_bounds(p, cfg.lambda, cfg.tol.root);
    value_row("l1_norm", nb.l1);
    value_row("bound_thm4", nb.bound4);
    value_row("bound_thm5", nb.bound5);

    ThresholdResult th = bounds::threshold(p);
    if (th.finite)
        t.add_row({Cell::text("threshold"), Cell::num(th.value), Cell::text(th.provenance)});
    else
        t.add_row({Cell::text("threshold"), Cell::text(""), Cell::text("none")});

    try {
        Envelope env = bounds::envelope_S(p, cfg.theta_samples, 1e-8L);
        value_row("a1", env.a1);
        value_row("a2", env.a2);
        value_row("max_v", env.big_m);
    } catch (const SolverError& e) {
        log << "envelope unavailable: " << e.what() << "\n";
    }

    if (cfg.have_lambda) {
        verdict_row("region_thm1", bounds::region_thm1(p, cfg.lambda, cfg.tol.root,
                                                       cfg.theta_samples));
        verdict_row("region_thm2", bounds::region_thm2(p, cfg.lambda, cfg.tol.root,
                                                       cfg.theta_samples));
        verdict_row("inside_s", bounds::inside_S(p, cfg.lambda, cfg.tol.root,
                                                 cfg.theta_samples));
        verdict_row("thm4", nb.thm4);
        verdict_row("thm5", nb.thm5);
    }
    return 0;
}

int task_perturb(const RunConfig& cfg, Table& t, std::ostringstream& log) {
    t.columns = {"eps",           "branch",        "re_dlambda", "im_dlambda",
                 "re_first_order", "im_first_order", "status"};
    if (cfg.potential != "gaussian")
        throw ParseError("perturb: only the gaussian family is built in", 0);
    if (cfg.eps_list.empty())
        throw ParseError("perturb: eps_list is required", 0);

    auto family = [](Real eps) {
        return eps == 0 ? Potential::gaussian_well() : Potential::perturbed_gaussian(eps);
    };
    // eps-derivative of the family at 0
    Potential v1 = Potential::parse("0 - (x^4 / 2) * exp(0 - x^2)");

    int rc = 0;
    for (int branch = 1; branch <= 2; ++branch) {
        Problem prob = make_problem(cfg);
        prob.bc = branch == 1 ? BoundaryCondition::dirichlet() : BoundaryCondition::neumann();
        ResidualFn f = residual_fn(prob, cfg.method);
        RefineOptions opts = refine_options(cfg, cfg.method);
        try {
            Resonance base;
            if (branch == 1) {
                base = real_axis_zero(f, opts);
            } else {
                bool partial = false;
                auto rs = scan_and_refine(f, cfg.rect, cfg.depth, opts, log, partial);
                if (rs.empty())
                    throw ConvergenceError("perturb: no resonance in the seed rectangle");
                base = rs.front();
            }
            Cplx nu = perturbation::nu_correction(prob, v1, base.z);
            log << "branch " << branch << ": z0 " << (double)base.z.real() << "+"
                << (double)base.z.imag() << "i, nu " << (double)nu.real() << "+"
                << (double)nu.imag() << "i\n";
            auto shifts = perturbation::shift_fd(prob, family, base.z, cfg.eps_list);
            for (const auto& [eps, dl] : shifts) {
                Cplx first = -2.0L * nu * base.z * eps;
                t.add_row({Cell::num(eps), Cell::integer(branch), Cell::num(dl.real()),
                           Cell::num(dl.imag()), Cell::num(first.real()),
                           Cell::num(first.imag()), Cell::text("ok")});
            }
        } catch (const SolverError& e) {
            const Real nan = std::nan("");
            for (Real eps : cfg.eps_list)
                t.add_row({Cell::num(eps), Cell::integer(branch), Cell::num(nan),
                           Cell::num(nan), Cell::num(nan), Cell::num(nan),
                           Cell::text(e.what())});
            rc = 2;
        }
    }
    return rc;
}

int task_phi_scan(const RunConfig& cfg, Table& t, std::ostringstream& log) {
    Problem prob = make_problem(cfg);
    if (prob.domain != Domain::WholeLine)
        throw ParseError("phi-scan: domain must be wholeline", 0);
    if (!(cfg.rect.lo.real() > 0))
        throw ParseError("phi-scan: rectangle must lie in Re z > 0", 0);
    bool partial = false;
    RefineOptions opts = refine_options(cfg, "phi");
    auto rs = scan_and_refine(whole_line::make_phi(prob), cfg.rect, cfg.depth, opts, log,
                              partial);
    long n = 0;
    for (const auto& r : rs) add_resonance_row(t, ++n, "phi", r);
    return partial ? 2 : 0;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
    RunResult res;
    Table t = resonance_table();
    std::ostringstream log;
    try {
        if (cfg.task == "solve") res.exit_code = task_solve(cfg, t, log);
        else if (cfg.task == "scan") res.exit_code = task_scan(cfg, t, log);
        else if (cfg.task == "table") res.exit_code = task_table(cfg, t, log);
        else if (cfg.task == "envelope") res.exit_code = task_envelope(cfg, t, log);
        else if (cfg.task == "bounds") res.exit_code = task_bounds(cfg, t, log);
        else if (cfg.task == "perturb") res.exit_code = task_perturb(cfg, t, log);
        else if (cfg.task == "phi-scan") res.exit_code = task_phi_scan(cfg, t, log);
        else throw ParseError("unknown task '" + cfg.task + "'", 0);
    } catch (const ParseError& e) {
        res.exit_code = 3;
        log << e.what() << "\n";
    } catch (const SolverError& e) {
        res.exit_code = 2;
        log << e.what() << "\n";
    }
    res.output = cfg.format == "json" ? to_json(t) : to_csv(t);
    res.log = log.str();
    return res;
}

}  // namespace reson

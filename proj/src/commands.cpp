#include "deltavar/commands.hpp"

#include "deltavar/config.hpp"
#include "deltavar/errors.hpp"
#include "deltavar/euler_lagrange.hpp"
#include "deltavar/random.hpp"
#include "deltavar/report.hpp"
#include "deltavar/solver.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <vector>

namespace deltavar {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case errc::no_convergence:
    case errc::degenerate_system:
        return exit_numerical_failure;
    default:
        return exit_config_error;
    }
}

std::uint64_t effective_seed(std::optional<std::uint64_t> flag, std::optional<std::uint64_t> config) {
    if (flag) return *flag;
    if (config) return *config;
    if (auto env = seed_from_env()) return *env;
    return 0;
}

SolveOptions solve_options(const ProblemConfig& cfg) {
    SolveOptions opts;
    opts.max_iterations = cfg.max_iterations;
    opts.gradient_tolerance = cfg.tol.gradient;
    return opts;
}

} // namespace

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv("DELTAVAR_SEED");
    if (!raw || !*raw) return std::nullopt;
    std::uint64_t v = 0;
    auto res = std::from_chars(raw, raw + std::string_view(raw).size(), v);
    if (res.ec != std::errc{} || *res.ptr != '\0')
        fail(errc::config_error, "DELTAVAR_SEED is not a 64-bit integer");
    return v;
}

int cmd_solve(const std::string& config_path, const std::optional<std::string>& csv_path,
              std::optional<std::uint64_t> seed_flag, CommandIO io) {
    try {
        ProblemConfig cfg = ProblemConfig::load(config_path);
        cfg.seed = effective_seed(seed_flag, cfg.seed);
        const VariationalProblem p = cfg.build_problem();
        if (p.degenerate())
            io.err << "warning: scale has exactly " << p.scale().size()
                   << " points; the admissible set is a single forced trajectory\n";

        const SolveResult sol = minimize_direct(p, solve_options(cfg));

        RunReport rep;
        rep.command = "solve";
        rep.config_echo = cfg.echo();
        rep.functional = sol.value;
        rep.gradient_sup = sol.gradient_sup;
        rep.converged = sol.converged;
        rep.iterations = sol.iterations;
        if (!p.degenerate()) {
            const ELReport el = fit_constants(p, sol.trajectory, cfg.tol.residual);
            rep.constants = el.constants;
            rep.residual_sup = el.residual_sup;
            rep.residual_l2 = el.residual_l2;
            rep.scale = el.scale;
            rep.stationary = el.stationary;
        }
        rep.trajectory_columns = trajectory_table(p, sol.trajectory);
        rep.print(io.out);

        if (csv_path) {
            std::ofstream csv(*csv_path);
            if (!csv) fail(errc::config_error, "cannot open CSV output '" + *csv_path + "'");
            write_trajectory_csv(csv, sol.trajectory);
        }
        if (!sol.converged) {
            io.err << "error: no convergence after " << sol.iterations << " iterations\n";
            return exit_numerical_failure;
        }
        return exit_ok;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_check(const std::string& config_path, const std::string& trajectory_csv, CommandIO io) {
    try {
        const ProblemConfig cfg = ProblemConfig::load(config_path);
        const VariationalProblem p = cfg.build_problem();
        const TimeScale& ts = p.scale();

        const auto rows = read_trajectory_csv(trajectory_csv);
        if (rows.size() != ts.size())
            fail(errc::csv_error, trajectory_csv + ": expected " + std::to_string(ts.size()) +
                                      " rows (one per scale point), got " +
                                      std::to_string(rows.size()));
        std::vector<double> values(ts.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const Point pt = ts.locate(rows[k].first); // throws when t is off the scale
            if (pt.index != k)
                fail(errc::csv_error, trajectory_csv + ": rows must be ascending, one per point; row " +
                                          std::to_string(k + 2) + " maps to index " +
                                          std::to_string(pt.index));
            values[k] = rows[k].second;
        }
        const Trajectory y = make_trajectory(p, std::move(values));

        RunReport rep;
        rep.command = "check";
        rep.config_echo = cfg.echo();
        rep.functional = functional_value(p, y);
        rep.admissible = is_admissible(p, y, cfg.tol.admissible);
        const ELReport el = fit_constants(p, y, cfg.tol.residual);
        rep.constants = el.constants;
        rep.residual_sup = el.residual_sup;
        rep.residual_l2 = el.residual_l2;
        rep.scale = el.scale;
        rep.stationary = el.stationary;
        const EquivalenceReport ver = verify_stationarity_equivalence(p, y, cfg.tol.residual);
        rep.gradient_sup = ver.gradient_sup;
        rep.agree = ver.agree;
        rep.trajectory_columns = trajectory_table(p, y);
        rep.print(io.out);

        if (!ver.agree) {
            io.err << "error: gradient and residual verdicts disagree\n";
            return exit_numerical_failure;
        }
        return exit_ok;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_identity(double h, double a, double b, int degree, int i, int j,
                 std::optional<std::uint64_t> seed_flag, CommandIO io) {
    try {
        if (i < 0 || j < 1 || i >= j) fail(errc::config_error, "identity requires 0 <= i < j");
        if (degree < 0) fail(errc::config_error, "degree must be nonnegative");
        const TimeScale window = TimeScale::h_window(a, b, h);

        const std::uint64_t seed = effective_seed(seed_flag, std::nullopt);
        Rng rng(seed);
        std::vector<double> coeff(static_cast<std::size_t>(degree) + 1);
        for (auto& c : coeff) c = rng.uniform(-1.0, 1.0);
        const GridFunction f = GridFunction::sample(window, [&](double t) {
            double acc = 0.0;
            for (std::size_t k = coeff.size(); k-- > 0;) acc = acc * t + coeff[k];
            return acc;
        });

        const double disc = check_exgc_identity(h, window, f, static_cast<std::size_t>(i),
                                                static_cast<std::size_t>(j));
        const double bound = 1e-10 * (1.0 + f.max_abs());
        io.out << "deltavar report\n";
        io.out << "command = identity\n";
        io.out << "[result]\n";
        io.out << "h = " << fmt17(h) << "\n";
        io.out << "a = " << fmt17(a) << "\n";
        io.out << "b = " << fmt17(b) << "\n";
        io.out << "degree = " << degree << "\n";
        io.out << "i = " << i << "\n";
        io.out << "j = " << j << "\n";
        io.out << "seed = " << seed << "\n";
        io.out << "discrepancy = " << fmt17(disc) << "\n";
        io.out << "bound = " << fmt17(bound) << "\n";
        io.out << "within_bound = " << (disc <= bound ? "true" : "false") << "\n";
        if (disc > bound) {
            io.err << "error: identity discrepancy exceeds the bound\n";
            return exit_numerical_failure;
        }
        return exit_ok;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

int cmd_oracle(const std::string& config_path, int trials,
               std::optional<std::uint64_t> seed_flag, CommandIO io) {
    try {
        if (trials < 0) fail(errc::config_error, "trials must be nonnegative");
        ProblemConfig cfg = ProblemConfig::load(config_path);
        cfg.seed = effective_seed(seed_flag, cfg.seed);
        const VariationalProblem p = cfg.build_problem();
        if (p.degenerate())
            fail(errc::config_error, "oracle needs interior freedom; scale has only 2r points");

        const SolveResult sol = minimize_direct(p, solve_options(cfg));
        if (!sol.converged) fail(errc::no_convergence, "minimizer did not converge");
        const std::vector<double> base = interior_values(p, sol.trajectory);

        io.out << "deltavar report\n";
        io.out << "command = oracle\n";
        io.out << "[config]\n" << cfg.echo();
        io.out << "[result]\n";
        io.out << "trials = " << trials << "\n";

        Rng rng(cfg.seed);
        int agreed = 0;
        const int total = trials + 1;
        for (int k = 0; k <= trials; ++k) {
            Trajectory y = sol.trajectory;
            if (k > 0) {
                std::vector<double> free = base;
                for (auto& v : free) v += rng.sign() * rng.uniform(0.5, 1.5);
                y = embed_free(p, free);
            }
            const EquivalenceReport ver = verify_stationarity_equivalence(p, y, cfg.tol.residual);
            agreed += ver.agree ? 1 : 0;
            io.out << "trial_" << k << " = gradient_sup " << fmt17(ver.gradient_sup)
                   << ", residual_sup " << fmt17(ver.el_residual_sup) << ", agree "
                   << (ver.agree ? "true" : "false") << (k == 0 ? "  # minimizer" : "") << "\n";
        }
        io.out << "agreement = " << agreed << "/" << total << "\n";
        if (agreed != total) {
            io.err << "error: stationarity verdicts disagree on " << (total - agreed)
                   << " trajectories\n";
            return exit_numerical_failure;
        }
        return exit_ok;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

} // namespace deltavar

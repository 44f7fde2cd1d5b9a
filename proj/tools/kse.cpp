#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rkhs/errors.hpp"
#include "rkhs/metrics.hpp"
#include "rkhs/solver.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitSelftest = 8;

int exit_code(rkhs::ErrorCategory c) {
    switch (c) {
        case rkhs::ErrorCategory::domain: return 2;
        case rkhs::ErrorCategory::accuracy: return 3;
        case rkhs::ErrorCategory::degeneracy: return 4;
        case rkhs::ErrorCategory::divergence: return 5;
        case rkhs::ErrorCategory::io: return 6;
        default: return 7;
    }
}

struct SolveFlags {
    std::size_t n = 12;
    std::string scheme = "diagonal";
    int sweeps = rkhs::kDefaultSweeps;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
    cmd->add_option("--n", f.n, "Number of collocation points")->check(CLI::PositiveNumber);
    cmd->add_option("--scheme", f.scheme, "Collocation sequence")
        ->check(CLI::IsMember({"diagonal", "halton"}));
    cmd->add_option("--sweeps", f.sweeps, "Sweep budget (1 = single pass)")
        ->check(CLI::PositiveNumber);
}

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

void print_rows(const rkhs::ErrorReport& r) {
    std::printf("%-10s %-12s %-12s %-12s\n", "zeta", "exact", "approx", "abs_error");
    for (const auto& row : r.rows) {
        std::printf("%-10.6g %-12.6g %-12.6g %-12.6g\n", row.zeta, row.exact, row.approx,
                    row.abs_error);
    }
    std::printf("L2 %.6g  Linf %.6g\n", r.l2, r.linf);
}

void write_csv_file(const std::vector<rkhs::ErrorRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw rkhs::IoError("cannot open '" + path + "' for writing");
    }
    rkhs::write_csv(rows, out);
    if (!out.flush()) {
        throw rkhs::IoError("failed writing '" + path + "'");
    }
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    try {
        if (x != std::string::npos) {
            std::size_t used_r = 0;
            std::size_t used_c = 0;
            const int r = std::stoi(text.substr(0, x), &used_r);
            const int c = std::stoi(text.substr(x + 1), &used_c);
            if (used_r == x && used_c == text.size() - x - 1) return {r, c};
        }
    } catch (const std::exception&) {
    }
    throw rkhs::DomainError("grid must look like RxC, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reproducing-kernel collocation solver for the time-fractional "
                 "Kudryashov-Sinelshchikov equation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file with keys alpha, beta, gamma, mu, nu, a, b, T");
    app.allow_config_extras(CLI::config_extras_mode::error);

    rkhs::KseParameters params = rkhs::KseParameters::standard(0.5);
    auto* alpha_opt = app.add_option("--alpha", params.alpha, "Fractional order in (0, 1]");
    app.add_option("--beta", params.beta);
    app.add_option("--gamma", params.gamma);
    app.add_option("--mu", params.mu);
    app.add_option("--nu", params.nu);
    app.add_option("--a", params.a, "Left end of the spatial interval");
    app.add_option("--b", params.b, "Right end of the spatial interval");
    app.add_option("--T", params.T, "Time horizon");

    SolveFlags solve_flags;
    auto* solve_cmd = app.add_subcommand("solve", "Solve and print error norms");
    add_solve_flags(solve_cmd, solve_flags);

    SolveFlags table_flags;
    int which = 1;
    double table_tau = 0.5;
    std::string table_csv;
    auto* table_cmd = app.add_subcommand("table", "Absolute errors at zeta = i/12");
    add_solve_flags(table_cmd, table_flags);
    table_cmd->add_option("--which", which, "1..4 select alpha = 0.5, 0.75, 0.85, 0.95")
        ->check(CLI::Range(1, 4));
    table_cmd->add_option("--tau", table_tau, "Time level");
    table_cmd->add_option("--csv", table_csv, "Also write the rows as CSV");

    std::vector<std::size_t> n_list{6, 12, 24};
    std::vector<double> tau_list{1.0 / 6, 1.0 / 3, 0.5, 2.0 / 3, 5.0 / 6};
    std::string converge_scheme = "diagonal";
    auto* converge_cmd = app.add_subcommand("converge", "L2/Linf over zeta = i/12 per n and tau, "
                                                        "single pass and converged sweeps");
    converge_cmd->add_option("--n-list", n_list)->delimiter(',');
    converge_cmd->add_option("--tau-list", tau_list)->delimiter(',');
    converge_cmd->add_option("--scheme", converge_scheme)
        ->check(CLI::IsMember({"diagonal", "halton"}));

    SolveFlags surface_flags;
    std::string grid = "21x21";
    std::string surface_csv;
    auto* surface_cmd = app.add_subcommand("surface", "Write exact/approximate values on a grid");
    add_solve_flags(surface_cmd, surface_flags);
    surface_cmd->add_option("--grid", grid, "RxC points over the closed domain");
    surface_cmd->add_option("--csv", surface_csv, "Output file")->required();

    app.add_subcommand("selftest", "Kernel, Caputo, orthonormality and operator checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        std::fprintf(stderr, "error [io]: %s\n", e.what());
        return exit_code(rkhs::ErrorCategory::io);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (table_cmd->parsed() && alpha_opt->count() == 0) {
            const double alphas[] = {0.5, 0.75, 0.85, 0.95};
            params.alpha = alphas[which - 1];
        }
        const rkhs::KseProblem problem(params);

        if (solve_cmd->parsed()) {
            const auto sol = rkhs::solve(problem, solve_flags.n,
                                         rkhs::parse_scheme(solve_flags.scheme), solve_flags.sweeps);
            const auto grid_report =
                rkhs::make_report(sol, rkhs::default_validation_grid(problem.parameters()));
            const auto table = rkhs::make_report(sol, rkhs::table_points(problem.parameters(),
                                                                          0.5 * problem.T()));
            std::printf("alpha %g  n %zu  scheme %s  sweeps %d  converged %s\n",
                        problem.alpha().value(), sol.size(),
                        rkhs::scheme_name(sol.basis().set().scheme), sol.sweeps_used(),
                        sol.converged() ? "yes" : "no");
            std::printf("collocation residual %.3e\n", sol.collocation_residual());
            std::printf("validation grid (%zu points): L2 %.6g  Linf %.6g\n",
                        grid_report.rows.size(), grid_report.l2, grid_report.linf);
            std::printf("zeta = i/12 at tau = T/2:     L2 %.6g  Linf %.6g\n", table.l2, table.linf);
        } else if (table_cmd->parsed()) {
            const auto report = rkhs::table_abs_errors(problem, table_flags.n, table_tau, {},
                                                       rkhs::parse_scheme(table_flags.scheme),
                                                       table_flags.sweeps);
            std::printf("alpha %g  tau %g  n %zu  sweeps %d\n", params.alpha, table_tau,
                        report.config.n, report.config.sweeps);
            print_rows(report);
            if (!table_csv.empty()) write_csv_file(report.rows, table_csv);
        } else if (converge_cmd->parsed()) {
            const auto scheme = rkhs::parse_scheme(converge_scheme);
            std::printf("alpha %g  scheme %s\n", params.alpha, rkhs::scheme_name(scheme));
            std::printf("%-6s %-10s %-12s %-12s %-12s %-12s\n", "n", "tau", "L2 (1 pass)",
                        "Linf (1 pass)", "L2", "Linf");
            const auto single = rkhs::convergence_table(problem, n_list, tau_list, scheme, 1);
            const auto swept = rkhs::convergence_table(problem, n_list, tau_list, scheme);
            for (std::size_t k = 0; k < single.size(); ++k) {
                std::printf("%-6zu %-10.6g %-12s %-12s %-12s %-12s\n", single[k].config.n,
                            single[k].rows.front().tau, fmt("%.6g", single[k].l2).c_str(),
                            fmt("%.6g", single[k].linf).c_str(), fmt("%.6g", swept[k].l2).c_str(),
                            fmt("%.6g", swept[k].linf).c_str());
            }
        } else if (surface_cmd->parsed()) {
            const auto [rows, cols] = parse_grid(grid);
            const auto sol = rkhs::solve(problem, surface_flags.n,
                                         rkhs::parse_scheme(surface_flags.scheme),
                                         surface_flags.sweeps);
            rkhs::emit_surface(sol, rows, cols, surface_csv);
            std::printf("wrote %d rows to %s\n", rows * cols, surface_csv.c_str());
        } else {
            const int failures = kse::run_selftest(std::cout);
            if (failures > 0) {
                std::fprintf(stderr, "error [selftest]: %d check(s) failed\n", failures);
                return kExitSelftest;
            }
        }
    } catch (const rkhs::Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", rkhs::category_name(e.category()), e.what());
        return exit_code(e.category());
    }
    return 0;
}

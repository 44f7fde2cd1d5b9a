#include "rkhs/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "rkhs/errors.hpp"

namespace rkhs {

double l2_error(std::span<const double> errors) {
    if (errors.empty()) {
        throw ContractError("l2_error needs a nonempty list");
    }
    double sum = 0.0;
    for (double e : errors) sum += e * e;
    return std::sqrt(sum);
}

double linf_error(std::span<const double> errors) {
    if (errors.empty()) {
        throw ContractError("linf_error needs a nonempty list");
    }
    double worst = 0.0;
    for (double e : errors) worst = std::max(worst, std::abs(e));
    return worst;
}

ErrorReport make_report(const ApproximateSolution& sol, const std::vector<Point>& points) {
    if (points.empty()) {
        throw ContractError("make_report needs at least one point");
    }
    const ReferenceSolution exact(sol.problem());
    ErrorReport report;
    std::vector<double> errors;
    for (const auto& p : points) {
        ErrorRow row{p.zeta, p.tau, exact(p.zeta, p.tau), sol.value(p.zeta, p.tau, 0), 0.0};
        row.abs_error = std::abs(row.exact - row.approx);
        errors.push_back(row.abs_error);
        report.rows.push_back(row);
    }
    report.l2 = l2_error(errors);
    report.linf = linf_error(errors);
    report.config = {sol.problem().alpha().value(), sol.size(), sol.basis().set().scheme,
                     sol.sweeps_used()};
    return report;
}

std::vector<double> table_zetas(const KseParameters& domain) {
    std::vector<double> out;
    for (const auto& p : table_points(domain, 0.0)) out.push_back(p.zeta);
    return out;
}

ErrorReport table_abs_errors(const KseProblem& problem, std::size_t n, double tau,
                             std::vector<double> zeta_points, CollocationScheme scheme,
                             int sweeps) {
    if (zeta_points.empty()) {
        zeta_points = table_zetas(problem.parameters());
    }
    std::vector<Point> points;
    for (double z : zeta_points) points.push_back({z, tau});
    return make_report(solve(problem, n, scheme, sweeps), points);
}

std::vector<ErrorReport> convergence_table(const KseProblem& problem,
                                           const std::vector<std::size_t>& n_list,
                                           const std::vector<double>& tau_list,
                                           CollocationScheme scheme, int sweeps) {
    if (n_list.empty() || tau_list.empty()) {
        throw ContractError("convergence_table needs nonempty n and tau lists");
    }
    const auto zetas = table_zetas(problem.parameters());
    std::vector<ErrorReport> out;
    for (std::size_t n : n_list) {
        const auto sol = solve(problem, n, scheme, sweeps);
        for (double tau : tau_list) {
            std::vector<Point> points;
            for (double z : zetas) points.push_back({z, tau});
            out.push_back(make_report(sol, points));
        }
    }
    return out;
}

void write_csv(const std::vector<ErrorRow>& rows, std::ostream& out) {
    out << "zeta,tau,exact,approx,abs_error\n";
    char line[160];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.zeta, r.tau, r.exact,
                      r.approx, r.abs_error);
        out << line;
    }
}

ErrorReport surface_report(const ApproximateSolution& sol, int rows, int cols) {
    if (rows < 2 || cols < 2) {
        throw ContractError("surface grid needs at least 2 x 2 points");
    }
    const auto& d = sol.problem().parameters();
    std::vector<Point> points;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            points.push_back({d.a + (d.b - d.a) * i / (rows - 1.0), d.T * j / (cols - 1.0)});
        }
    }
    return make_report(sol, points);
}

void emit_surface(const ApproximateSolution& sol, int rows, int cols, const std::string& path) {
    const auto report = surface_report(sol, rows, cols);
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    write_csv(report.rows, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace rkhs

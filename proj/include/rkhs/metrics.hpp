#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rkhs/solver.hpp"

namespace rkhs {

struct ErrorRow {
    double zeta = 0.0;
    double tau = 0.0;
    double exact = 0.0;
    double approx = 0.0;
    double abs_error = 0.0;
};

struct RunConfig {
    double alpha = 0.0;
    std::size_t n = 0;
    CollocationScheme scheme = CollocationScheme::diagonal_grid;
    int sweeps = 0;
};

/// Pointwise comparison against the reference solution plus both norms.
struct ErrorReport {
    std::vector<ErrorRow> rows;
    double l2 = 0.0;    // sqrt of the sum of squares, not divided by the row count
    double linf = 0.0;
    RunConfig config;
};

/// Unnormalized Euclidean norm. Throws ContractError on an empty list.
double l2_error(std::span<const double> errors);
/// Largest magnitude. Throws ContractError on an empty list.
double linf_error(std::span<const double> errors);

ErrorReport make_report(const ApproximateSolution& sol, const std::vector<Point>& points);

/// zeta = a + (b-a) i/12, i = 1..11.
std::vector<double> table_zetas(const KseParameters& domain);

/// Solves at n and compares at (zeta, tau) for each zeta (table_zetas when empty).
ErrorReport table_abs_errors(const KseProblem& problem, std::size_t n, double tau,
                             std::vector<double> zeta_points = {},
                             CollocationScheme scheme = CollocationScheme::diagonal_grid,
                             int sweeps = kDefaultSweeps);

/// One report per (n, tau), n-major, over the table zetas.
std::vector<ErrorReport> convergence_table(const KseProblem& problem,
                                           const std::vector<std::size_t>& n_list,
                                           const std::vector<double>& tau_list,
                                           CollocationScheme scheme = CollocationScheme::diagonal_grid,
                                           int sweeps = kDefaultSweeps);

/// Rows of `zeta,tau,exact,approx,abs_error` at 17 significant digits.
void write_csv(const std::vector<ErrorRow>& rows, std::ostream& out);

/// Report for the rows x cols grid spanning the closed domain, zeta-major.
ErrorReport surface_report(const ApproximateSolution& sol, int rows, int cols);

/// Writes surface_report as CSV. Throws IoError when the file cannot be written.
void emit_surface(const ApproximateSolution& sol, int rows, int cols, const std::string& path);

}  // namespace rkhs

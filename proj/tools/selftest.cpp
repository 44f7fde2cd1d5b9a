#include "selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "rkhs/basis.hpp"
#include "rkhs/fracalc.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/piecewise.hpp"
#include "rkhs/problem.hpp"

namespace kse {

namespace {

struct Tally {
    std::ostream& out;
    int failures = 0;

    void report(const std::string& name, bool passed, double worst, double tol) {
        char line[200];
        std::snprintf(line, sizeof line, "%s  %-40s worst %.3e  tol %.1e\n", passed ? "PASS" : "FAIL",
                      name.c_str(), worst, tol);
        out << line;
        if (!passed) ++failures;
    }
};

rkhs::PiecewisePolynomial random_piecewise(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> pieces(1, 3);
    std::uniform_int_distribution<int> degree(1, 5);
    const int m = pieces(rng);
    std::vector<double> breaks{0.0};
    for (int k = 1; k < m; ++k) breaks.push_back(static_cast<double>(k) / m);
    breaks.push_back(1.0);
    std::vector<std::vector<double>> polys;
    for (int k = 0; k < m; ++k) {
        std::vector<double> c(static_cast<std::size_t>(degree(rng)) + 1);
        for (auto& x : c) x = coef(rng);
        polys.push_back(c);
    }
    return rkhs::PiecewisePolynomial(breaks, polys);
}

void kernel_checks(Tally& t) {
    const rkhs::KernelFamily* families[] = {&rkhs::order1_family(), &rkhs::order2_family(),
                                            &rkhs::order4_family()};
    for (const auto* f : families) {
        const auto report = rkhs::verify_kernel(*f);
        for (const auto& c : report.checks) {
            t.report("kernel order " + std::to_string(f->order()) + " " + c.name, c.passed,
                     c.worst, c.tolerance);
        }
    }
    const auto candidate = rkhs::verify_kernel(rkhs::order4_closed_form_candidate());
    t.out << "INFO  order-4 closed-form candidate: " << (candidate.passed() ? "valid" : "rejected")
          << " (reproducing defect " << candidate.find("reproducing")->worst << ")\n";
}

void caputo_checks(Tally& t) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_piecewise(rng);
        const rkhs::FractionalOrder alpha(unit(rng) * 0.95);
        const double x = unit(rng);
        const auto dp = p.derivative(1);
        const double exact = rkhs::caputo_piecewise(p, alpha, x);
        const double quad = rkhs::caputo_numeric([&](double s) { return dp(s); }, alpha, x, 1e-11,
                                                 p.breakpoints());
        worst = std::max(worst, std::abs(exact - quad));
    }
    t.report("caputo exact vs quadrature", worst <= 1e-8, worst, 1e-8);

    const auto& r2 = rkhs::order2_family();
    worst = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
        const rkhs::FractionalOrder alpha(a);
        for (auto [u, s] : {std::pair{0.3, 0.7}, std::pair{0.6, 0.2}, std::pair{0.5, 0.9}}) {
            auto inner = [&](double sigma) {
                return rkhs::caputo_piecewise(r2.section(sigma, 1), alpha, u);
            };
            const double breaks[1] = {u};
            const double nested = rkhs::caputo_numeric(inner, alpha, s, 1e-11, breaks);
            worst = std::max(worst, std::abs(nested - rkhs::rk2_double_caputo(u, s, alpha)));
        }
    }
    t.report("double caputo closed form vs nested", worst <= 1e-8, worst, 1e-8);
}

void basis_checks(Tally& t) {
    const rkhs::KseProblem problem(rkhs::KseParameters::standard(0.5));
    const rkhs::CollocationBasis basis(
        problem, rkhs::make_collocation(24, rkhs::CollocationScheme::diagonal_grid,
                                        problem.parameters()));
    const double defect = basis.orthonormality_defect();
    t.report("orthonormality n=24", defect <= 1e-8, defect, 1e-8);

    const Eigen::MatrixXd g = basis.gram().topLeftCorner(8, 8);
    const double diff =
        (rkhs::orthonormalize(g) - rkhs::gram_schmidt_coefficients(g)).cwiseAbs().maxCoeff();
    t.report("cholesky vs gram-schmidt n=8", diff <= 1e-8, diff, 1e-8);
}

void recombination_check(Tally& t) {
    const rkhs::KseProblem problem(rkhs::KseParameters::standard(0.5));
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const rkhs::Point p{unit(rng), 0.05 + 0.95 * unit(rng)};
        const rkhs::FieldBundle v{sym(rng), sym(rng), sym(rng), sym(rng), sym(rng)};
        const auto f = rkhs::lifting_bundle(problem, p, true);
        const double forcing = problem.data().forcing(p.zeta, p.tau);
        const double split = rkhs::apply_L(problem, v, f) - rkhs::rhs_M(problem, v, f, forcing);
        const double direct = rkhs::equation_residual(problem.parameters(), v + f) - forcing;
        worst = std::max(worst, std::abs(split - direct));
    }
    t.report("L v - M = residual(v + f)", worst <= 1e-9, worst, 1e-9);
}

}  // namespace

int run_selftest(std::ostream& out) {
    Tally t{out};
    kernel_checks(t);
    caputo_checks(t);
    basis_checks(t);
    recombination_check(t);
    return t.failures;
}

}  // namespace kse

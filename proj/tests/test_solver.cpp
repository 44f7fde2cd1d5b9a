#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "rkhs/errors.hpp"
#include "rkhs/solver.hpp"

using rkhs::CollocationScheme;
using rkhs::KseParameters;
using rkhs::KseProblem;

namespace {

KseParameters linear_parameters(double alpha) {
    KseParameters p = KseParameters::standard(alpha);
    p.gamma = 0.0;
    p.mu = 0.0;
    p.beta = -1.0;
    return p;
}

KseProblem manufactured(double alpha, double amplitude) {
    const KseParameters p = linear_parameters(alpha);
    return KseProblem(p, std::make_shared<rkhs::ManufacturedData>(p, amplitude));
}

}  // namespace

TEST(Solve, ManufacturedSolutionRecovered) {
    const KseProblem problem = manufactured(0.5, 0.05);
    const auto grid = rkhs::interior_grid(problem.parameters(), 9);
    const auto coarse = rkhs::solve(problem, 4);
    const auto fine = rkhs::solve(problem, 16);
    ASSERT_TRUE(fine.converged());
    const double e4 = rkhs::max_error(coarse, grid);
    const double e16 = rkhs::max_error(fine, grid);
    EXPECT_LE(e16, 1e-4);
    EXPECT_LE(e16, 0.2 * e4);
}

TEST(Solve, StationaryDataGiveZeroCorrection) {
    KseParameters p = KseParameters::standard(0.5);
    p.mu = -p.nu;
    const auto sol = rkhs::solve(KseProblem(p), 8);
    EXPECT_LE(sol.coefficients().cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Solve, CorrectionKeepsHomogeneousTraces) {
    for (auto scheme : {CollocationScheme::diagonal_grid, CollocationScheme::halton}) {
        const KseProblem problem(KseParameters::standard(0.75));
        const auto sol = rkhs::solve(problem, 12, scheme);
        double worst = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double s = k / 20.0;
            worst = std::max({worst, std::abs(sol.homogeneous(0.0, s)), std::abs(sol.homogeneous(1.0, s)),
                              std::abs(sol.homogeneous(s, 0.0)), std::abs(sol.homogeneous(0.0, s, 1))});
            EXPECT_NEAR(rkhs::evaluate(sol, s, 0.0), problem.data().exact(s, 0.0, 0), 1e-9);
        }
        EXPECT_LE(worst, 1e-9);
    }
}

TEST(Solve, CollocationEquationsHold) {
    for (double alpha : {0.5, 0.95}) {
        const auto sol = rkhs::solve(KseProblem(KseParameters::standard(alpha)), 12);
        EXPECT_TRUE(sol.converged());
        EXPECT_LE(sol.collocation_residual(), 1e-6);
    }
    const auto lin = rkhs::solve(manufactured(0.5, 0.05), 12);
    EXPECT_LE(lin.collocation_residual(), 1e-6);
}

TEST(Solve, SpatialDerivativeByFiniteDifferences) {
    const auto sol = rkhs::solve(KseProblem(KseParameters::standard(0.5)), 12);
    const double h = 1e-5;
    for (double z : {0.2, 0.5, 0.77}) {
        for (int d = 0; d < 3; ++d) {
            const double fd = (rkhs::evaluate(sol, z + h, 0.4, d) - rkhs::evaluate(sol, z - h, 0.4, d)) / (2.0 * h);
            EXPECT_NEAR(rkhs::evaluate(sol, z, 0.4, d + 1), fd, 1e-5);
        }
    }
    EXPECT_THROW(rkhs::evaluate(sol, 0.5, 0.5, 4), rkhs::ContractError);
}

TEST(Solve, TabulatedCentreValue) {
    const auto sol = rkhs::solve(KseProblem(KseParameters::standard(0.5)), 12);
    EXPECT_NEAR(rkhs::evaluate(sol, 0.5, 0.5), 0.176569, 1e-4);
}

TEST(Solve, SweepChangesShrink) {
    for (const KseProblem& problem : {KseProblem(KseParameters::standard(0.5)), manufactured(0.5, 0.05),
                                      manufactured(0.75, 1.0)}) {
        const auto sol = rkhs::solve(problem, 12);
        ASSERT_TRUE(sol.converged());
        const auto& ch = sol.sweep_changes();
        for (std::size_t k = 1; k < ch.size(); ++k) EXPECT_LE(ch[k], ch[k - 1]) << k;
    }
}

TEST(Solve, SinglePassVersusSweeps) {
    const KseProblem problem = manufactured(0.5, 0.05);
    auto basis = std::make_shared<const rkhs::CollocationBasis>(
        problem, rkhs::make_collocation(12, CollocationScheme::diagonal_grid, problem.parameters()));
    const auto once = rkhs::solve(basis, 1);
    const auto many = rkhs::solve(basis);
    EXPECT_EQ(once.sweeps_used(), 1);
    EXPECT_TRUE(once.sweep_changes().empty());
    EXPECT_GT(many.sweeps_used(), 1);
    EXPECT_LE(many.collocation_residual(), 1e-6);
    EXPECT_LE(many.collocation_residual(), once.collocation_residual());
}

TEST(Solve, DivergenceIsReported) {
    try {
        rkhs::solve(manufactured(0.5, 20.0), 12);
        FAIL() << "expected divergence";
    } catch (const rkhs::DivergenceError& e) {
        EXPECT_GE(e.sweep(), 1);
    }
}

TEST(Solve, RejectsEmptyBasis) {
    EXPECT_THROW(rkhs::solve(KseProblem(KseParameters::standard()), 0), rkhs::ContractError);
}

TEST(ErrorSequence, DecreasesWithSlack) {
    for (double alpha : {0.5, 0.75, 0.95}) {
        const KseProblem problem(KseParameters::standard(alpha));
        const auto grid = rkhs::default_validation_grid(problem.parameters());
        const auto seq = rkhs::error_sequence(problem, {6, 12, 24}, grid);
        ASSERT_EQ(seq.size(), 3u);
        for (std::size_t k = 1; k < seq.size(); ++k) {
            EXPECT_LE(seq[k].second, 1.1 * seq[k - 1].second) << alpha << " n=" << seq[k].first;
        }
    }
}

TEST(ErrorSequence, SingleEntryAndPreconditions) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto grid = rkhs::default_validation_grid(problem.parameters());
    const auto seq = rkhs::error_sequence(problem, {6}, grid);
    ASSERT_EQ(seq.size(), 1u);
    EXPECT_EQ(seq[0].second, rkhs::max_error(rkhs::solve(problem, 6), grid));
    EXPECT_THROW(rkhs::error_sequence(problem, {12, 6}, grid), rkhs::ContractError);
}

TEST(Residual, ShrinksWithMorePoints) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto s6 = rkhs::solve(problem, 6);
    const auto s12 = rkhs::solve(problem, 12);
    double r6 = 0.0;
    double r12 = 0.0;
    for (const auto& p : rkhs::interior_grid(problem.parameters(), 3)) {
        r6 = std::max(r6, std::abs(rkhs::residual(problem, s6, p, 1e-8)));
        r12 = std::max(r12, std::abs(rkhs::residual(problem, s12, p, 1e-8)));
    }
    EXPECT_LT(r12, r6);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/metrics.hpp"

using rkhs::KseParameters;
using rkhs::KseProblem;

TEST(Norms, Examples) {
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    EXPECT_EQ(rkhs::l2_error(zeros), 0.0);
    const std::vector<double> pair{3e-6, 4e-6};
    EXPECT_NEAR(rkhs::l2_error(pair), 5e-6, 1e-20);
    const std::vector<double> one{0.0};
    EXPECT_EQ(rkhs::linf_error(one), 0.0);
    const std::vector<double> signed_pair{3e-6, -4e-6};
    EXPECT_EQ(rkhs::linf_error(signed_pair), 4e-6);
    EXPECT_THROW(rkhs::l2_error({}), rkhs::ContractError);
    EXPECT_THROW(rkhs::linf_error({}), rkhs::ContractError);
}

TEST(Norms, InequalitiesOnRandomLists) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 1e-5);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> e(1 + k % 17);
        for (double& x : e) x = g(rng);
        const double l2 = rkhs::l2_error(e);
        const double linf = rkhs::linf_error(e);
        EXPECT_LE(linf, l2 * (1.0 + 1e-15));
        EXPECT_LE(l2, std::sqrt(static_cast<double>(e.size())) * linf * (1.0 + 1e-15));
    }
}

TEST(TableErrors, ColumnsAreConsistent) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto report = rkhs::table_abs_errors(problem, 12, 0.5);
    ASSERT_EQ(report.rows.size(), 11u);
    std::vector<double> errs;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        EXPECT_DOUBLE_EQ(r.zeta, (i + 1) / 12.0);
        EXPECT_EQ(r.tau, 0.5);
        EXPECT_EQ(r.abs_error, std::abs(r.exact - r.approx));
        errs.push_back(r.abs_error);
    }
    EXPECT_EQ(report.linf, *std::max_element(errs.begin(), errs.end()));
    EXPECT_EQ(report.l2, rkhs::l2_error(errs));
    EXPECT_EQ(report.config.n, 12u);
    EXPECT_EQ(report.config.alpha, 0.5);
    EXPECT_NEAR(report.rows[5].exact, 0.176567, 5e-7);
    EXPECT_LE(report.linf, 1e-4);
}

TEST(TableErrors, ExactColumnAtHighOrder) {
    const KseProblem problem(KseParameters::standard(0.95));
    const auto report = rkhs::table_abs_errors(problem, 6, 0.5, {1.0 / 12.0});
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_NEAR(report.rows[0].exact, 0.0350453, 5e-8);
}

TEST(TableErrors, StationaryProblemIsExact) {
    KseParameters p = KseParameters::standard(0.5);
    p.mu = -p.nu;
    const auto report = rkhs::table_abs_errors(KseProblem(p), 8, 0.5);
    for (const auto& r : report.rows) EXPECT_LE(r.abs_error, 1e-9);
}

TEST(ConvergenceTable, ShapeAndTrend) {
    const KseProblem problem(KseParameters::standard(0.5));
    const std::vector<double> taus{1.0 / 6.0, 0.5, 5.0 / 6.0};
    const auto table = rkhs::convergence_table(problem, {6, 12}, taus);
    ASSERT_EQ(table.size(), 6u);
    for (std::size_t k = 0; k < table.size(); ++k) {
        EXPECT_EQ(table[k].config.n, k < 3 ? 6u : 12u);
        EXPECT_EQ(table[k].rows.front().tau, taus[k % 3]);
        EXPECT_EQ(table[k].rows.size(), 11u);
        EXPECT_LE(table[k].linf, table[k].l2);
        EXPECT_GT(table[k].linf, 0.0);
        EXPECT_TRUE(std::isfinite(table[k].l2));
    }
    // the trend is asserted at tau = 0.5 only; single slices need not be monotone
    EXPECT_LE(table[4].linf, 1.1 * table[1].linf);
    EXPECT_THROW(rkhs::convergence_table(problem, {}, taus), rkhs::ContractError);
}

TEST(Csv, SurfaceLayoutAndRoundTrip) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto sol = rkhs::solve(problem, 6);
    const auto report = rkhs::surface_report(sol, 2, 2);
    std::ostringstream out;
    rkhs::write_csv(report.rows, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "zeta,tau,exact,approx,abs_error");
    std::vector<rkhs::ErrorRow> parsed;
    while (std::getline(in, line)) {
        rkhs::ErrorRow r;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &r.zeta, &r.tau, &r.exact, &r.approx,
                              &r.abs_error),
                  5);
        parsed.push_back(r);
    }
    ASSERT_EQ(parsed.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(parsed[i].zeta, report.rows[i].zeta);
        EXPECT_EQ(parsed[i].tau, report.rows[i].tau);
        EXPECT_EQ(parsed[i].exact, report.rows[i].exact);
        EXPECT_EQ(parsed[i].approx, report.rows[i].approx);
        EXPECT_EQ(parsed[i].abs_error, report.rows[i].abs_error);
    }
    EXPECT_EQ(parsed[1].zeta, 0.0);
    EXPECT_EQ(parsed[1].tau, 1.0);
    EXPECT_EQ(parsed[2].zeta, 1.0);
    EXPECT_THROW(rkhs::surface_report(sol, 1, 5), rkhs::ContractError);
}

TEST(Csv, EmissionIsDeterministic) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "rkhs_surface_a.csv";
    const auto p2 = dir / "rkhs_surface_b.csv";
    rkhs::emit_surface(rkhs::solve(problem, 6), 5, 4, p1.string());
    rkhs::emit_surface(rkhs::solve(problem, 6), 5, 4, p2.string());
    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    const std::string a = slurp(p1);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(p2));
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 21);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST(Csv, MidTimeSliceMatchesTableRows) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto sol = rkhs::solve(problem, 12);
    const auto surface = rkhs::surface_report(sol, 13, 3);
    const auto table = rkhs::table_abs_errors(problem, 12, 0.5);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& s = surface.rows[(i + 1) * 3 + 1];
        EXPECT_DOUBLE_EQ(s.zeta, table.rows[i].zeta);
        EXPECT_EQ(s.tau, 0.5);
        EXPECT_NEAR(s.approx, table.rows[i].approx, 1e-15);
    }
}

TEST(Csv, UnwritablePathIsIoError) {
    const auto sol = rkhs::solve(KseProblem(KseParameters::standard(0.5)), 4);
    EXPECT_THROW(rkhs::emit_surface(sol, 2, 2, "/nonexistent-dir/x/out.csv"), rkhs::IoError);
}

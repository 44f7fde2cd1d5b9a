#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/problem.hpp"

using rkhs::FieldBundle;
using rkhs::KseParameters;
using rkhs::KseProblem;
using rkhs::Point;

namespace {

bool six_significant(double x, double ref) {
    const double unit = std::pow(10.0, std::floor(std::log10(std::abs(ref))) - 5.0);
    return std::abs(x - ref) <= 0.5 * unit * (1.0 + 1e-9);
}

FieldBundle random_bundle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng), u(rng), u(rng), u(rng)};
}

// Caputo in tau of tanh(z - c tau^a / G(1+a)) - tanh(z), differentiated j times in z,
// by the Taylor series in the phase shift.
double shifted_tanh_caputo(double z, int j, double c, double alpha, double tau) {
    const double t = std::tanh(z);
    const double scale = c / std::tgamma(1.0 + alpha);
    double sum = 0.0;
    double factorial = 1.0;
    for (int k = 1; k <= 25; ++k) {
        factorial *= k;
        const double dk = oracle::horner(oracle::tanh_derivative_poly(k + j), t);
        const double monomial = std::tgamma(k * alpha + 1.0) / std::tgamma(k * alpha + 1.0 - alpha) *
                                std::pow(tau, (k - 1) * alpha);
        sum += dk * std::pow(-scale, k) / factorial * monomial;
    }
    return sum;
}

// Caputo of the lifting: traces of the wave blended quadratically in zeta.
double lifting_caputo_series(const KseParameters& p, double zeta, double tau) {
    const double den = -4.0 + p.gamma + p.mu * p.mu;
    const double amp = -2.0 * (p.mu + p.nu) / den;
    const double c = p.gamma * (-4.0 + p.gamma - p.mu * p.nu) / den;
    const double len = p.b - p.a;
    const double ca = amp * shifted_tanh_caputo(p.a, 0, c, p.alpha, tau);
    const double cb = amp * shifted_tanh_caputo(p.b, 0, c, p.alpha, tau);
    const double cs = amp * shifted_tanh_caputo(p.a, 1, c, p.alpha, tau);
    const double qa = std::pow((p.b - zeta) / len, 2);
    const double qb = std::pow((zeta - p.a) / len, 2);
    const double m = (zeta - p.a) * (p.b - zeta) / len;
    return qa * ca + qb * cb + m * (cs + 2.0 * ca / len);
}

// L1 finite-difference Caputo on a uniform grid of n steps.
double l1_caputo(const std::function<double(double)>& f, double alpha, double t, int n) {
    const double h = t / n;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double w = std::pow(n - j, 1.0 - alpha) - std::pow(n - j - 1, 1.0 - alpha);
        sum += w * (f((j + 1) * h) - f(j * h));
    }
    return sum / (std::pow(h, alpha) * std::tgamma(2.0 - alpha));
}

}  // namespace

TEST(KseProblem, ValidatesParameters) {
    KseParameters p = KseParameters::standard();
    p.b = p.a;
    EXPECT_THROW(KseProblem{p}, rkhs::DomainError);
    p = KseParameters::standard();
    p.T = 0.0;
    EXPECT_THROW(KseProblem{p}, rkhs::DomainError);
    p = KseParameters::standard();
    p.gamma = 4.0;
    p.mu = 0.0;
    EXPECT_THROW(KseProblem{p}, rkhs::DomainError);
    p = KseParameters::standard();
    p.alpha = 0.0;
    EXPECT_THROW(KseProblem{p}, rkhs::DomainError);
}

TEST(ReferenceSolution, MatchesTabulatedExactValues) {
    const KseProblem problem(KseParameters::standard(0.5));
    const rkhs::ReferenceSolution w(problem);
    const std::vector<double> exact{0.0350045, 0.0656315, 0.0954304, 0.124041, 0.151164, 0.176567,
                                    0.200091,  0.221647,  0.241212,  0.258815, 0.274529};
    for (int i = 1; i <= 11; ++i) {
        EXPECT_TRUE(six_significant(w(i / 12.0, 0.5), exact[i - 1]))
            << "zeta=" << i / 12.0 << " got " << w(i / 12.0, 0.5);
    }
}

TEST(ReferenceSolution, SpotValuesAtOtherOrders) {
    const struct {
        double alpha, zeta, value;
    } spots[] = {{0.75, 0.5, 0.176585},
                 {0.85, 0.5, 0.176592},
                 {0.95, 1.0 / 12.0, 0.0350453},
                 {0.95, 11.0 / 12.0, 0.274548}};
    for (const auto& s : spots) {
        const rkhs::ReferenceSolution w{KseProblem(KseParameters::standard(s.alpha))};
        EXPECT_TRUE(six_significant(w(s.zeta, 0.5), s.value)) << s.alpha << " " << s.zeta;
    }
}

TEST(ReferenceSolution, ClassicalOrderSolvesEquation) {
    const KseProblem problem(KseParameters::standard(1.0));
    const rkhs::ReferenceSolution w(problem);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 20; ++k) {
        EXPECT_LE(std::abs(rkhs::residual(problem, w, {u(rng), u(rng)})), 1e-8);
    }
}

TEST(ReferenceSolution, SpatialDerivativesByFiniteDifferences) {
    const KseProblem problem(KseParameters::standard(0.5));
    const rkhs::ReferenceSolution w(problem);
    const double h = 1e-5;
    for (int d = 0; d < 3; ++d) {
        const double fd = (w.value(0.4 + h, 0.3, d) - w.value(0.4 - h, 0.3, d)) / (2.0 * h);
        EXPECT_NEAR(w.value(0.4, 0.3, d + 1), fd, 1e-7);
    }
    const double ft = (w.value(0.4, 0.3 + h, 0) - w.value(0.4, 0.3 - h, 0)) / (2.0 * h);
    EXPECT_NEAR(w.dtau(0.4, 0.3), ft, 1e-7);
}

TEST(Lifting, ReproducesTraces) {
    for (double alpha : {0.5, 0.95}) {
        const KseProblem problem(KseParameters::standard(alpha));
        const rkhs::ReferenceSolution w(problem);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 20; ++k) {
            const double tau = u(rng);
            const double zeta = u(rng);
            EXPECT_NEAR(rkhs::lifting_f(problem, 0.0, tau, 0), w(0.0, tau), 1e-10);
            EXPECT_NEAR(rkhs::lifting_f(problem, 1.0, tau, 0), w(1.0, tau), 1e-10);
            EXPECT_NEAR(rkhs::lifting_f(problem, zeta, 0.0, 0), w(zeta, 0.0), 1e-10);
            EXPECT_NEAR(rkhs::lifting_f(problem, 0.0, tau, 1), w.value(0.0, tau, 1), 1e-10);
        }
    }
}

TEST(Lifting, DerivativesByFiniteDifferences) {
    const KseProblem problem(KseParameters::standard(0.75));
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    const double h = 1e-5;
    for (int k = 0; k < 50; ++k) {
        const double z = u(rng);
        const double t = u(rng);
        for (int d = 0; d < 3; ++d) {
            const double fd = (rkhs::lifting_f(problem, z + h, t, d) -
                               rkhs::lifting_f(problem, z - h, t, d)) / (2.0 * h);
            EXPECT_NEAR(rkhs::lifting_f(problem, z, t, d + 1), fd, 1e-6);
        }
        const auto& data = problem.data();
        const double ft = (data.lifting(z, t + h, 0) - data.lifting(z, t - h, 0)) / (2.0 * h);
        EXPECT_NEAR(data.lifting_dtau(z, t), ft, 1e-6);
    }
}

TEST(Lifting, RejectsBadArguments) {
    const KseProblem problem(KseParameters::standard());
    EXPECT_THROW(rkhs::lifting_f(problem, 0.5, 0.5, 4), rkhs::ContractError);
    EXPECT_THROW(rkhs::lifting_f(problem, 1.5, 0.5, 0), rkhs::DomainError);
    EXPECT_THROW(rkhs::caputo_f(problem, 0.5, 0.0), rkhs::DomainError);
}

TEST(CaputoOfLifting, MatchesSeriesExpansion) {
    for (double alpha : {0.3, 0.5, 0.75, 0.95}) {
        const KseParameters p = KseParameters::standard(alpha);
        const KseProblem problem(p);
        for (double z : {0.1, 0.5, 0.8}) {
            for (double t : {0.05, 0.5, 1.0}) {
                const double ref = lifting_caputo_series(p, z, t);
                EXPECT_NEAR(rkhs::caputo_f(problem, z, t), ref, 1e-9 + 1e-7 * std::abs(ref))
                    << alpha << " " << z << " " << t;
            }
        }
    }
}

TEST(CaputoOfLifting, AgreesWithL1Scheme) {
    const KseProblem problem(KseParameters::standard(0.5));
    const auto f = [&](double t) { return problem.data().lifting(0.5, t, 0); };
    EXPECT_NEAR(rkhs::caputo_f(problem, 0.5, 0.5), l1_caputo(f, 0.5, 0.5, 2048), 1e-4);
}

TEST(CaputoOfLifting, SmallNearInitialTime) {
    const KseProblem problem(KseParameters::standard(0.5));
    EXPECT_LE(std::abs(rkhs::caputo_f(problem, 0.5, 1e-4)), 1e-2);
}

TEST(CaputoOfLifting, VanishesForStationaryData) {
    KseParameters p = KseParameters::standard(0.5);
    p.mu = -p.nu;
    const KseProblem problem(p);
    for (double z : {0.2, 0.7}) {
        EXPECT_LE(std::abs(rkhs::caputo_f(problem, z, 0.6)), 1e-14);
    }
}

TEST(LinearOperator, ZeroAndLinearity) {
    const KseProblem problem(KseParameters::standard(0.5));
    const Point p{0.3, 0.4};
    EXPECT_EQ(rkhs::apply_L(problem, FieldBundle{}, p), 0.0);
    std::mt19937_64 rng(8);
    for (int k = 0; k < 10; ++k) {
        const FieldBundle v1 = random_bundle(rng);
        const FieldBundle v2 = random_bundle(rng);
        const double lhs = rkhs::apply_L(problem, 2.0 * v1 + v2, p);
        const double rhs = 2.0 * rkhs::apply_L(problem, v1, p) + rkhs::apply_L(problem, v2, p);
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST(LinearOperator, CoefficientsReproduceOperator) {
    const KseProblem problem(KseParameters::standard(0.5));
    std::mt19937_64 rng(9);
    for (int k = 0; k < 10; ++k) {
        const FieldBundle f = random_bundle(rng);
        const FieldBundle v = random_bundle(rng);
        const auto c = rkhs::linear_coefficients(problem, f);
        const double expanded = v.caputo + c.c0 * v.value + c.c1 * v.d1 + c.c2 * v.d2 + c.c3 * v.d3;
        EXPECT_NEAR(rkhs::apply_L(problem, v, f), expanded, 1e-12);
    }
}

TEST(RightHandSide, ZeroCorrectionIsMinusResidualOfLifting) {
    const KseParameters params = KseParameters::standard(0.75);
    const KseProblem problem(params);
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 10; ++k) {
        const Point p{u(rng), u(rng)};
        FieldBundle f;
        f.value = rkhs::lifting_f(problem, p.zeta, p.tau, 0);
        f.d1 = rkhs::lifting_f(problem, p.zeta, p.tau, 1);
        f.d2 = rkhs::lifting_f(problem, p.zeta, p.tau, 2);
        f.d3 = rkhs::lifting_f(problem, p.zeta, p.tau, 3);
        f.caputo = lifting_caputo_series(params, p.zeta, p.tau);
        EXPECT_NEAR(rkhs::rhs_M(problem, FieldBundle{}, p), -oracle::kse_left_side(params, f), 1e-8);
    }
}

TEST(RightHandSide, RecombinesToEquationResidual) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        KseParameters params = KseParameters::standard(0.5);
        params.beta = 3.0 * u(rng);
        params.gamma = u(rng);
        params.mu = 3.0 * u(rng);
        params.nu = u(rng);
        const KseProblem problem(params);
        const FieldBundle v = random_bundle(rng);
        const FieldBundle f = random_bundle(rng);
        const double forcing = u(rng);
        const double lhs = rkhs::apply_L(problem, v, f) - rkhs::rhs_M(problem, v, f, forcing);
        worst = std::max(worst, std::abs(lhs - (oracle::kse_left_side(params, v + f) - forcing)));
    }
    EXPECT_LE(worst, 1e-9);
}

TEST(RightHandSide, ReferenceCorrectionBalances) {
    for (double alpha : {0.5, 0.75, 0.95}) {
        const KseParameters params = KseParameters::standard(alpha);
        const KseProblem problem(params);
        const rkhs::ReferenceSolution w(problem);
        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        for (int k = 0; k < 20; ++k) {
            const Point p{u(rng), u(rng)};
            const FieldBundle f = rkhs::lifting_bundle(problem, p, true);
            FieldBundle v{w.value(p.zeta, p.tau, 0), w.value(p.zeta, p.tau, 1),
                          w.value(p.zeta, p.tau, 2), w.value(p.zeta, p.tau, 3), 0.0};
            v.caputo = rkhs::caputo_numeric([&](double s) { return w.dtau(p.zeta, s); },
                                            problem.alpha(), p.tau, 1e-10);
            v += (-1.0) * f;
            EXPECT_NEAR(rkhs::apply_L(problem, v, f), rkhs::rhs_M(problem, v, f, 0.0), 5e-6)
                << alpha << " (" << p.zeta << ", " << p.tau << ")";
        }
    }
}

TEST(Residual, ConstantWithoutConvection) {
    KseParameters params = KseParameters::standard(0.5);
    params.gamma = 0.0;
    const KseProblem problem(params);
    struct Constant final : rkhs::SpaceTimeFunction {
        double value(double, double, int d) const override { return d == 0 ? 0.7 : 0.0; }
        double dtau(double, double) const override { return 0.0; }
    } c;
    EXPECT_EQ(rkhs::residual(problem, c, {0.4, 0.6}), 0.0);
    EXPECT_THROW(rkhs::residual(problem, c, {0.4, 0.0}), rkhs::DomainError);
}

TEST(ManufacturedData, ExactSolutionHasZeroResidual) {
    KseParameters params = KseParameters::standard(0.5);
    params.gamma = 0.0;
    params.mu = 0.0;
    params.beta = -1.0;
    const auto data = std::make_shared<rkhs::ManufacturedData>(params, 0.05);
    const KseProblem problem(params, data);
    const rkhs::ReferenceSolution w(problem);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 10; ++k) {
        const Point p{u(rng), u(rng)};
        EXPECT_NEAR(rkhs::residual(problem, w, p, 1e-11), data->forcing(p.zeta, p.tau), 1e-9);
        EXPECT_NEAR(rkhs::lifting_f(problem, 0.0, p.tau, 1), w.value(0.0, p.tau, 1), 1e-12);
        EXPECT_NEAR(rkhs::lifting_f(problem, p.zeta, 0.0, 0), w(p.zeta, 0.0), 1e-12);
    }
}

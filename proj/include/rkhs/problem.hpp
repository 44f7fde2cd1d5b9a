#pragma once

#include <memory>
#include <string>

#include "rkhs/fracalc.hpp"

namespace rkhs {

/// Default tolerance for Caputo derivatives of the lifting function.
inline constexpr double kLiftingCaputoTol = 1e-9;

struct Point {
    double zeta = 0.0;
    double tau = 0.0;
};

/// Parameters of the time-fractional Kudryashov-Sinelshchikov equation
///   D^a w + g w w_z + w_zzz - (1+b) w_z w_zz - w w_zzz - nu w_zz - mu w w_zz - mu w_z^2 = 0
/// on [a, b] x [0, T].
struct KseParameters {
    double alpha = 0.5;
    double beta = -4.0;
    double gamma = 0.1;
    double mu = -16.0 / 3.0;
    double nu = 0.75;
    double a = 0.0;
    double b = 1.0;
    double T = 1.0;

    /// beta = -4, gamma = 0.1, nu = 0.75, mu = -16/3 on the unit square.
    static KseParameters standard(double alpha = 0.5);
};

/// Boundary/initial data of a problem instance: the lifting f that carries the
/// data, an optional source term on the right of the equation, and the
/// reference solution used for error reporting.
class ProblemData {
public:
    virtual ~ProblemData() = default;

    virtual std::string name() const = 0;

    /// d^dzeta/dzeta^dzeta f(zeta, tau), dzeta in [0, 3].
    virtual double lifting(double zeta, double tau, int dzeta) const = 0;
    virtual double lifting_dtau(double zeta, double tau) const = 0;
    /// Caputo derivative in tau of f; the default integrates lifting_dtau numerically.
    virtual double lifting_caputo(double zeta, double tau, double tol) const;

    /// Source term F: the equation reads (left side) = F.
    virtual double forcing(double /*zeta*/, double /*tau*/) const { return 0.0; }

    virtual double exact(double zeta, double tau, int dzeta) const = 0;
    virtual double exact_dtau(double zeta, double tau) const = 0;

protected:
    explicit ProblemData(const KseParameters& p) : params_(p), alpha_(p.alpha) {}

    /// Changes of the traces since tau = 0: w(a,.), w(b,.), w_zeta(a,.).
    struct TraceIncrements {
        double value_a = 0.0;
        double value_b = 0.0;
        double slope_a = 0.0;
    };

    /// Quadratic blend in zeta matching value_a, value_b at the ends and
    /// slope_a at zeta = a; derivative order dzeta.
    double blend(double zeta, int dzeta, const TraceIncrements& t) const;

    KseParameters params_;
    FractionalOrder alpha_;
};

class KseProblem {
public:
    /// Problem with the traveling-wave reference solution and its tanh lifting.
    explicit KseProblem(const KseParameters& params);
    KseProblem(const KseParameters& params, std::shared_ptr<const ProblemData> data);

    const KseParameters& parameters() const noexcept { return params_; }
    FractionalOrder alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return params_.beta; }
    double gamma() const noexcept { return params_.gamma; }
    double mu() const noexcept { return params_.mu; }
    double nu() const noexcept { return params_.nu; }
    double a() const noexcept { return params_.a; }
    double b() const noexcept { return params_.b; }
    double T() const noexcept { return params_.T; }

    const ProblemData& data() const noexcept { return *data_; }

    /// -4 + gamma + mu^2, the denominator of the traveling-wave coefficients.
    double denominator() const noexcept;

    bool contains(double zeta, double tau) const noexcept;

private:
    KseParameters params_;
    FractionalOrder alpha_;
    std::shared_ptr<const ProblemData> data_;
};

/// The tanh traveling wave
///   w = P/D - 2(mu+nu)/D tanh(zeta - c tau^a / Gamma(1+a)),  P = -4+gamma-mu nu,
///   D = -4+gamma+mu^2, c = gamma P / D,
/// together with the lifting that blends its boundary and initial traces.
class TravelingWaveData final : public ProblemData {
public:
    explicit TravelingWaveData(const KseParameters& p);

    std::string name() const override { return "traveling-wave"; }
    double lifting(double zeta, double tau, int dzeta) const override;
    double lifting_dtau(double zeta, double tau) const override;
    double exact(double zeta, double tau, int dzeta) const override;
    double exact_dtau(double zeta, double tau) const override;

    double offset() const noexcept { return offset_; }
    double amplitude() const noexcept { return amplitude_; }
    double speed() const noexcept { return speed_; }

private:
    double phase_time(double tau) const;
    double phase_time_dtau(double tau) const;

    double offset_;
    double amplitude_;
    double speed_;
};

/// Polynomial manufactured solution
///   w = 0.2 + 0.1 x + 0.05 x s + A x^2 (1 - x)(s + s^2/2),  x = (zeta-a)/(b-a), s = tau/T,
/// with the source term that makes it exact and the same trace-blending lifting.
class ManufacturedData final : public ProblemData {
public:
    ManufacturedData(const KseParameters& p, double amplitude);

    std::string name() const override { return "manufactured"; }
    double lifting(double zeta, double tau, int dzeta) const override;
    double lifting_dtau(double zeta, double tau) const override;
    double lifting_caputo(double zeta, double tau, double tol) const override;
    double forcing(double zeta, double tau) const override;
    double exact(double zeta, double tau, int dzeta) const override;
    double exact_dtau(double zeta, double tau) const override;

private:
    /// D^a w (dzeta = 0) or its zeta-derivative (dzeta = 1).
    double exact_caputo(double zeta, double tau, int dzeta) const;

    double amplitude_;
};

/// Values of a field and its derivatives at one point. `caputo` is D^a in tau.
struct FieldBundle {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double caputo = 0.0;

    FieldBundle& operator+=(const FieldBundle& o);
    FieldBundle& operator*=(double k);
    friend FieldBundle operator+(FieldBundle x, const FieldBundle& y) { return x += y; }
    friend FieldBundle operator*(double k, FieldBundle x) { return x *= k; }
};

/// Anything evaluable on the domain with spatial derivatives up to order 3 and a
/// first time derivative.
class SpaceTimeFunction {
public:
    virtual ~SpaceTimeFunction() = default;
    virtual double value(double zeta, double tau, int dzeta) const = 0;
    virtual double dtau(double zeta, double tau) const = 0;
};

class ReferenceSolution final : public SpaceTimeFunction {
public:
    explicit ReferenceSolution(const KseProblem& problem) : problem_(problem) {}
    double value(double zeta, double tau, int dzeta) const override;
    double dtau(double zeta, double tau) const override;

    double operator()(double zeta, double tau) const { return value(zeta, tau, 0); }

private:
    KseProblem problem_;
};

double lifting_f(const KseProblem& problem, double zeta, double tau, int dzeta);
double caputo_f(const KseProblem& problem, double zeta, double tau,
                double tol = kLiftingCaputoTol);

/// f and its derivatives at a point; caputo is filled only when requested.
FieldBundle lifting_bundle(const KseProblem& problem, Point p, bool with_caputo,
                           double tol = kLiftingCaputoTol);

/// L v = D^a v + c0 v + c1 v_z + c2 v_zz + c3 v_zzz at a point.
struct LinearCoefficients {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

LinearCoefficients linear_coefficients(const KseProblem& problem, const FieldBundle& f);
LinearCoefficients linear_coefficients(const KseProblem& problem, Point p);

/// The part of the equation linear in v once w = v + f is substituted.
double apply_L(const KseProblem& problem, const FieldBundle& v, const FieldBundle& f);
double apply_L(const KseProblem& problem, const FieldBundle& v, Point p);

/// Everything else, moved to the right: F - (left side at f) - (terms quadratic in v).
/// `f.caputo` must hold D^a f.
double rhs_M(const KseProblem& problem, const FieldBundle& v, const FieldBundle& f,
             double forcing);
double rhs_M(const KseProblem& problem, const FieldBundle& v, Point p,
             double tol = kLiftingCaputoTol);

/// Left side of the equation for a bundle of w (caputo holding D^a w).
double equation_residual(const KseParameters& params, const FieldBundle& w);

/// Left side of the equation for w at a point, D^a w by quadrature.
double residual(const KseProblem& problem, const SpaceTimeFunction& w, Point p,
                double tol = kLiftingCaputoTol);

}  // namespace rkhs

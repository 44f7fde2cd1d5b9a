#include "rkhs/problem.hpp"

#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

void check_dzeta(int dzeta) {
    if (dzeta < 0 || dzeta > 3) {
        throw ContractError("spatial derivative order must lie in [0, 3], got " +
                            std::to_string(dzeta));
    }
}

// d^k/dx^k tanh(x) expressed through t = tanh(x), k <= 3.
double tanh_derivative(double t, int k) {
    const double sech2 = 1.0 - t * t;
    switch (k) {
        case 0: return t;
        case 1: return sech2;
        case 2: return -2.0 * t * sech2;
        default: return sech2 * (6.0 * t * t - 2.0);
    }
}

}  // namespace

KseParameters KseParameters::standard(double alpha) {
    KseParameters p;
    p.alpha = alpha;
    return p;
}

double ProblemData::lifting_caputo(double zeta, double tau, double tol) const {
    return caputo_numeric([&](double s) { return lifting_dtau(zeta, s); }, alpha_, tau, tol);
}

double ProblemData::blend(double zeta, int dzeta, const TraceIncrements& t) const {
    check_dzeta(dzeta);
    const double a = params_.a;
    const double b = params_.b;
    const double len = b - a;
    const double qa[4] = {(b - zeta) * (b - zeta) / (len * len), -2.0 * (b - zeta) / (len * len),
                          2.0 / (len * len), 0.0};
    const double qb[4] = {(zeta - a) * (zeta - a) / (len * len), 2.0 * (zeta - a) / (len * len),
                          2.0 / (len * len), 0.0};
    const double m[4] = {(zeta - a) * (b - zeta) / len, (a + b - 2.0 * zeta) / len, -2.0 / len,
                         0.0};
    // The m term restores the slope at zeta = a.
    return qa[dzeta] * t.value_a + qb[dzeta] * t.value_b +
           m[dzeta] * (t.slope_a + 2.0 * t.value_a / len);
}

// ---------------------------------------------------------------------------

KseProblem::KseProblem(const KseParameters& params)
    : KseProblem(params, nullptr) {}

KseProblem::KseProblem(const KseParameters& params, std::shared_ptr<const ProblemData> data)
    : params_(params), alpha_(params.alpha), data_(std::move(data)) {
    if (!(params.a < params.b)) {
        throw DomainError("spatial interval needs a < b");
    }
    if (!(params.T > 0.0)) {
        throw DomainError("time horizon needs T > 0");
    }
    if (std::abs(denominator()) < 1e-14) {
        throw DomainError("-4 + gamma + mu^2 vanishes; the traveling-wave data are undefined");
    }
    if (!data_) {
        data_ = std::make_shared<TravelingWaveData>(params);
    }
}

double KseProblem::denominator() const noexcept {
    return -4.0 + params_.gamma + params_.mu * params_.mu;
}

bool KseProblem::contains(double zeta, double tau) const noexcept {
    return zeta >= params_.a && zeta <= params_.b && tau >= 0.0 && tau <= params_.T;
}

// ---------------------------------------------------------------------------

TravelingWaveData::TravelingWaveData(const KseParameters& p) : ProblemData(p) {
    const double den = -4.0 + p.gamma + p.mu * p.mu;
    if (std::abs(den) < 1e-14) {
        throw DomainError("-4 + gamma + mu^2 vanishes");
    }
    const double numer = -4.0 + p.gamma - p.mu * p.nu;
    offset_ = numer / den;
    amplitude_ = -2.0 * (p.mu + p.nu) / den;
    speed_ = p.gamma * numer / den;
}

double TravelingWaveData::phase_time(double tau) const {
    return std::pow(tau, alpha_.value()) / gamma_fn(alpha_.value() + 1.0);
}

double TravelingWaveData::phase_time_dtau(double tau) const {
    const double a = alpha_.value();
    return std::pow(tau, a - 1.0) / gamma_fn(a);
}

double TravelingWaveData::exact(double zeta, double tau, int dzeta) const {
    check_dzeta(dzeta);
    const double t = std::tanh(zeta - speed_ * phase_time(tau));
    return (dzeta == 0 ? offset_ : 0.0) + amplitude_ * tanh_derivative(t, dzeta);
}

double TravelingWaveData::exact_dtau(double zeta, double tau) const {
    const double t = std::tanh(zeta - speed_ * phase_time(tau));
    return -amplitude_ * tanh_derivative(t, 1) * speed_ * phase_time_dtau(tau);
}

double TravelingWaveData::lifting(double zeta, double tau, int dzeta) const {
    const double a = params_.a;
    const double b = params_.b;
    return exact(zeta, 0.0, dzeta) +
           blend(zeta, dzeta,
                 {exact(a, tau, 0) - exact(a, 0.0, 0), exact(b, tau, 0) - exact(b, 0.0, 0),
                  exact(a, tau, 1) - exact(a, 0.0, 1)});
}

double TravelingWaveData::lifting_dtau(double zeta, double tau) const {
    const double a = params_.a;
    const double t = std::tanh(a - speed_ * phase_time(tau));
    const double wa_ztau = -amplitude_ * tanh_derivative(t, 2) * speed_ * phase_time_dtau(tau);
    return blend(zeta, 0, {exact_dtau(a, tau), exact_dtau(params_.b, tau), wa_ztau});
}

// ---------------------------------------------------------------------------

ManufacturedData::ManufacturedData(const KseParameters& p, double amplitude)
    : ProblemData(p), amplitude_(amplitude) {}

double ManufacturedData::exact(double zeta, double tau, int dzeta) const {
    check_dzeta(dzeta);
    const double len = params_.b - params_.a;
    const double x = (zeta - params_.a) / len;
    const double s = tau / params_.T;
    const double g = s + 0.5 * s * s;
    switch (dzeta) {
        case 0: return 0.2 + 0.1 * x + 0.05 * x * s + amplitude_ * x * x * (1.0 - x) * g;
        case 1: return (0.1 + 0.05 * s + amplitude_ * (2.0 * x - 3.0 * x * x) * g) / len;
        case 2: return amplitude_ * (2.0 - 6.0 * x) * g / (len * len);
        default: return -6.0 * amplitude_ * g / (len * len * len);
    }
}

double ManufacturedData::exact_dtau(double zeta, double tau) const {
    const double x = (zeta - params_.a) / (params_.b - params_.a);
    const double s = tau / params_.T;
    return (0.05 * x + amplitude_ * x * x * (1.0 - x) * (1.0 + s)) / params_.T;
}

double ManufacturedData::exact_caputo(double zeta, double tau, int dzeta) const {
    const double len = params_.b - params_.a;
    const double x = (zeta - params_.a) / len;
    const double s = tau / params_.T;
    const double scale = std::pow(params_.T, -alpha_.value());
    const double d1 = caputo_monomial(1, alpha_, s);
    const double d2 = caputo_monomial(2, alpha_, s);
    if (dzeta == 1) {
        return scale * (0.05 * d1 + amplitude_ * (2.0 * x - 3.0 * x * x) * (d1 + 0.5 * d2)) / len;
    }
    return scale * (0.05 * x * d1 + amplitude_ * x * x * (1.0 - x) * (d1 + 0.5 * d2));
}

double ManufacturedData::lifting(double zeta, double tau, int dzeta) const {
    const double a = params_.a;
    const double b = params_.b;
    return exact(zeta, 0.0, dzeta) +
           blend(zeta, dzeta,
                 {exact(a, tau, 0) - exact(a, 0.0, 0), exact(b, tau, 0) - exact(b, 0.0, 0),
                  exact(a, tau, 1) - exact(a, 0.0, 1)});
}

double ManufacturedData::lifting_dtau(double zeta, double tau) const {
    const double a = params_.a;
    const double len = params_.b - a;
    const double wa_ztau = 0.05 / (len * params_.T);
    return blend(zeta, 0, {exact_dtau(a, tau), exact_dtau(params_.b, tau), wa_ztau});
}

double ManufacturedData::lifting_caputo(double zeta, double tau, double /*tol*/) const {
    const double a = params_.a;
    return blend(zeta, 0,
                 {exact_caputo(a, tau, 0), exact_caputo(params_.b, tau, 0), exact_caputo(a, tau, 1)});
}

double ManufacturedData::forcing(double zeta, double tau) const {
    FieldBundle w{exact(zeta, tau, 0), exact(zeta, tau, 1), exact(zeta, tau, 2),
                  exact(zeta, tau, 3), exact_caputo(zeta, tau, 0)};
    return equation_residual(params_, w);
}

// ---------------------------------------------------------------------------

FieldBundle& FieldBundle::operator+=(const FieldBundle& o) {
    value += o.value;
    d1 += o.d1;
    d2 += o.d2;
    d3 += o.d3;
    caputo += o.caputo;
    return *this;
}

FieldBundle& FieldBundle::operator*=(double k) {
    value *= k;
    d1 *= k;
    d2 *= k;
    d3 *= k;
    caputo *= k;
    return *this;
}

double ReferenceSolution::value(double zeta, double tau, int dzeta) const {
    return problem_.data().exact(zeta, tau, dzeta);
}

double ReferenceSolution::dtau(double zeta, double tau) const {
    return problem_.data().exact_dtau(zeta, tau);
}

double lifting_f(const KseProblem& problem, double zeta, double tau, int dzeta) {
    check_dzeta(dzeta);
    if (!problem.contains(zeta, tau)) {
        throw DomainError("lifting_f: point outside the problem domain");
    }
    return problem.data().lifting(zeta, tau, dzeta);
}

double caputo_f(const KseProblem& problem, double zeta, double tau, double tol) {
    if (!(tau > 0.0 && tau <= problem.T())) {
        throw DomainError("caputo_f needs tau in (0, T]");
    }
    return problem.data().lifting_caputo(zeta, tau, tol);
}

FieldBundle lifting_bundle(const KseProblem& problem, Point p, bool with_caputo, double tol) {
    const auto& d = problem.data();
    FieldBundle f{d.lifting(p.zeta, p.tau, 0), d.lifting(p.zeta, p.tau, 1),
                  d.lifting(p.zeta, p.tau, 2), d.lifting(p.zeta, p.tau, 3), 0.0};
    if (with_caputo && p.tau > 0.0) {
        f.caputo = d.lifting_caputo(p.zeta, p.tau, tol);
    }
    return f;
}

LinearCoefficients linear_coefficients(const KseProblem& problem, const FieldBundle& f) {
    const double g = problem.gamma();
    const double bp = 1.0 + problem.beta();
    const double mu = problem.mu();
    return {g * f.d1 - f.d3 - mu * f.d2,
            g * f.value - bp * f.d2 - 2.0 * mu * f.d1,
            -bp * f.d1 - problem.nu() - mu * f.value,
            1.0 - f.value};
}

LinearCoefficients linear_coefficients(const KseProblem& problem, Point p) {
    return linear_coefficients(problem, lifting_bundle(problem, p, false));
}

double apply_L(const KseProblem& problem, const FieldBundle& v, const FieldBundle& f) {
    const double g = problem.gamma();
    const double bp = 1.0 + problem.beta();
    const double mu = problem.mu();
    const double nu = problem.nu();
    return v.caputo + g * (v.value * f.d1 + f.value * v.d1) + v.d3 -
           bp * (v.d1 * f.d2 + f.d1 * v.d2) - (v.value * f.d3 + f.value * v.d3) - nu * v.d2 -
           mu * (v.value * f.d2 + f.value * v.d2) - 2.0 * mu * v.d1 * f.d1;
}

double apply_L(const KseProblem& problem, const FieldBundle& v, Point p) {
    return apply_L(problem, v, lifting_bundle(problem, p, false));
}

double rhs_M(const KseProblem& problem, const FieldBundle& v, const FieldBundle& f,
             double forcing) {
    const double g = problem.gamma();
    const double bp = 1.0 + problem.beta();
    const double mu = problem.mu();
    const double nu = problem.nu();
    const double lifting_terms = f.caputo + g * f.value * f.d1 + f.d3 - bp * f.d1 * f.d2 -
                                 f.value * f.d3 - nu * f.d2 - mu * f.value * f.d2 -
                                 mu * f.d1 * f.d1;
    const double quadratic_terms = g * v.value * v.d1 - bp * v.d1 * v.d2 - v.value * v.d3 -
                                   mu * v.value * v.d2 - mu * v.d1 * v.d1;
    return forcing - lifting_terms - quadratic_terms;
}

double rhs_M(const KseProblem& problem, const FieldBundle& v, Point p, double tol) {
    return rhs_M(problem, v, lifting_bundle(problem, p, true, tol),
                 problem.data().forcing(p.zeta, p.tau));
}

double equation_residual(const KseParameters& params, const FieldBundle& w) {
    return w.caputo + params.gamma * w.value * w.d1 + w.d3 - (1.0 + params.beta) * w.d1 * w.d2 -
           w.value * w.d3 - params.nu * w.d2 - params.mu * w.value * w.d2 -
           params.mu * w.d1 * w.d1;
}

double residual(const KseProblem& problem, const SpaceTimeFunction& w, Point p, double tol) {
    if (!(p.tau > 0.0) || !problem.contains(p.zeta, p.tau)) {
        throw DomainError("residual needs an interior point with tau > 0");
    }
    FieldBundle b{w.value(p.zeta, p.tau, 0), w.value(p.zeta, p.tau, 1),
                  w.value(p.zeta, p.tau, 2), w.value(p.zeta, p.tau, 3), 0.0};
    b.caputo = caputo_numeric([&](double s) { return w.dtau(p.zeta, s); }, problem.alpha(), p.tau,
                              tol);
    return equation_residual(problem.parameters(), b);
}

}  // namespace rkhs

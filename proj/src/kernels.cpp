#include "rkhs/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + " argument " + std::to_string(x) +
                          " outside [0, 1]");
    }
}

// d^k/dx^k x^q at x, exact.
Rational monomial_derivative(int q, int k, const Rational& x) {
    if (k > q) {
        return Rational(0);
    }
    Rational factor(1);
    for (int j = 0; j < k; ++j) {
        factor *= (q - j);
    }
    Rational power(1);
    for (int j = 0; j < q - k; ++j) {
        power *= x;
    }
    return factor * power;
}

std::vector<Rational> solve_exact(RationalMatrix a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw ConstructionError("kernel boundary-value system is singular");
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) {
                continue;
            }
            const Rational factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            acc -= a[i][k] * x[k];
        }
        x[i] = acc / a[i][i];
    }
    return x;
}

// Left-piece (s <= y) coefficients, monomials about 0, of the unconstrained
// W_2^r kernel section at y. Unknowns: left piece then right piece.
std::vector<Rational> unconstrained_left_piece(int r, const Rational& y) {
    const int m = 2 * r;
    const auto n = static_cast<std::size_t>(2 * m);
    RationalMatrix a(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> rhs(n, Rational(0));
    std::size_t row = 0;
    const Rational zero(0);
    const Rational one(1);

    // C^(2r-2) continuity across s = y.
    for (int k = 0; k <= m - 2; ++k, ++row) {
        for (int q = 0; q < m; ++q) {
            const Rational d = monomial_derivative(q, k, y);
            a[row][static_cast<std::size_t>(q)] = d;
            a[row][static_cast<std::size_t>(m + q)] = -d;
        }
    }
    // Jump of the (2r-1)-th derivative: right minus left equals (-1)^r.
    for (int q = 0; q < m; ++q) {
        const Rational d = monomial_derivative(q, m - 1, y);
        a[row][static_cast<std::size_t>(q)] = -d;
        a[row][static_cast<std::size_t>(m + q)] = d;
    }
    rhs[row] = (r % 2 == 0) ? one : -one;
    ++row;
    // Natural conditions at s = 1: R^(k)(1) = 0 for k = r .. 2r-1.
    for (int k = r; k <= m - 1; ++k, ++row) {
        for (int q = 0; q < m; ++q) {
            a[row][static_cast<std::size_t>(m + q)] = monomial_derivative(q, k, one);
        }
    }
    // Conditions at s = 0 from the point terms of the inner product:
    // R^(i)(0) - (-1)^(r-1-i) R^(2r-1-i)(0) = 0.
    for (int i = 0; i <= r - 1; ++i, ++row) {
        const int sign = ((r - 1 - i) % 2 == 0) ? 1 : -1;
        for (int q = 0; q < m; ++q) {
            a[row][static_cast<std::size_t>(q)] =
                monomial_derivative(q, i, zero) - sign * monomial_derivative(q, m - 1 - i, zero);
        }
    }
    auto solution = solve_exact(std::move(a), std::move(rhs));
    solution.resize(static_cast<std::size_t>(m));
    return solution;
}

// Exact Taylor shift of sum c_k (s - from)^k to powers of (s - to).
std::vector<Rational> shift_exact(std::vector<Rational> c, const Rational& h) {
    const auto n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t k = n - 1; k > i; --k) {
            c[k - 1] += h * c[k];
        }
    }
    return c;
}

// Tiny polynomial algebra for closed-form kernel expressions.
struct Poly2 {
    std::vector<std::vector<double>> c;  // c[p][q] y^p s^q

    static Poly2 constant(double v) { return Poly2{{{v}}}; }
    static Poly2 y() { return Poly2{{{0.0}, {1.0}}}; }
    static Poly2 s() { return Poly2{{{0.0, 1.0}}}; }

    double get(std::size_t p, std::size_t q) const {
        return (p < c.size() && q < c[p].size()) ? c[p][q] : 0.0;
    }
    void add(std::size_t p, std::size_t q, double v) {
        if (c.size() <= p) c.resize(p + 1);
        if (c[p].size() <= q) c[p].resize(q + 1, 0.0);
        c[p][q] += v;
    }
    std::size_t deg_y() const { return c.size() - 1; }
    std::size_t deg_s() const {
        std::size_t d = 0;
        for (const auto& row : c) d = std::max(d, row.size());
        return d - 1;
    }
    Bivariate to_bivariate() const {
        Bivariate out(deg_y(), deg_s());
        for (std::size_t p = 0; p < c.size(); ++p)
            for (std::size_t q = 0; q < c[p].size(); ++q) out.at(p, q) = c[p][q];
        return out;
    }
};

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (std::size_t p = 0; p < b.c.size(); ++p)
        for (std::size_t q = 0; q < b.c[p].size(); ++q) out.add(p, q, b.c[p][q]);
    return out;
}
Poly2 operator*(double k, const Poly2& a) {
    Poly2 out = a;
    for (auto& row : out.c)
        for (auto& v : row) v *= k;
    return out;
}
Poly2 operator+(double k, const Poly2& a) { return Poly2::constant(k) + a; }
Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out = Poly2::constant(0.0);
    for (std::size_t p = 0; p < a.c.size(); ++p)
        for (std::size_t q = 0; q < a.c[p].size(); ++q)
            for (std::size_t i = 0; i < b.c.size(); ++i)
                for (std::size_t j = 0; j < b.c[i].size(); ++j)
                    out.add(p + i, q + j, a.c[p][q] * b.c[i][j]);
    return out;
}
Poly2 pow(const Poly2& a, int k) {
    Poly2 out = Poly2::constant(1.0);
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

// One branch of the order-4 candidate formula with `s` the evaluation variable and
// `y` the kernel parameter (the other branch swaps the roles).
Poly2 candidate_order4_branch(const Poly2& s, const Poly2& y) {
    const Poly2 inner_a = -20.0 + y * (15.0 + (-6.0 + y) * y);  // -20 + y(15 + (-6+y)y)
    const Poly2 t1 = (-343.0 / 133589564928000.0) * (pow(s, 18) * pow(y, 2));
    const Poly2 t2 = (1.0 / 5680.0) * (pow(s, 2) * (-1.0 + y) * pow(y, 2) * (-160.0 + y * inner_a));
    const Poly2 t3 =
        (-1.0 / 340800.0) * (pow(s, 5) * (-1.0 + y) * pow(y, 2) * (1260.0 + y * inner_a));
    const Poly2 t4 = (1.0 / 51120.0) * (pow(s, 2) * (-1.0 + y) * pow(y, 2) * (1260.0 + y * inner_a));
    const Poly2 t5 =
        (1.0 / 204480.0) * (pow(s, 4) * (-1.0 + y) * pow(y, 2) * (1260.0 + y * inner_a));
    const Poly2 inner_b = -35.0 + y * (21.0 + (-7.0 + y) * y);
    const Poly2 t6 = (1.0 / 1022400.0) *
                     (pow(s, 6) * y * (1420.0 + y * (-1260.0 + y * (-1260.0 + pow(y, 2) * inner_b))));
    const Poly2 t7 = (-1.0 / 7156800.0) *
                     (pow(s, 7) * (1420.0 + pow(y, 2) * (-1260.0 + y * (-140.0 + y * inner_b))));
    return t1 + t2 + t3 + t4 + t5 + t6 + t7;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

Bivariate::Bivariate(std::size_t degree_y, std::size_t degree_s, double y0, double s0)
    : rows_(degree_y + 1), cols_(degree_s + 1), y0_(y0), s0_(s0), c_(rows_ * cols_, 0.0) {}

std::vector<double> Bivariate::coefficients_in_s(double y, int dy) const {
    std::vector<double> out(cols_, 0.0);
    std::vector<double> column(rows_);
    for (std::size_t q = 0; q < cols_; ++q) {
        for (std::size_t p = 0; p < rows_; ++p) {
            column[p] = at(p, q);
        }
        out[q] = polynomial_value(column, y - y0_, dy);
    }
    return out;
}

double Bivariate::operator()(double y, double s, int dy, int ds) const {
    return polynomial_value(coefficients_in_s(y, dy), s - s0_, ds);
}

// ---------------------------------------------------------------------------
// KernelFamily
// ---------------------------------------------------------------------------

const char* source_name(KernelSource source) noexcept {
    return source == KernelSource::closed_form ? "closed-form" : "reconstructed";
}

KernelFamily::KernelFamily(int order, Bivariate below, Bivariate above, KernelSource source,
                           std::vector<PointConstraint> constraints)
    : order_(order),
      below_(std::move(below)),
      above_(std::move(above)),
      source_(source),
      constraints_(std::move(constraints)) {}

double KernelFamily::eval(double y, double s, int dy, int ds) const {
    check_unit(y, "kernel");
    check_unit(s, "kernel");
    return (s <= y) ? below_(y, s, dy, ds) : above_(y, s, dy, ds);
}

PiecewisePolynomial KernelFamily::section(double y, int dy) const {
    check_unit(y, "kernel section");
    auto left = [&] {
        return taylor_shift(below_.coefficients_in_s(y, dy), below_.s_center(), 0.0);
    };
    auto right = [&] {
        return taylor_shift(above_.coefficients_in_s(y, dy), above_.s_center(), y);
    };
    if (y <= 0.0) {
        return PiecewisePolynomial({0.0, 1.0}, {right()});
    }
    if (y >= 1.0) {
        return PiecewisePolynomial({0.0, 1.0}, {left()});
    }
    return PiecewisePolynomial({0.0, y, 1.0}, {left(), right()});
}

// ---------------------------------------------------------------------------
// Shipped families
// ---------------------------------------------------------------------------

const KernelFamily& order1_family() {
    static const KernelFamily family = [] {
        Bivariate below(0, 1);  // 1 + s
        below.at(0, 0) = 1.0;
        below.at(0, 1) = 1.0;
        Bivariate above(1, 0);  // 1 + eta
        above.at(0, 0) = 1.0;
        above.at(1, 0) = 1.0;
        return KernelFamily(1, below, above, KernelSource::closed_form, {});
    }();
    return family;
}

const KernelFamily& order2_family() {
    static const KernelFamily family = [] {
        Bivariate below(1, 3);  // v s + v s^2/2 - s^3/6
        below.at(1, 1) = 1.0;
        below.at(1, 2) = 0.5;
        below.at(0, 3) = -1.0 / 6.0;
        Bivariate above(3, 1);  // -v^3/6 + s v^2/2 + s v
        above.at(3, 0) = -1.0 / 6.0;
        above.at(2, 1) = 0.5;
        above.at(1, 1) = 1.0;
        return KernelFamily(2, below, above, KernelSource::closed_form, {{0, 0.0}});
    }();
    return family;
}

const KernelFamily& order4_closed_form_candidate() {
    static const KernelFamily family = [] {
        const Poly2 s = Poly2::s();
        const Poly2 y = Poly2::y();
        const Poly2 below = candidate_order4_branch(s, y);
        // Second branch: same expression with s and y exchanged.
        const Poly2 above = candidate_order4_branch(y, s);
        return KernelFamily(4, below.to_bivariate(), above.to_bivariate(),
                            KernelSource::closed_form, {{0, 0.0}, {0, 1.0}});
    }();
    return family;
}

const KernelFamily& order4_family() {
    // h(0) = h'(0) = h(1) = 0: the homogenized unknown inherits all three
    // spatial traces carried by the lifting.
    static const KernelFamily family = reconstruct_kernel(4, order4_constraints());
    return family;
}

std::vector<PointConstraint> order4_constraints() { return {{0, 0.0}, {1, 0.0}, {0, 1.0}}; }

double rk1(double eta, double s) { return order1_family()(eta, s); }
double rk2(double v, double zeta) { return order2_family()(v, zeta); }
double rk4(double y, double s) { return order4_family()(y, s); }

double rk_deriv(const KernelFamily& family, double y, double s, int order) {
    const int limit = family.order() == 4 ? 3 : family.order() == 2 ? 1 : 0;
    if (order < 0 || order > limit) {
        throw ContractError("rk_deriv: order " + std::to_string(order) +
                            " unsupported for the order-" + std::to_string(family.order()) +
                            " kernel");
    }
    return family.eval(y, s, 0, order);
}

double rk2_double_caputo(double u, double s, FractionalOrder alpha) {
    if (!(u >= 0.0 && u <= 1.0 && s >= 0.0 && s <= 1.0)) {
        throw DomainError("rk2_double_caputo: arguments must lie in [0, 1]");
    }
    if (alpha.is_classical()) {
        return 1.0 + std::min(u, s);
    }
    const double p = 1.0 - alpha.value();
    const double lo = std::min(u, s);
    const double gap = std::max(u, s) - lo;
    // int_0^lo (u - r)^p (s - r)^p dr, written in x = lo - r.
    double tail = 0.0;
    if (lo > 0.0) {
        if (gap == 0.0) {
            tail = std::pow(lo, 2.0 * p + 1.0) / (2.0 * p + 1.0);
        } else {
            boost::math::quadrature::tanh_sinh<double> integrator;
            tail = integrator.integrate(
                [p, gap](double x) { return std::pow(x, p) * std::pow(gap + x, p); }, 0.0, lo);
        }
    }
    const double g = std::tgamma(1.0 + p);
    return (std::pow(u, p) * std::pow(s, p) + tail) / (g * g);
}

// ---------------------------------------------------------------------------
// Reconstruction
// ---------------------------------------------------------------------------

KernelFamily reconstruct_kernel(int r, const std::vector<PointConstraint>& constraints) {
    if (r != 2 && r != 4) {
        throw ContractError("reconstruct_kernel supports r in {2, 4}, got " + std::to_string(r));
    }
    for (const auto& c : constraints) {
        if (c.point != 0.0 && c.point != 1.0) {
            throw ConstructionError("constraint points must be 0 or 1");
        }
        if (c.derivative < 0 || c.derivative >= r) {
            throw ConstructionError("constraint derivative order must lie in [0, r)");
        }
    }
    const int m = 2 * r;
    const auto mu = static_cast<std::size_t>(m);

    // The below-branch P(y, s) has degree 2r-1 in each variable; recover its
    // y-dependence by interpolating exact sections at 2r rational nodes.
    std::vector<Rational> nodes;
    RationalMatrix samples;  // samples[node][q]
    for (int k = 0; k < m; ++k) {
        nodes.emplace_back(k + 1, m + 1);
        samples.push_back(unconstrained_left_piece(r, nodes.back()));
    }
    RationalMatrix vandermonde(mu, std::vector<Rational>(mu));
    for (std::size_t k = 0; k < mu; ++k) {
        Rational power(1);
        for (std::size_t p = 0; p < mu; ++p) {
            vandermonde[k][p] = power;
            power *= nodes[k];
        }
    }
    RationalMatrix below(mu, std::vector<Rational>(mu));  // below[p][q]
    for (std::size_t q = 0; q < mu; ++q) {
        std::vector<Rational> rhs(mu);
        for (std::size_t k = 0; k < mu; ++k) rhs[k] = samples[k][q];
        const auto col = solve_exact(vandermonde, rhs);
        for (std::size_t p = 0; p < mu; ++p) below[p][q] = col[p];
    }

    // Representers of the constraint functionals, as polynomials in s.
    auto factorial = [](int k) {
        Rational f(1);
        for (int j = 2; j <= k; ++j) f *= j;
        return f;
    };
    std::vector<std::vector<Rational>> reps;
    for (const auto& c : constraints) {
        std::vector<Rational> phi(mu, Rational(0));
        if (c.point == 1.0) {
            // s <= y = 1: below branch, d^k/dy^k at y = 1.
            for (std::size_t q = 0; q < mu; ++q)
                for (std::size_t p = 0; p < mu; ++p)
                    phi[q] += below[p][q] * monomial_derivative(static_cast<int>(p), c.derivative,
                                                                Rational(1));
        } else {
            // s >= y = 0: R(y, s) = P(s, y), d^k/dy^k at y = 0.
            for (std::size_t p = 0; p < mu; ++p)
                phi[p] = below[p][static_cast<std::size_t>(c.derivative)] * factorial(c.derivative);
        }
        reps.push_back(std::move(phi));
    }
    const std::size_t nc = constraints.size();
    if (nc > 0) {
        RationalMatrix gram(nc, std::vector<Rational>(nc));
        for (std::size_t j = 0; j < nc; ++j)
            for (std::size_t l = 0; l < nc; ++l) {
                Rational acc(0);
                for (std::size_t q = 0; q < mu; ++q)
                    acc += reps[l][q] * monomial_derivative(static_cast<int>(q),
                                                            constraints[j].derivative,
                                                            Rational(constraints[j].point == 1.0 ? 1 : 0));
                gram[j][l] = acc;
            }
        // P0 = P - sum_{jl} phi_j(y) Ginv_jl phi_l(s)
        for (std::size_t l = 0; l < nc; ++l) {
            std::vector<Rational> unit(nc, Rational(0));
            unit[l] = 1;
            const auto ginv_col = solve_exact(gram, unit);  // column l of Ginv
            for (std::size_t j = 0; j < nc; ++j) {
                if (ginv_col[j] == 0) continue;
                for (std::size_t p = 0; p < mu; ++p)
                    for (std::size_t q = 0; q < mu; ++q)
                        below[p][q] -= reps[j][p] * ginv_col[j] * reps[l][q];
            }
        }
    }

    // above(y, s) = below(s, y), re-centered at s = 1 so the right end is exact.
    Bivariate below_d(mu - 1, mu - 1);
    Bivariate above_d(mu - 1, mu - 1, 0.0, 1.0);
    for (std::size_t p = 0; p < mu; ++p) {
        std::vector<Rational> in_s(mu);
        for (std::size_t q = 0; q < mu; ++q) {
            below_d.at(p, q) = below[p][q].convert_to<double>();
            in_s[q] = below[q][p];  // coefficient of y^p s^q in the transposed branch
        }
        const auto shifted = shift_exact(std::move(in_s), Rational(1));
        for (std::size_t q = 0; q < mu; ++q) above_d.at(p, q) = shifted[q].convert_to<double>();
    }
    return KernelFamily(r, below_d, above_d, KernelSource::reconstructed, constraints);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

bool KernelReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const KernelCheck* KernelReport::find(const std::string& name) const noexcept {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

KernelReport verify_kernel(const KernelFamily& family, unsigned seed) {
    const int r = family.order();
    const int m = 2 * r;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.02, 0.98);

    KernelReport report;
    report.order = r;
    report.source = family.source();

    // Admissible test functions: null space of the constraints among monomials
    // of degree <= 2r-1.
    const auto& cons = family.constraints();
    Eigen::MatrixXd a(static_cast<Eigen::Index>(std::max<std::size_t>(cons.size(), 1)), m);
    a.setZero();
    for (std::size_t j = 0; j < cons.size(); ++j)
        for (int q = 0; q < m; ++q) {
            std::vector<double> mono(static_cast<std::size_t>(q + 1), 0.0);
            mono.back() = 1.0;
            a(static_cast<Eigen::Index>(j), q) =
                polynomial_value(mono, cons[j].point, cons[j].derivative);
        }
    const Eigen::MatrixXd tests = Eigen::FullPivLU<Eigen::MatrixXd>(a).kernel();

    using Gauss = boost::math::quadrature::gauss<double, 20>;
    double worst_repro = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double y = unit(rng);
        for (Eigen::Index t = 0; t < tests.cols(); ++t) {
            std::vector<double> h(static_cast<std::size_t>(m));
            for (int q = 0; q < m; ++q) h[static_cast<std::size_t>(q)] = tests(q, t);
            double inner = 0.0;
            for (int i = 0; i < r; ++i) {
                inner += polynomial_value(h, 0.0, i) * family.eval(y, 0.0, 0, i);
            }
            auto integrand = [&](double s) {
                return polynomial_value(h, s, r) * family.eval(y, s, 0, r);
            };
            inner += Gauss::integrate(integrand, 0.0, y) + Gauss::integrate(integrand, y, 1.0);
            worst_repro = std::max(worst_repro, std::abs(inner - polynomial_value(h, y)));
        }
    }
    report.checks.push_back({"reproducing", worst_repro <= 1e-7, worst_repro, 1e-7});

    double worst_sym = 0.0;
    std::uniform_real_distribution<double> closed(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double y = closed(rng);
        const double s = closed(rng);
        worst_sym = std::max(worst_sym, std::abs(family(y, s) - family(s, y)));
    }
    report.checks.push_back({"symmetry", worst_sym <= 1e-10, worst_sym, 1e-10});

    double worst_bnd = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double y = closed(rng);
        for (const auto& c : cons) {
            worst_bnd = std::max(worst_bnd, std::abs(family.eval(y, c.point, 0, c.derivative)));
        }
    }
    report.checks.push_back({"boundary", worst_bnd == 0.0, worst_bnd, 0.0});

    Eigen::MatrixXd gram(8, 8);
    std::array<double, 8> pts{};
    for (auto& p : pts) p = closed(rng);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            gram(i, j) = family(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    const Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().minCoeff();
    report.checks.push_back({"psd", min_eig >= -1e-10, min_eig, -1e-10});

    return report;
}

TensorKernel trial_kernel() { return TensorKernel(order4_family(), order2_family()); }
TensorKernel test_kernel() { return TensorKernel(order1_family(), order1_family()); }

}  // namespace rkhs

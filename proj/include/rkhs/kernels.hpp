#pragma once

#include <string>
#include <vector>

#include "rkhs/fracalc.hpp"
#include "rkhs/piecewise.hpp"

namespace rkhs {

/// Dense bivariate polynomial sum_{p,q} c(p,q) (y - y0)^p (s - s0)^q.
class Bivariate {
public:
    Bivariate() = default;
    Bivariate(std::size_t degree_y, std::size_t degree_s, double y0 = 0.0, double s0 = 0.0);

    std::size_t degree_y() const noexcept { return rows_ - 1; }
    std::size_t degree_s() const noexcept { return cols_ - 1; }
    double y_center() const noexcept { return y0_; }
    double s_center() const noexcept { return s0_; }

    double& at(std::size_t p, std::size_t q) { return c_[p * cols_ + q]; }
    double at(std::size_t p, std::size_t q) const { return c_[p * cols_ + q]; }

    double operator()(double y, double s, int dy = 0, int ds = 0) const;

    /// Coefficients in powers of (s - s0) of d^dy/dy^dy at fixed y.
    std::vector<double> coefficients_in_s(double y, int dy = 0) const;

private:
    std::size_t rows_ = 1;
    std::size_t cols_ = 1;
    double y0_ = 0.0;
    double s0_ = 0.0;
    std::vector<double> c_ = std::vector<double>(1, 0.0);
};

enum class KernelSource { closed_form, reconstructed };

const char* source_name(KernelSource source) noexcept;

/// Homogeneous linear point condition h^(derivative)(point) = 0 on [0,1].
struct PointConstraint {
    int derivative = 0;
    double point = 0.0;
};

/// Reproducing kernel R(y, s) of W_2^r[0,1] (inner product
/// sum_{i<r} h^(i)(0) g^(i)(0) + int h^(r) g^(r)) restricted by point
/// constraints. Stored as two polynomial branches: `below` for s <= y and
/// `above` for s > y.
class KernelFamily {
public:
    KernelFamily(int order, Bivariate below, Bivariate above, KernelSource source,
                 std::vector<PointConstraint> constraints);

    int order() const noexcept { return order_; }
    KernelSource source() const noexcept { return source_; }
    const std::vector<PointConstraint>& constraints() const noexcept { return constraints_; }

    /// R(y, s); both arguments must lie in [0, 1].
    double operator()(double y, double s) const { return eval(y, s, 0, 0); }

    /// d^dy/dy^dy d^ds/ds^ds R(y, s) from the branch owning s (s == y reads `below`).
    double eval(double y, double s, int dy, int ds) const;

    /// s -> d^dy/dy^dy R(y, s) as a piecewise polynomial on [0, 1] broken at y.
    PiecewisePolynomial section(double y, int dy = 0) const;

private:
    int order_;
    Bivariate below_;
    Bivariate above_;
    KernelSource source_;
    std::vector<PointConstraint> constraints_;
};

/// Kernel of W_2^1[0,1]: 1 + min(eta, s).
double rk1(double eta, double s);
/// Kernel of W_2^2[0,1] with R(0) = 0.
double rk2(double v, double zeta);
/// Kernel of W_2^4[0,1] with R(0) = R'(0) = R(1) = 0.
double rk4(double y, double s);

/// Derivative in s of the family's kernel; order limited by the kernel's smoothness
/// (3 for order 4, 1 for order 2, 0 for order 1).
double rk_deriv(const KernelFamily& family, double y, double s, int order);

/// Caputo derivative of order alpha in both arguments of rk2, at (u, s).
/// Uses d/du d/ds rk2 = 1 + min(u, s), which reduces the double fractional
/// integral to one regular integral.
double rk2_double_caputo(double u, double s, FractionalOrder alpha);

const KernelFamily& order1_family();
const KernelFamily& order2_family();
const KernelFamily& order4_family();
/// h(0) = 0, h'(0) = 0, h(1) = 0.
std::vector<PointConstraint> order4_constraints();

/// A closed-form order-4 candidate for h(0) = h(1) = 0, kept for
/// validation only (it does not pass verify_kernel).
const KernelFamily& order4_closed_form_candidate();

/// Builds the constrained kernel of W_2^r[0,1], r in {2, 4}, from its defining
/// boundary-value problem in exact rational arithmetic. Constraint points must be
/// domain endpoints (0 or 1) and derivative orders below r.
KernelFamily reconstruct_kernel(int r, const std::vector<PointConstraint>& constraints);

struct KernelCheck {
    std::string name;
    bool passed = false;
    double worst = 0.0;     // largest observed deviation (or most negative eigenvalue)
    double tolerance = 0.0;
};

struct KernelReport {
    int order = 0;
    KernelSource source = KernelSource::reconstructed;
    std::vector<KernelCheck> checks;

    bool passed() const noexcept;
    const KernelCheck* find(const std::string& name) const noexcept;
};

/// Reproducing property by Gauss-Legendre quadrature of the inner product,
/// symmetry, exact boundary adaptation and positive semidefiniteness.
KernelReport verify_kernel(const KernelFamily& family, unsigned seed = 20231018u);

/// Product kernel K((z,u),(zeta,tau)) = R_space(z, zeta) R_time(u, tau) on [0,1]^2.
class TensorKernel {
public:
    TensorKernel(const KernelFamily& space, const KernelFamily& time) : space_(&space), time_(&time) {}

    const KernelFamily& space_factor() const noexcept { return *space_; }
    const KernelFamily& time_factor() const noexcept { return *time_; }

    double operator()(double z, double u, double zeta, double tau) const {
        return (*space_)(z, zeta) * (*time_)(u, tau);
    }

private:
    const KernelFamily* space_;
    const KernelFamily* time_;
};

/// K^(4,2): the trial-space kernel.
TensorKernel trial_kernel();
/// S^(1,1): the test-space kernel.
TensorKernel test_kernel();

}  // namespace rkhs

#pragma once

#include <functional>
#include <span>

#include "rkhs/piecewise.hpp"

namespace rkhs {

/// Order of the Caputo derivative, restricted to (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double value() const noexcept { return alpha_; }
    /// alpha == 1: the Caputo derivative is the ordinary first derivative.
    bool is_classical() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

/// Gamma function for x > 0 (relative error well below 1e-13).
double gamma_fn(double x);

/// Caputo derivative of t^k: Gamma(k+1)/Gamma(k+1-alpha) t^(k-alpha), and 0 for k = 0.
double caputo_monomial(int k, FractionalOrder alpha, double t);

/// Exact Caputo derivative of a continuous piecewise polynomial at t, taking the
/// lower end of p's domain as the lower terminal. Each piece reduces to
/// incomplete beta functions in its local (shifted) monomial basis.
double caputo_piecewise(const PiecewisePolynomial& p, FractionalOrder alpha, double t);

/// Caputo derivative (lower terminal 0) of a function given through its first
/// derivative, by double-exponential quadrature with the weight singularity at
/// s = t subtracted analytically. `breaks` lists points in (0, t) where the
/// derivative is not smooth; the integral is split there.
///
/// Throws AccuracyError (with the best estimate) when the estimated absolute
/// error exceeds tol after the refinement budget.
double caputo_numeric(const std::function<double(double)>& derivative, FractionalOrder alpha,
                      double t, double tol, std::span<const double> breaks = {});

}  // namespace rkhs

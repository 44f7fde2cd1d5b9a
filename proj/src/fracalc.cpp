#include "rkhs/fracalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

constexpr int kMaxRefinements = 15;

// Integral over the panel [lo, hi] of d(s) (t - s)^(-alpha); when hi == t the
// constant d(t) is subtracted and integrated in closed form.
struct PanelResult {
    double value = 0.0;
    double error = 0.0;
};

PanelResult integrate_panel(const std::function<double(double)>& derivative, double alpha,
                            double t, double lo, double hi, double tol) {
    boost::math::quadrature::tanh_sinh<double> integrator(kMaxRefinements);
    const bool singular = (hi == t);
    // Left limit at t: the derivative may jump there.
    const double d_t = singular ? derivative(std::nextafter(t, lo)) : 0.0;

    // Abscissae that round onto hi would be claimed by the next piece.
    const double last_inside = std::nextafter(hi, lo);
    auto integrand = [&](double s, double sc) {
        // sc is the signed distance to the nearer endpoint, positive near hi.
        const double dist = (singular && sc > 0.0) ? sc : (t - s);
        if (!(dist > 0.0)) {
            return 0.0;
        }
        const double weight = std::pow(dist, -alpha);
        return (derivative(std::min(s, last_inside)) - d_t) * weight;
    };

    PanelResult out;
    double l1 = 0.0;
    std::size_t levels = 0;
    try {
        out.value = integrator.integrate(integrand, lo, hi, tol, &out.error, &l1, &levels);
        // The estimate lags one level behind; asking for more usually certifies the target.
        double request = tol / std::max(1.0, l1);
        for (int retry = 0; retry < 2 && out.error > tol; ++retry) {
            request *= 1e-2;
            out.value = integrator.integrate(integrand, lo, hi, request, &out.error, &l1, &levels);
        }
    } catch (const std::exception& e) {
        throw AccuracyError(std::string("caputo quadrature failed: ") + e.what(),
                            std::numeric_limits<double>::quiet_NaN(),
                            std::numeric_limits<double>::infinity());
    }
    if (singular) {
        out.value += d_t * std::pow(t - lo, 1.0 - alpha) / (1.0 - alpha);
    }
    return out;
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
    }
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma_fn requires x > 0, got " + std::to_string(x));
    }
    return std::tgamma(x);
}

double caputo_monomial(int k, FractionalOrder alpha, double t) {
    if (k < 0) {
        throw ContractError("caputo_monomial needs k >= 0");
    }
    if (t < 0.0) {
        throw DomainError("caputo_monomial needs t >= 0");
    }
    if (k == 0) {
        return 0.0;
    }
    const double a = alpha.value();
    if (alpha.is_classical()) {
        return static_cast<double>(k) * std::pow(t, k - 1);
    }
    // Gamma ratio through lgamma keeps large k finite.
    const double ratio = std::exp(std::lgamma(k + 1.0) - std::lgamma(k + 1.0 - a));
    return ratio * std::pow(t, k - a);
}

double caputo_piecewise(const PiecewisePolynomial& p, FractionalOrder alpha, double t) {
    const double lo = p.lower();
    if (t < lo || t > p.upper()) {
        throw DomainError("caputo_piecewise: t=" + std::to_string(t) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(p.upper()) + "]");
    }
    if (alpha.is_classical()) {
        return p(t, 1);
    }
    const double a = alpha.value();
    const double b = 1.0 - a;
    const auto& breaks = p.breakpoints();

    double total = 0.0;
    for (std::size_t k = 0; k < p.piece_count(); ++k) {
        const double c = breaks[k];
        if (c >= t) {
            break;
        }
        const double d = std::min(breaks[k + 1], t);
        const double span = t - c;
        const double x = std::min(1.0, (d - c) / span);
        const auto& coeffs = p.piece(k);
        for (std::size_t q = 1; q < coeffs.size(); ++q) {
            if (coeffs[q] == 0.0) {
                continue;
            }
            // int_c^d (s-c)^(q-1) (t-s)^(-a) ds = span^(q-a) B_x(q, 1-a)
            const double qd = static_cast<double>(q);
            const double beta_inc = (x == 1.0) ? boost::math::beta(qd, b)
                                               : boost::math::beta(qd, b, x);
            total += qd * coeffs[q] * std::pow(span, qd - a) * beta_inc;
        }
    }
    return total / gamma_fn(b);
}

double caputo_numeric(const std::function<double(double)>& derivative, FractionalOrder alpha,
                      double t, double tol, std::span<const double> breaks) {
    if (!(tol > 0.0)) {
        throw ContractError("caputo_numeric needs tol > 0");
    }
    if (t < 0.0) {
        throw DomainError("caputo_numeric needs t >= 0");
    }
    if (alpha.is_classical()) {
        return derivative(t);
    }
    if (t == 0.0) {
        return 0.0;
    }
    const double a = alpha.value();

    std::vector<double> nodes{0.0};
    for (double s : breaks) {
        if (s > 0.0 && s < t) {
            nodes.push_back(s);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    nodes.push_back(t);

    const double scale = gamma_fn(1.0 - a);
    const double panel_tol = tol * scale / static_cast<double>(nodes.size() - 1);
    double value = 0.0;
    double error = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const auto r = integrate_panel(derivative, a, t, nodes[k], nodes[k + 1], panel_tol);
        value += r.value;
        error += r.error;
    }
    value /= scale;
    error /= scale;
    if (!std::isfinite(value) || error > tol) {
        throw AccuracyError("caputo_numeric: estimated error " + std::to_string(error) +
                                " exceeds tolerance " + std::to_string(tol),
                            value, error);
    }
    return value;
}

}  // namespace rkhs

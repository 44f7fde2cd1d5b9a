#pragma once

#include <span>
#include <vector>

namespace rkhs {

/// Univariate piecewise polynomial on adjacent intervals [b_k, b_{k+1}].
///
/// Piece k stores coefficients in powers of (s - b_k), i.e. every piece is
/// centered at its own left endpoint. Evaluation at an interior breakpoint
/// uses the piece to its right; the right end of the domain belongs to the
/// last piece. Values are immutable after construction.
class PiecewisePolynomial {
public:
    PiecewisePolynomial(std::vector<double> breakpoints, std::vector<std::vector<double>> pieces);

    /// Single polynomial on [lo, hi] given by monomial coefficients about 0.
    static PiecewisePolynomial from_monomials(std::span<const double> coeffs, double lo, double hi);

    std::size_t piece_count() const noexcept { return pieces_.size(); }
    const std::vector<double>& breakpoints() const noexcept { return breaks_; }
    const std::vector<double>& piece(std::size_t k) const { return pieces_.at(k); }
    double lower() const noexcept { return breaks_.front(); }
    double upper() const noexcept { return breaks_.back(); }

    /// Index of the piece that owns s (clamped to the domain ends).
    std::size_t locate(double s) const noexcept;

    double operator()(double s, int derivative = 0) const;

    PiecewisePolynomial derivative(int order = 1) const;

    /// Same function with additional breakpoints inserted.
    PiecewisePolynomial refined(std::span<const double> extra) const;

    /// Largest |left limit - right limit| of the given derivative over interior breakpoints.
    double max_jump(int derivative = 0) const;

    PiecewisePolynomial& operator*=(double scale);
    friend PiecewisePolynomial operator*(double scale, PiecewisePolynomial p) { return p *= scale; }
    /// Sum over the union of both breakpoint sets; domains must coincide.
    friend PiecewisePolynomial operator+(const PiecewisePolynomial& p, const PiecewisePolynomial& q);

private:
    std::vector<double> breaks_;
    std::vector<std::vector<double>> pieces_;
};

/// Evaluates the `derivative`-th derivative of sum_k c_k x^k.
double polynomial_value(std::span<const double> coeffs, double x, int derivative = 0);

/// Re-expands sum_k c_k (s - from)^k in powers of (s - to).
std::vector<double> taylor_shift(std::span<const double> coeffs, double from, double to);

}  // namespace rkhs

#include "rkhs/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rkhs/errors.hpp"

namespace rkhs {

double polynomial_value(std::span<const double> coeffs, double x, int derivative) {
    if (derivative < 0) {
        throw ContractError("negative derivative order");
    }
    const auto n = static_cast<int>(coeffs.size());
    double acc = 0.0;
    for (int k = n - 1; k >= derivative; --k) {
        double c = coeffs[static_cast<std::size_t>(k)];
        for (int j = 0; j < derivative; ++j) {
            c *= static_cast<double>(k - j);
        }
        acc = acc * x + c;
    }
    return acc;
}

std::vector<double> taylor_shift(std::span<const double> coeffs, double from, double to) {
    // Horner-style synthetic division by (s - to) applied repeatedly.
    std::vector<double> out(coeffs.begin(), coeffs.end());
    const double h = to - from;
    if (h == 0.0) {
        return out;
    }
    const auto n = out.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t k = n - 1; k > i; --k) {
            out[k - 1] += h * out[k];
        }
    }
    return out;
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<std::vector<double>> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (breaks_.size() < 2) {
        throw DomainError("piecewise polynomial needs at least two breakpoints");
    }
    if (pieces_.size() + 1 != breaks_.size()) {
        throw DomainError("piecewise polynomial: " + std::to_string(breaks_.size()) +
                          " breakpoints but " + std::to_string(pieces_.size()) + " pieces");
    }
    for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
        if (!(breaks_[k] < breaks_[k + 1])) {
            throw DomainError("piecewise polynomial breakpoints must be strictly increasing");
        }
    }
    for (auto& p : pieces_) {
        if (p.empty()) {
            p.push_back(0.0);
        }
    }
}

PiecewisePolynomial PiecewisePolynomial::from_monomials(std::span<const double> coeffs, double lo,
                                                        double hi) {
    return PiecewisePolynomial({lo, hi}, {taylor_shift(coeffs, 0.0, lo)});
}

std::size_t PiecewisePolynomial::locate(double s) const noexcept {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    if (it == breaks_.begin()) {
        return 0;
    }
    const auto k = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return std::min(k, pieces_.size() - 1);
}

double PiecewisePolynomial::operator()(double s, int derivative) const {
    const auto k = locate(s);
    return polynomial_value(pieces_[k], s - breaks_[k], derivative);
}

PiecewisePolynomial PiecewisePolynomial::derivative(int order) const {
    auto pieces = pieces_;
    for (int d = 0; d < order; ++d) {
        for (auto& p : pieces) {
            if (p.size() <= 1) {
                p.assign(1, 0.0);
                continue;
            }
            for (std::size_t k = 1; k < p.size(); ++k) {
                p[k - 1] = static_cast<double>(k) * p[k];
            }
            p.pop_back();
        }
    }
    return PiecewisePolynomial(breaks_, std::move(pieces));
}

PiecewisePolynomial PiecewisePolynomial::refined(std::span<const double> extra) const {
    std::vector<double> merged = breaks_;
    for (double e : extra) {
        if (e > lower() && e < upper()) {
            merged.push_back(e);
        }
    }
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

    std::vector<std::vector<double>> pieces;
    pieces.reserve(merged.size() - 1);
    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
        // Midpoint lookup keeps the owning piece unambiguous.
        const auto owner = locate(0.5 * (merged[k] + merged[k + 1]));
        pieces.push_back(taylor_shift(pieces_[owner], breaks_[owner], merged[k]));
    }
    return PiecewisePolynomial(std::move(merged), std::move(pieces));
}

double PiecewisePolynomial::max_jump(int derivative) const {
    double worst = 0.0;
    for (std::size_t k = 1; k < pieces_.size(); ++k) {
        const double h = breaks_[k] - breaks_[k - 1];
        const double left = polynomial_value(pieces_[k - 1], h, derivative);
        const double right = polynomial_value(pieces_[k], 0.0, derivative);
        worst = std::max(worst, std::abs(left - right));
    }
    return worst;
}

PiecewisePolynomial& PiecewisePolynomial::operator*=(double scale) {
    for (auto& p : pieces_) {
        for (auto& c : p) {
            c *= scale;
        }
    }
    return *this;
}

PiecewisePolynomial operator+(const PiecewisePolynomial& p, const PiecewisePolynomial& q) {
    if (p.lower() != q.lower() || p.upper() != q.upper()) {
        throw DomainError("cannot add piecewise polynomials over different domains");
    }
    const auto pr = p.refined(q.breakpoints());
    const auto qr = q.refined(p.breakpoints());
    std::vector<std::vector<double>> pieces;
    pieces.reserve(pr.piece_count());
    for (std::size_t k = 0; k < pr.piece_count(); ++k) {
        const auto& a = pr.piece(k);
        const auto& b = qr.piece(k);
        std::vector<double> sum(std::max(a.size(), b.size()), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) sum[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) sum[i] += b[i];
        pieces.push_back(std::move(sum));
    }
    return PiecewisePolynomial(pr.breakpoints(), std::move(pieces));
}

}  // namespace rkhs

#include "rkhs/basis.hpp"

#include <algorithm>
#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

double radical_inverse(std::size_t index, std::size_t base) {
    double inv = 1.0 / static_cast<double>(base);
    double scale = inv;
    double out = 0.0;
    while (index > 0) {
        out += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv;
    }
    return out;
}

double clamp_unit(double x) {
    // Mapping round-off only; genuine excursions are rejected by the kernels.
    if (x < 0.0 && x > -1e-12) return 0.0;
    if (x > 1.0 && x < 1.0 + 1e-12) return 1.0;
    return x;
}

}  // namespace

const char* scheme_name(CollocationScheme scheme) noexcept {
    return scheme == CollocationScheme::halton ? "halton" : "diagonal";
}

CollocationScheme parse_scheme(const std::string& name) {
    if (name == "diagonal" || name == "diagonal-grid") return CollocationScheme::diagonal_grid;
    if (name == "halton") return CollocationScheme::halton;
    throw DomainError("unknown collocation scheme '" + name + "'");
}

CollocationSet make_collocation(std::size_t n, CollocationScheme scheme,
                                const KseParameters& domain) {
    if (n == 0) {
        throw ContractError("make_collocation needs n >= 1");
    }
    CollocationSet set;
    set.scheme = scheme;
    set.points.reserve(n);
    const double len = domain.b - domain.a;

    if (scheme == CollocationScheme::halton) {
        for (std::size_t k = 1; set.size() < n; ++k) {
            set.points.push_back(
                {domain.a + len * radical_inverse(k, 2), domain.T * radical_inverse(k, 3)});
        }
        return set;
    }

    // Level l: nodes (i, j) / 2^l with 0 < i < 2^l and 0 < j <= 2^l (tau = T is
    // admissible), skipping those of coarser levels, swept by anti-diagonals.
    for (int level = 1; set.size() < n; ++level) {
        const long cells = 1L << level;
        const double h = 1.0 / static_cast<double>(cells);
        for (long diag = 2; diag <= 2 * cells - 1 && set.size() < n; ++diag) {
            for (long i = std::max(1L, diag - cells); i <= std::min(cells - 1, diag - 1); ++i) {
                const long j = diag - i;
                if (level > 1 && i % 2 == 0 && j % 2 == 0) {
                    continue;
                }
                set.points.push_back({domain.a + len * static_cast<double>(i) * h,
                                      domain.T * static_cast<double>(j) * h});
                if (set.size() == n) break;
            }
        }
    }
    return set;
}

double fill_distance(const CollocationSet& set, const KseParameters& domain, int samples) {
    const double len = domain.b - domain.a;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            const double x = static_cast<double>(i) / (samples - 1);
            const double s = static_cast<double>(j) / (samples - 1);
            double best = std::numeric_limits<double>::infinity();
            for (const auto& p : set.points) {
                const double dx = x - (p.zeta - domain.a) / len;
                const double ds = s - p.tau / domain.T;
                best = std::min(best, dx * dx + ds * ds);
            }
            worst = std::max(worst, best);
        }
    }
    return std::sqrt(worst);
}

// ---------------------------------------------------------------------------

PsiEvaluator::PsiEvaluator(const KseProblem& problem, CollocationSet set)
    : problem_(problem), set_(std::move(set)) {
    coefficients_.reserve(set_.size());
    for (const auto& p : set_.points) {
        if (!(p.zeta > problem_.a() && p.zeta < problem_.b() && p.tau > 0.0 &&
              p.tau <= problem_.T())) {
            throw DomainError("collocation points must lie in (a,b) x (0,T]");
        }
        coefficients_.push_back(linear_coefficients(problem_, p));
    }
}

double PsiEvaluator::unit_space(double zeta) const {
    return clamp_unit((zeta - problem_.a()) / (problem_.b() - problem_.a()));
}

double PsiEvaluator::unit_time(double tau) const { return clamp_unit(tau / problem_.T()); }

FieldBundle PsiEvaluator::bundle(std::size_t i, Point at, bool with_caputo) const {
    const auto& space = order4_family();
    const auto& time = order2_family();
    const FractionalOrder alpha = problem_.alpha();
    const auto& c = coefficients_.at(i);
    const double ck[4] = {c.c0, c.c1, c.c2, c.c3};

    const double xi = unit_space(set_.points[i].zeta);
    const double si = unit_time(set_.points[i].tau);
    const double x = unit_space(at.zeta);
    const double s = unit_time(at.tau);
    const double hx = 1.0 / (problem_.b() - problem_.a());
    const double ht = std::pow(problem_.T(), -alpha.value());

    // Time factors: R2(s_i, s) and D^a_u R2(u, s) at u = s_i.
    const double y0 = time(si, s);
    const double y1 = ht * caputo_piecewise(time.section(s), alpha, si);

    double out[4];
    for (int d = 0; d < 4; ++d) {
        const double scale_d = std::pow(hx, d);
        double spatial = 0.0;
        for (int k = 0; k < 4; ++k) {
            spatial += ck[k] * space.eval(xi, x, k, d) * std::pow(hx, k);
        }
        out[d] = scale_d * (space.eval(xi, x, 0, d) * y1 + spatial * y0);
    }
    FieldBundle b{out[0], out[1], out[2], out[3], 0.0};

    if (with_caputo && s > 0.0) {
        const double double_caputo = rk2_double_caputo(si, s, alpha);
        const double y0_caputo = caputo_piecewise(time.section(si), alpha, s);
        double spatial = 0.0;
        for (int k = 0; k < 4; ++k) {
            spatial += ck[k] * space.eval(xi, x, k, 0) * std::pow(hx, k);
        }
        b.caputo = space.eval(xi, x, 0, 0) * ht * ht * double_caputo + spatial * ht * y0_caputo;
    }
    return b;
}

double PsiEvaluator::value(std::size_t i, Point at, int dzeta) const {
    if (dzeta < 0 || dzeta > 3) {
        throw ContractError("psi derivative order must lie in [0, 3]");
    }
    const auto b = bundle(i, at, false);
    const double v[4] = {b.value, b.d1, b.d2, b.d3};
    return v[dzeta];
}

double PsiEvaluator::dtau(std::size_t i, Point at) const {
    const auto& space = order4_family();
    const auto& time = order2_family();
    const FractionalOrder alpha = problem_.alpha();
    const auto& c = coefficients_.at(i);
    const double ck[4] = {c.c0, c.c1, c.c2, c.c3};
    const double xi = unit_space(set_.points[i].zeta);
    const double si = unit_time(set_.points[i].tau);
    const double x = unit_space(at.zeta);
    const double s = unit_time(at.tau);
    const double hx = 1.0 / (problem_.b() - problem_.a());
    const double ht = std::pow(problem_.T(), -alpha.value());

    const double y0_ds = time.eval(si, s, 0, 1);
    const double y1_ds = ht * caputo_piecewise(time.section(s, 1), alpha, si);
    double spatial = 0.0;
    for (int k = 0; k < 4; ++k) {
        spatial += ck[k] * space.eval(xi, x, k, 0) * std::pow(hx, k);
    }
    return (space.eval(xi, x, 0, 0) * y1_ds + spatial * y0_ds) / problem_.T();
}

double psi(const PsiEvaluator& psis, std::size_t i, Point at, int dzeta) {
    if (i >= psis.size()) {
        throw ContractError("psi index out of range");
    }
    return psis.value(i, at, dzeta);
}

double gram_entry(const PsiEvaluator& psis, std::size_t i, std::size_t j) {
    if (i >= psis.size() || j >= psis.size()) {
        throw ContractError("gram_entry index out of range");
    }
    const Point pi = psis.set().points[i];
    const FieldBundle v = psis.bundle(j, pi, true);
    return apply_L(psis.problem(), v, lifting_bundle(psis.problem(), pi, false));
}

Eigen::MatrixXd assemble_gram(const PsiEvaluator& psis) {
    const auto n = static_cast<Eigen::Index>(psis.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            g(i, j) = gram_entry(psis, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            g(j, i) = g(i, j);
        }
    }
    return g;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram) {
    const Eigen::Index n = gram.rows();
    if (gram.cols() != n) {
        throw ContractError("orthonormalize needs a square matrix");
    }
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double pivot = gram(j, j) - l.row(j).head(j).squaredNorm();
        if (!(pivot > 0.0)) {
            throw DegeneracyError("Gram matrix is not positive definite at index " +
                                      std::to_string(j) +
                                      " (collocation points too close or kernel invalid)",
                                  static_cast<std::size_t>(j));
        }
        l(j, j) = std::sqrt(pivot);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            l(i, j) = (gram(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
        }
    }
    // xi = L^-1 by forward substitution, column by column.
    Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        xi(c, c) = 1.0 / l(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            double acc = 0.0;
            for (Eigen::Index k = c; k < i; ++k) {
                acc += l(i, k) * xi(k, c);
            }
            xi(i, c) = -acc / l(i, i);
        }
    }
    return xi;
}

Eigen::MatrixXd gram_schmidt_coefficients(const Eigen::MatrixXd& gram) {
    const Eigen::Index n = gram.rows();
    Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd c(i);
        for (Eigen::Index k = 0; k < i; ++k) {
            c(k) = xi.row(k).head(k + 1).dot(gram.row(i).head(k + 1));
        }
        const double d2 = gram(i, i) - c.squaredNorm();
        if (!(d2 > 0.0)) {
            throw DegeneracyError("Gram-Schmidt breakdown at index " + std::to_string(i),
                                  static_cast<std::size_t>(i));
        }
        const double d = std::sqrt(d2);
        xi(i, i) = 1.0 / d;
        for (Eigen::Index j = 0; j < i; ++j) {
            double acc = 0.0;
            for (Eigen::Index k = j; k < i; ++k) {
                acc += c(k) * xi(k, j);
            }
            xi(i, j) = -acc / d;
        }
    }
    return xi;
}

// ---------------------------------------------------------------------------

CollocationBasis::CollocationBasis(const KseProblem& problem, CollocationSet set)
    : psis_(problem, std::move(set)) {
    gram_ = assemble_gram(psis_);
    xi_ = orthonormalize(gram_);
    lifting_.reserve(psis_.size());
    forcing_.reserve(psis_.size());
    for (const auto& p : psis_.set().points) {
        lifting_.push_back(lifting_bundle(psis_.problem(), p, true));
        forcing_.push_back(psis_.problem().data().forcing(p.zeta, p.tau));
    }
}

double CollocationBasis::orthonormality_defect() const {
    const Eigen::MatrixXd e =
        xi_ * gram_ * xi_.transpose() - Eigen::MatrixXd::Identity(gram_.rows(), gram_.cols());
    return e.cwiseAbs().maxCoeff();
}

}  // namespace rkhs

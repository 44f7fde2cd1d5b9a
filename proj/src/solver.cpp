#include "rkhs/solver.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

// d^d psi_l(P_k) for d = 0..3.
struct PsiTable {
    std::array<Eigen::MatrixXd, 4> d;

    explicit PsiTable(const CollocationBasis& basis) {
        const auto n = static_cast<Eigen::Index>(basis.size());
        for (auto& m : d) m.resize(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            const Point p = basis.set().points[static_cast<std::size_t>(k)];
            for (Eigen::Index l = 0; l < n; ++l) {
                const FieldBundle b = basis.psis().bundle(static_cast<std::size_t>(l), p, false);
                d[0](k, l) = b.value;
                d[1](k, l) = b.d1;
                d[2](k, l) = b.d2;
                d[3](k, l) = b.d3;
            }
        }
    }

    FieldBundle v_at(Eigen::Index k, const Eigen::VectorXd& c) const {
        return {d[0].row(k).dot(c), d[1].row(k).dot(c), d[2].row(k).dot(c), d[3].row(k).dot(c),
                0.0};
    }
};

double rhs_at(const CollocationBasis& basis, const PsiTable& table, Eigen::Index k,
              const Eigen::VectorXd& c) {
    const auto i = static_cast<std::size_t>(k);
    return rhs_M(basis.problem(), table.v_at(k, c), basis.lifting_at_points()[i],
                 basis.forcing_at_points()[i]);
}

void check_dzeta(int dzeta) {
    if (dzeta < 0 || dzeta > 3) {
        throw ContractError("spatial derivative order must lie in [0, 3], got " +
                            std::to_string(dzeta));
    }
}

}  // namespace

ApproximateSolution::ApproximateSolution(std::shared_ptr<const CollocationBasis> basis,
                                         Eigen::VectorXd coefficients,
                                         std::vector<double> sweep_changes, bool converged)
    : basis_(std::move(basis)),
      coefficients_(std::move(coefficients)),
      sweep_changes_(std::move(sweep_changes)),
      converged_(converged) {
    if (!basis_ || static_cast<std::size_t>(coefficients_.size()) != basis_->size()) {
        throw ContractError("ApproximateSolution needs one coefficient per basis function");
    }
    psi_coefficients_ = basis_->xi().transpose() * coefficients_;
}

double ApproximateSolution::homogeneous(double zeta, double tau, int dzeta) const {
    check_dzeta(dzeta);
    if (!problem().contains(zeta, tau)) {
        throw DomainError("evaluation point outside the domain");
    }
    const Point at{zeta, tau};
    double sum = 0.0;
    for (std::size_t l = 0; l < size(); ++l) {
        const double c = psi_coefficients_[static_cast<Eigen::Index>(l)];
        if (c != 0.0) {
            sum += c * basis_->psis().value(l, at, dzeta);
        }
    }
    return sum;
}

double ApproximateSolution::value(double zeta, double tau, int dzeta) const {
    return homogeneous(zeta, tau, dzeta) + lifting_f(problem(), zeta, tau, dzeta);
}

double ApproximateSolution::dtau(double zeta, double tau) const {
    if (!problem().contains(zeta, tau)) {
        throw DomainError("evaluation point outside the domain");
    }
    double sum = problem().data().lifting_dtau(zeta, tau);
    for (std::size_t l = 0; l < size(); ++l) {
        sum += psi_coefficients_[static_cast<Eigen::Index>(l)] * basis_->psis().dtau(l, {zeta, tau});
    }
    return sum;
}

double ApproximateSolution::collocation_residual() const {
    const PsiTable table(*basis_);
    const Eigen::VectorXd lv = basis_->gram() * psi_coefficients_;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < lv.size(); ++k) {
        worst = std::max(worst, std::abs(lv[k] - rhs_at(*basis_, table, k, psi_coefficients_)));
    }
    return worst;
}

ApproximateSolution solve(std::shared_ptr<const CollocationBasis> basis, int sweeps) {
    if (!basis) {
        throw ContractError("solve needs a basis");
    }
    if (sweeps < 1) {
        throw ContractError("solve needs sweeps >= 1");
    }
    const Eigen::MatrixXd& xi = basis->xi();
    const auto n = xi.rows();
    const PsiTable table(*basis);

    // Single pass: B_i = sum_{k<=i} xi_ik M_k, M_k taken on v_{k-1}.
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m[k] = rhs_at(*basis, table, k, c);
        b[k] = xi.row(k).head(k + 1).dot(m.head(k + 1));
        c += b[k] * xi.row(k).transpose();
    }

    if (!b.allFinite()) {
        throw DivergenceError("single pass produced non-finite coefficients", 1, b.norm());
    }

    std::vector<double> changes;
    bool converged = (sweeps == 1);
    for (int sweep = 2; sweep <= sweeps; ++sweep) {
        for (Eigen::Index k = 0; k < n; ++k) {
            m[k] = rhs_at(*basis, table, k, c);
        }
        const Eigen::VectorXd next = xi * m;
        const double before = b.lpNorm<Eigen::Infinity>();
        const double after = next.lpNorm<Eigen::Infinity>();
        if (!next.allFinite() || after > kDivergenceGrowth * std::max(before, 1e-300)) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "fixed-point sweeps diverge at sweep %d: coefficient norm %.3g -> %.3g",
                          sweep, before, after);
            throw DivergenceError(msg, sweep, before > 0.0 ? after / before : after);
        }
        const double change = (next - b).lpNorm<Eigen::Infinity>();
        changes.push_back(change);
        b = next;
        c = xi.transpose() * b;
        if (change <= kSweepTol) {
            converged = true;
            break;
        }
    }
    return ApproximateSolution(std::move(basis), std::move(b), std::move(changes), converged);
}

ApproximateSolution solve(const KseProblem& problem, std::size_t n, CollocationScheme scheme,
                          int sweeps) {
    if (n < 1) {
        throw ContractError("solve needs n >= 1");
    }
    auto basis = std::make_shared<const CollocationBasis>(
        problem, make_collocation(n, scheme, problem.parameters()));
    return solve(std::move(basis), sweeps);
}

double evaluate(const ApproximateSolution& sol, double zeta, double tau, int dzeta) {
    return sol.value(zeta, tau, dzeta);
}

std::vector<Point> table_points(const KseParameters& domain, double tau) {
    std::vector<Point> out;
    for (int i = 1; i <= 11; ++i) {
        out.push_back({domain.a + (domain.b - domain.a) * i / 12.0, tau});
    }
    return out;
}

std::vector<Point> interior_grid(const KseParameters& domain, int m) {
    if (m < 1) {
        throw ContractError("interior_grid needs m >= 1");
    }
    std::vector<Point> out;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            out.push_back({domain.a + (domain.b - domain.a) * i / (m + 1.0), domain.T * j / (m + 1.0)});
        }
    }
    return out;
}

std::vector<Point> default_validation_grid(const KseParameters& domain) {
    auto out = interior_grid(domain, 9);
    const auto row = table_points(domain, 0.5 * domain.T);
    out.insert(out.end(), row.begin(), row.end());
    return out;
}

double max_error(const ApproximateSolution& sol, const std::vector<Point>& points) {
    const ReferenceSolution exact(sol.problem());
    double worst = 0.0;
    for (const auto& p : points) {
        worst = std::max(worst, std::abs(sol.value(p.zeta, p.tau, 0) - exact(p.zeta, p.tau)));
    }
    return worst;
}

std::vector<std::pair<std::size_t, double>> error_sequence(
    const KseProblem& problem, const std::vector<std::size_t>& n_list,
    const std::vector<Point>& validation_grid, CollocationScheme scheme, int sweeps) {
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw ContractError("error_sequence needs an increasing n list");
        }
    }
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t n : n_list) {
        out.emplace_back(n, max_error(solve(problem, n, scheme, sweeps), validation_grid));
    }
    return out;
}

}  // namespace rkhs

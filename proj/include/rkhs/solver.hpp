#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rkhs/basis.hpp"
#include "rkhs/problem.hpp"

namespace rkhs {

/// Sweeps stop once the coefficient change (max norm) drops to this.
inline constexpr double kSweepTol = 1e-10;
/// Coefficient norm growth between sweeps treated as divergence.
inline constexpr double kDivergenceGrowth = 1e6;
/// Sweep budget used when the caller asks for a converged fixed point.
inline constexpr int kDefaultSweeps = 50;

/// w_n = sum_i B_i Psi_i + f, with Psi_i = sum_j xi_ij psi_j.
class ApproximateSolution final : public SpaceTimeFunction {
public:
    ApproximateSolution(std::shared_ptr<const CollocationBasis> basis, Eigen::VectorXd coefficients,
                        std::vector<double> sweep_changes, bool converged);

    const KseProblem& problem() const noexcept { return basis_->problem(); }
    const CollocationBasis& basis() const noexcept { return *basis_; }
    std::size_t size() const noexcept { return basis_->size(); }

    /// B_1..B_n (coefficients of the orthonormal Psi_i).
    const Eigen::VectorXd& coefficients() const noexcept { return coefficients_; }
    /// The same expansion in the psi_j: xi^T B.
    const Eigen::VectorXd& psi_coefficients() const noexcept { return psi_coefficients_; }

    /// Max-norm coefficient change after each sweep beyond the first.
    const std::vector<double>& sweep_changes() const noexcept { return sweep_changes_; }
    int sweeps_used() const noexcept { return static_cast<int>(sweep_changes_.size()) + 1; }
    bool converged() const noexcept { return converged_; }

    /// d^dzeta w_n; throws ContractError for dzeta outside [0, 3].
    double value(double zeta, double tau, int dzeta) const override;
    double dtau(double zeta, double tau) const override;

    /// The homogenized part v_n alone.
    double homogeneous(double zeta, double tau, int dzeta = 0) const;

    /// max_k |(L v_n)(P_k) - M(v_n)(P_k)| over the collocation points.
    double collocation_residual() const;

private:
    std::shared_ptr<const CollocationBasis> basis_;
    Eigen::VectorXd coefficients_;
    Eigen::VectorXd psi_coefficients_;
    std::vector<double> sweep_changes_;
    bool converged_;
};

/// Builds the basis and runs the iteration. sweeps == 1 is the single pass in
/// which B_i uses M at P_k on the partial iterate v_{k-1}; further sweeps
/// re-evaluate M on the previous full iterate until the change is <= kSweepTol.
ApproximateSolution solve(const KseProblem& problem, std::size_t n,
                          CollocationScheme scheme = CollocationScheme::diagonal_grid,
                          int sweeps = kDefaultSweeps);

/// Same, on a prebuilt basis (lets callers reuse one basis across sweep modes).
ApproximateSolution solve(std::shared_ptr<const CollocationBasis> basis, int sweeps = kDefaultSweeps);

/// d^dzeta w_n at (zeta, tau).
double evaluate(const ApproximateSolution& sol, double zeta, double tau, int dzeta = 0);

/// zeta = a + (b-a) i/12, i = 1..11, at the given tau.
std::vector<Point> table_points(const KseParameters& domain, double tau);
/// Interior m x m grid (a + (b-a) i/(m+1), T j/(m+1)).
std::vector<Point> interior_grid(const KseParameters& domain, int m = 9);
/// 9 x 9 interior grid followed by the table points at tau = T/2.
std::vector<Point> default_validation_grid(const KseParameters& domain);

/// max |w_n - w| over the points.
double max_error(const ApproximateSolution& sol, const std::vector<Point>& points);

/// (n, L-infinity error on the grid) for each n; n_list must be increasing.
std::vector<std::pair<std::size_t, double>> error_sequence(
    const KseProblem& problem, const std::vector<std::size_t>& n_list,
    const std::vector<Point>& validation_grid,
    CollocationScheme scheme = CollocationScheme::diagonal_grid, int sweeps = kDefaultSweeps);

}  // namespace rkhs

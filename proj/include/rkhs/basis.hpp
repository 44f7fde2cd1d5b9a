#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rkhs/kernels.hpp"
#include "rkhs/problem.hpp"

namespace rkhs {


enum class CollocationScheme { diagonal_grid, halton };

const char* scheme_name(CollocationScheme scheme) noexcept;
CollocationScheme parse_scheme(const std::string& name);

struct CollocationSet {
    std::vector<Point> points;
    CollocationScheme scheme = CollocationScheme::diagonal_grid;

    std::size_t size() const noexcept { return points.size(); }
};

/// First n points of a deterministic sequence dense in (a,b) x (0,T].
///
/// diagonal-grid: level l contributes the interior nodes of the uniform
/// (2^l + 1)^2 grid not present at coarser levels, visited by anti-diagonals
/// (increasing i + j, then increasing i). halton: bases 2 (space) and 3 (time),
/// starting at index 1.
CollocationSet make_collocation(std::size_t n, CollocationScheme scheme, const KseParameters& domain);

/// Largest distance from the domain (sampled on a fine grid) to the nearest point,
/// measured in unit-square coordinates.
double fill_distance(const CollocationSet& set, const KseParameters& domain, int samples = 129);

/// Evaluates the trial functions psi_i = L_(z,u) K((z,u), .) at (z,u) = P_i.
///
/// Space is mapped to [0,1] by (zeta-a)/(b-a) and time by tau/T; derivative
/// factors of the maps are applied here.
class PsiEvaluator {
public:
    PsiEvaluator(const KseProblem& problem, CollocationSet set);

    const KseProblem& problem() const noexcept { return problem_; }
    const CollocationSet& set() const noexcept { return set_; }
    std::size_t size() const noexcept { return set_.size(); }

    /// psi_i and its zeta-derivatives 0..3 plus D^a_tau psi_i (when requested).
    FieldBundle bundle(std::size_t i, Point at, bool with_caputo) const;

    double value(std::size_t i, Point at, int dzeta = 0) const;
    double dtau(std::size_t i, Point at) const;

private:
    double unit_space(double zeta) const;
    double unit_time(double tau) const;

    KseProblem problem_;
    CollocationSet set_;
    std::vector<LinearCoefficients> coefficients_;
};

/// psi_i at a point (spatial derivative order dzeta).
double psi(const PsiEvaluator& psis, std::size_t i, Point at, int dzeta = 0);

/// <psi_i, psi_j> = (L psi_j)(P_i).
double gram_entry(const PsiEvaluator& psis, std::size_t i, std::size_t j);

Eigen::MatrixXd assemble_gram(const PsiEvaluator& psis);

/// Lower-triangular xi with xi G xi^T = I, from the Cholesky factor of G.
/// Throws DegeneracyError naming the first non-positive pivot.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& gram);

/// The same coefficients by the classical Gram-Schmidt recursion
/// (c_ik = <psi_i, Psi_k>, d_i = sqrt(|psi_i|^2 - sum_k c_ik^2)).
Eigen::MatrixXd gram_schmidt_coefficients(const Eigen::MatrixXd& gram);

/// Collocation set, trial functions, Gram matrix and orthonormalization
/// coefficients. Immutable once built.
class CollocationBasis {
public:
    CollocationBasis(const KseProblem& problem, CollocationSet set);

    const KseProblem& problem() const noexcept { return psis_.problem(); }
    const CollocationSet& set() const noexcept { return psis_.set(); }
    const PsiEvaluator& psis() const noexcept { return psis_; }
    std::size_t size() const noexcept { return psis_.size(); }

    const Eigen::MatrixXd& gram() const noexcept { return gram_; }
    const Eigen::MatrixXd& xi() const noexcept { return xi_; }

    /// Lifting bundle (with D^a f) at each collocation point.
    const std::vector<FieldBundle>& lifting_at_points() const noexcept { return lifting_; }
    const std::vector<double>& forcing_at_points() const noexcept { return forcing_; }

    /// max |(xi G xi^T)_ij - delta_ij|
    double orthonormality_defect() const;

private:
    PsiEvaluator psis_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd xi_;
    std::vector<FieldBundle> lifting_;
    std::vector<double> forcing_;
};

}  // namespace rkhs

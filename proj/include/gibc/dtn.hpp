#ifndef GIBC_DTN_HPP
#define GIBC_DTN_HPP

#include <vector>

#include <Eigen/Dense>

#include "gibc/fe_space.hpp"
#include "gibc/problem_spec.hpp"

namespace gibc {

/// Trace dof grid on a bottom part, x strictly increasing.
struct BoundaryGrid {
    std::vector<int> dofs;
    std::vector<double> x;
    int origin_index = -1;   // position of the x=0 dof, -1 if absent
    int size() const { return static_cast<int>(dofs.size()); }
};

BoundaryGrid make_boundary_grid(const FeSpace& s, TraceSet which);

/// Bottom part the reduced problem of a weight kind lives on.
TraceSet trace_set_for(WeightKind w);

/// Spectral Dirichlet-to-Neumann eigenvalues for the rectangle: mode
/// cos(k pi (x+1)/2) on the full bottom side maps to d_k = beta_k tanh
/// beta_k with beta_k = sqrt(1 + (k pi / 2)^2).
struct SpectralDtn {
    int modes = 0;
    std::vector<double> beta_k;
    std::vector<double> d_k;
};
SpectralDtn spectral_dtn(int modes);

/// Discrete DtN operator in weak form on a trace grid: phi^H D psi
/// approximates <Theta phi, psi>.
struct DtnOperator {
    enum class Variant { SpectralDiagonal, AlgebraicDense };
    Variant variant = Variant::AlgebraicDense;
    SpectralDtn spectral;       // populated for SpectralDiagonal
    Eigen::MatrixXcd matrix;
    BoundaryGrid grid;
};

/// Schur complement of the volume operator K + M onto the trace dofs.
DtnOperator algebraic_dtn(const FeSpace& s, TraceSet which);

/// Galerkin projection of the cosine-mode DtN onto the FE trace space on
/// the full bottom side (exact integration of cos times the trace basis).
DtnOperator spectral_dtn_operator(int modes, const FeSpace& s);

/// Weighted 1D problem on the trace grid: (B_w + D) phi = g, where B_w is
/// the signed weighted 1D stiffness restricted from the 2D assembly (so
/// the algebraic-DtN path reproduces the monolithic trace exactly).
struct Reduced1dProblem {
    BoundaryGrid grid;
    Eigen::MatrixXcd weighted_stiffness;
    Eigen::MatrixXcd dtn;
    Eigen::VectorXcd g;
};

/// Assembles the reduced problem; g and (for the algebraic variant) the
/// DtN block come from the Schur reduction of the monolithic volume system.
Reduced1dProblem make_reduced_problem(const ProblemSpec& spec, const FeSpace& s,
                                      const DtnOperator& dtn);

Eigen::VectorXcd solve_reduced(const Reduced1dProblem& p);

/// T-coercivity test operator on a full-Gamma grid: negates the values at
/// x<0 and adds 2 phi(0) to them; an involution that fixes x >= 0.
Eigen::VectorXcd apply_T(const BoundaryGrid& grid, const Eigen::VectorXcd& phi);

/// 1D mass matrix of the trace basis on the grid (for Rayleigh quotients).
Eigen::MatrixXcd trace_mass_matrix(const FeSpace& s, const BoundaryGrid& grid);

} // namespace gibc

#endif

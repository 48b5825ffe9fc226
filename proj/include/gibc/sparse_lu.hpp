#ifndef GIBC_SPARSE_LU_HPP
#define GIBC_SPARSE_LU_HPP

#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "gibc/csr.hpp"
#include "gibc/errors.hpp"

namespace gibc {

/// Sparse LU with partial pivoting. Factorization throws
/// NumericallySingular when a pivot falls below 1e-14 relative to the
/// matrix magnitude (with a unit floor, so an all-tiny matrix such as
/// diag(1e-20) is rejected rather than amplified into garbage).
/// Solves carry a residual guarantee
///   ||A x - b||_inf <= 1e-10 (||A||_max ||x||_inf + ||b||_inf)
/// enforced by one step of iterative refinement when needed.
class LuFactor {
public:
    explicit LuFactor(const CsrMatrix& A);

    Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;
    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& B) const;
    /// Solves A^H x = b.
    Eigen::VectorXcd solve_adjoint(const Eigen::VectorXcd& b) const;

    int size() const { return static_cast<int>(a_.rows()); }
    double matrix_max() const { return amax_; }

private:
    Eigen::SparseMatrix<cplx> a_;
    // mutable: SparseLU::adjoint() is non-const in Eigen 3.4
    mutable Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu_;
    double amax_ = 0.0;
};

constexpr double kPivotTolerance = 1e-14;
constexpr double kSolveResidualTolerance = 1e-10;

} // namespace gibc

#endif

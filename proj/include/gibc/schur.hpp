#ifndef GIBC_SCHUR_HPP
#define GIBC_SCHUR_HPP

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "gibc/csr.hpp"
#include "gibc/sparse_lu.hpp"

namespace gibc {

/// Dense Schur complement of a sparse system onto a small boundary dof set:
///   Sd = S_bb - S_bi S_ii^-1 S_ib,   rd = r_b - S_bi S_ii^-1 r_i.
/// Solving Sd phi = rd and back-substituting reproduces the monolithic
/// solve exactly (up to LU roundoff). Boundary dofs keep their given order.
struct SchurReduced {
    Eigen::MatrixXcd matrix;                 // Sd
    Eigen::VectorXcd rhs;                    // rd
    std::vector<int> boundary;               // caller order
    std::vector<int> interior;               // ascending
    std::shared_ptr<const LuFactor> interior_lu;
    // S_ib stored per interior row as (boundary position, value)
    std::vector<std::vector<std::pair<int, cplx>>> coupling;
};

SchurReduced schur_reduce(const CsrMatrix& S, const Eigen::VectorXcd& rhs,
                          const std::vector<int>& boundary_dofs);

/// Rebuilds the full dof vector from the boundary solution phi.
Eigen::VectorXcd schur_back_substitute(const SchurReduced& red, const Eigen::VectorXcd& phi,
                                       const Eigen::VectorXcd& full_rhs);

} // namespace gibc

#endif

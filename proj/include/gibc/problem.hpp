#ifndef GIBC_PROBLEM_HPP
#define GIBC_PROBLEM_HPP

#include <functional>

#include <Eigen/Dense>

#include "gibc/assembly.hpp"
#include "gibc/csr.hpp"
#include "gibc/fe_space.hpp"
#include "gibc/problem_spec.hpp"

namespace gibc {

/// All matrices share the space's sparsity pattern, so linear combinations
/// are entrywise. `gram` is the V_alpha / W_alpha inner product matrix
/// (volume coefficient 1, |w|-weighted boundary term).
struct AssembledProblem {
    const FeSpace* space = nullptr;
    ProblemSpec spec;
    CsrMatrix stiffness, mass;
    CsrMatrix boundary_signed, boundary_abs;
    CsrMatrix system;   // K + shift*M + Bw
    CsrMatrix gram;     // K + M + |Bw|
    Eigen::VectorXcd rhs;
};

AssembledProblem assemble_problem(const ProblemSpec& spec, const FeSpace& s);

enum class NormKind { L2, H1, Valpha };

struct DiscreteSolution {
    Eigen::VectorXcd values;
    double l2 = 0.0, h1 = 0.0, valpha = 0.0;
};

/// Direct solve of the assembled system; throws NumericallySingular when
/// the factorization rejects the matrix (an expected outcome for s=-1,
/// alpha >= 1 at some refinement levels).
DiscreteSolution solve_problem(const AssembledProblem& p);
DiscreteSolution solve_problem(const ProblemSpec& spec, const FeSpace& s);

double compute_norm(const AssembledProblem& p, const Eigen::VectorXcd& u, NormKind which);

/// Nodal interpolant; throws std::invalid_argument on a non-finite value.
Eigen::VectorXcd interpolate(const FeSpace& s, const std::function<cplx(double, double)>& fun);

} // namespace gibc

#endif

#ifndef GIBC_ASSEMBLY_HPP
#define GIBC_ASSEMBLY_HPP

#include <Eigen/Dense>

#include "gibc/csr.hpp"
#include "gibc/fe_space.hpp"
#include "gibc/problem_spec.hpp"

namespace gibc {

struct VolumeMatrices {
    CsrMatrix stiffness;   // (grad u, grad v)
    CsrMatrix mass;        // (u, v)
};

/// Element-parallel assembly on the space's shared pattern. Local matrices
/// are computed per element, then gathered row by row in a fixed element
/// order, so the result is bit-identical for any thread count.
VolumeMatrices assemble_volume(const FeSpace& s, int nthreads);
VolumeMatrices assemble_volume(const FeSpace& s);   // nthreads = thread_count()

/// Plain scatter-add reference used by the tests and the benchmark.
VolumeMatrices assemble_volume_serial(const FeSpace& s);

/// Weighted boundary form sum_edges int w(x) u' v' dx on the tagged bottom
/// edges, with the sign conventions of WeightKind folded in. Edges touching
/// a zero of the weight are integrated with Gauss-Jacobi rules, the rest
/// with Gauss-Legendre (8 points each).
CsrMatrix assemble_boundary_weighted(const FeSpace& s, const ProblemSpec& spec);

/// Same with |w|: the boundary part of the V_alpha / W_alpha inner product.
CsrMatrix assemble_boundary_weighted_abs(const FeSpace& s, const ProblemSpec& spec);

Eigen::VectorXcd assemble_rhs(const FeSpace& s, const ProblemSpec& spec);

/// int_a^b x^alpha x^m dx for 0 <= a <= b (closed form; test oracle and
/// exact trace norms).
double weighted_monomial_integral(double alpha, int m, double a, double b);

/// Exact squared X_alpha(I) norm of the trace on the given bottom part:
/// int |phi|^2 + |x|^alpha |phi'|^2 along the trace, edge by edge in closed
/// form (the trace of a P1/P2 function is piecewise polynomial).
double trace_xalpha_norm_sq(const FeSpace& s, TraceSet which, double alpha,
                            const cplx* dof_values);

} // namespace gibc

#endif

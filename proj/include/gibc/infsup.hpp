#ifndef GIBC_INFSUP_HPP
#define GIBC_INFSUP_HPP

#include "gibc/csr.hpp"

namespace gibc {

struct InfSupResult {
    double beta = 0.0;
    int iterations = 0;
};

/// Discrete inf-sup constant of A in the norm induced by the SPD Gram
/// matrix G: beta = sqrt(lambda_min(A^H G^-1 A, G)), computed by inverse
/// iteration on A^-1 G A^-H G with LU factors of A and G. Converged when
/// successive eigenvalue estimates agree to 1e-8 relative; throws
/// NonConvergence after 500 iterations. A numerically singular A is
/// reported as beta = 0, not as an error.
InfSupResult smallest_infsup(const CsrMatrix& A, const CsrMatrix& G);

} // namespace gibc

#endif

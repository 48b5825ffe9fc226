#include "gibc/infsup.hpp"

#include <cmath>
#include <random>

#include "gibc/errors.hpp"
#include "gibc/sparse_lu.hpp"

namespace gibc {

namespace {
constexpr int kMaxIterations = 500;
constexpr double kRelTol = 1e-8;
} // namespace

InfSupResult smallest_infsup(const CsrMatrix& A, const CsrMatrix& G) {
    if (A.nrows != A.ncols || G.nrows != G.ncols || A.nrows != G.nrows)
        throw std::invalid_argument("smallest_infsup: dimension mismatch");
    const int n = A.nrows;

    const LuFactor gram_lu(G);
    std::unique_ptr<LuFactor> a_lu;
    try {
        a_lu = std::make_unique<LuFactor>(A);
    } catch (const NumericallySingular&) {
        return {0.0, 0};
    }

    // Deterministic start vector with no special symmetry.
    std::mt19937_64 rng(0x5851f42d4c957f2dull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd x(n);
    for (int i = 0; i < n; ++i) x[i] = cplx(u(rng), u(rng));

    auto g_norm = [&](const Eigen::VectorXcd& v) { return std::sqrt(std::real(v.dot(matvec(G, v)))); };
    x /= g_norm(x);

    double prev = -1.0;
    for (int it = 1; it <= kMaxIterations; ++it) {
        // One step of inverse iteration on M = A^-1 G A^-H G; the Rayleigh
        // quotient nu = ||A^-H G x||_G^2 estimates 1/beta^2.
        const Eigen::VectorXcd t = matvec(G, x);
        const Eigen::VectorXcd w = a_lu->solve_adjoint(t);
        const Eigen::VectorXcd gw = matvec(G, w);
        const double nu = std::real(w.dot(gw)) / std::real(x.dot(t));
        if (prev > 0.0 && std::abs(nu - prev) <= kRelTol * nu)
            return {1.0 / std::sqrt(nu), it};
        prev = nu;
        Eigen::VectorXcd z = a_lu->solve(gw);
        x = z / g_norm(z);
    }
    throw NonConvergence(kMaxIterations, "inf-sup inverse iteration did not converge");
}

} // namespace gibc

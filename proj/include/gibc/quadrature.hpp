#ifndef GIBC_QUADRATURE_HPP
#define GIBC_QUADRATURE_HPP

#include <array>
#include <vector>

namespace gibc {

/// 1D rule in physical coordinates. Weights absorb the singular weight
/// function when the rule is of Gauss-Jacobi type.
struct QuadRule1d {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss-Legendre on [a,b].
QuadRule1d gauss_legendre(int n, double a, double b);

/// n-point Gauss-Jacobi on [a,b] for the weight (b-x)^alpha (x-a)^beta.
/// Exact for that weight times polynomials of degree <= 2n-1.
QuadRule1d gauss_jacobi(int n, double a, double b, double alpha, double beta);

/// Weight (x-a)^beta only.
QuadRule1d gauss_jacobi_left(int n, double a, double b, double beta);

/// Weight (b-x)^alpha only.
QuadRule1d gauss_jacobi_right(int n, double a, double b, double alpha);

/// Triangle rule, barycentric points and weights normalized so that
/// integral ~ area * sum w_i f(p_i). Degree-5 exact (7 points).
struct TriQuadPoint {
    std::array<double, 3> bary;
    double w;
};
const std::vector<TriQuadPoint>& triangle_rule_degree5();

/// Adaptive quadrature of f on [a,b] (integrable endpoint singularities
/// allowed), relative tolerance epsrel.
double adaptive_integrate(double (*f)(double, void*), void* params,
                          double a, double b, double epsrel);

} // namespace gibc

#endif

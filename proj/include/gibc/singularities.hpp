#ifndef GIBC_SINGULARITIES_HPP
#define GIBC_SINGULARITIES_HPP

#include <complex>
#include <vector>

namespace gibc {

using cplx = std::complex<double>;

/// Positive root of tanh(tau*pi) = tau: bracketed bisection to 1e-12
/// followed by a Newton polish; |tanh(tau*pi) - tau| <= 1e-14.
double solve_tanh_dispersion();

enum class DispersionCase { GammaPlus, SignChanging };

/// sin(lambda pi) - lambda cos(lambda pi)      (GammaPlus case)
/// (1 + lambda^2) sin(lambda pi)               (SignChanging case)
cplx dispersion_residual(cplx lambda, DispersionCase which);

/// Angular profiles of the separated singular modes.
cplx gamma_plus_profile(cplx lambda, double theta);     // cos(lambda (theta - pi))
cplx sign_changing_profile(cplx lambda, double theta);  // cos(lambda theta) - lambda sin(lambda theta)

/// A separated singular mode r^lambda phi(theta). For the purely imaginary
/// exponents lambda = i tau the mode oscillates without decay toward the
/// origin (the black-hole regime).
struct SingularMode {
    cplx lambda;
    DispersionCase kind = DispersionCase::GammaPlus;
    double tau = 0.0;                  // positive, set when lambda = i tau
    cplx profile(double theta) const;  // angular factor phi(theta)
};

/// The oscillating mode of the half-power problem, lambda = i tau with
/// tanh(tau pi) = tau. Dispersion residual below 1e-12 by construction.
SingularMode black_hole_mode();
/// The oscillating mode of the sign-changing problem, lambda = i.
SingularMode sign_changing_mode();

/// Regularized oscillating mode r^(1/n) e^(i tau ln r) cosh(tau (theta-pi))
/// with theta in [0,pi] measured from the positive x axis; value 0 at the
/// origin. Throws std::invalid_argument outside the closed rectangle.
cplx eval_weyl(int n, double tau, double x, double y);

/// int_0^1 x |d_x s_n(x,0)|^2 dx = cosh^2(tau pi) (tau^2 + 1/n^2) n/2.
double weyl_boundary_energy_closed(int n, double tau);
/// Same quantity by adaptive quadrature of the pointwise integrand.
double weyl_boundary_energy_quadrature(int n, double tau);

/// Largest Weyl index resolvable on mesh size h: floor(ln(1/h)).
int weyl_n_max(double h);

/// One record of the discrete Weyl diagnostic. n = 0 marks the constant
/// control function.
struct WeylRow {
    int level = 0;
    double h = 0.0;
    int n = 0;
    double norm_v1h = 0.0;            // discrete V_1 norm of the interpolant
    double rho = 0.0;                 // Riesz dual norm of the residual
    double ratio = 0.0;               // rho / norm_v1h
    double boundary_energy_closed = 0.0;  // closed-form reference
};

/// Runs the diagnostic for the half-power weight with s=-1, alpha=1 and
/// volume shift 1+i on `levels` nested refinements of the base mesh.
/// Indices above n_max(h) are skipped.
std::vector<WeylRow> weyl_diagnostic(int base_nx, int base_ny, int degree, int levels,
                                     const std::vector<int>& n_list);

} // namespace gibc

#endif

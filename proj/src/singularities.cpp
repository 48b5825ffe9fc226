#include "gibc/singularities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gibc/problem.hpp"
#include "gibc/quadrature.hpp"
#include "gibc/sparse_lu.hpp"

namespace gibc {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kImag(0.0, 1.0);
} // namespace

double solve_tanh_dispersion() {
    // tanh(tau*pi) - tau is positive at 0.9 and negative at 1.
    auto f = [](double t) { return std::tanh(t * kPi) - t; };
    double lo = 0.9, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    double tau = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        const double th = std::tanh(tau * kPi);
        const double df = kPi * (1.0 - th * th) - 1.0;
        const double step = (th - tau) / df;
        tau -= step;
        if (std::abs(step) < 1e-16) break;
    }
    return tau;
}

cplx dispersion_residual(cplx lambda, DispersionCase which) {
    const cplx lp = lambda * kPi;
    if (which == DispersionCase::GammaPlus) return std::sin(lp) - lambda * std::cos(lp);
    return (cplx(1.0) + lambda * lambda) * std::sin(lp);
}

cplx gamma_plus_profile(cplx lambda, double theta) {
    return std::cos(lambda * (theta - kPi));
}

cplx sign_changing_profile(cplx lambda, double theta) {
    return std::cos(lambda * theta) - lambda * std::sin(lambda * theta);
}

cplx SingularMode::profile(double theta) const {
    return kind == DispersionCase::GammaPlus ? gamma_plus_profile(lambda, theta)
                                             : sign_changing_profile(lambda, theta);
}

SingularMode black_hole_mode() {
    SingularMode m;
    m.tau = solve_tanh_dispersion();
    m.lambda = cplx(0.0, m.tau);
    m.kind = DispersionCase::GammaPlus;
    if (std::abs(dispersion_residual(m.lambda, m.kind)) > 1e-12)
        throw std::logic_error("dispersion residual above tolerance");
    return m;
}

SingularMode sign_changing_mode() {
    SingularMode m;
    m.tau = 1.0;
    m.lambda = cplx(0.0, 1.0);
    m.kind = DispersionCase::SignChanging;
    if (std::abs(dispersion_residual(m.lambda, m.kind)) > 1e-12)
        throw std::logic_error("dispersion residual above tolerance");
    return m;
}

cplx eval_weyl(int n, double tau, double x, double y) {
    if (n < 1) throw std::invalid_argument("weyl index must be >= 1");
    if (x < -1.0 || x > 1.0 || y < 0.0 || y > 1.0)
        throw std::invalid_argument("point outside the closed domain");
    const double r = std::hypot(x, y);
    if (r == 0.0) return 0.0;
    const double theta = std::atan2(y, x);
    const double lr = std::log(r);
    return std::pow(r, 1.0 / n) * std::exp(kImag * (tau * lr)) * std::cosh(tau * (theta - kPi));
}

double weyl_boundary_energy_closed(int n, double tau) {
    const double c = std::cosh(tau * kPi);
    return c * c * (tau * tau + 1.0 / (static_cast<double>(n) * n)) * 0.5 * n;
}

namespace {
struct EnergyParams {
    double tau;
    int n;
};

double energy_integrand(double x, void* params) {
    const auto* p = static_cast<const EnergyParams*>(params);
    // x |d_x s_n(x,0)|^2 evaluated pointwise through the complex power
    const cplx expo(1.0 / p->n, p->tau);
    const cplx d = expo * std::exp((expo - 1.0) * std::log(x)) * std::cosh(p->tau * kPi);
    return x * std::norm(d);
}
} // namespace

double weyl_boundary_energy_quadrature(int n, double tau) {
    EnergyParams p{tau, n};
    return adaptive_integrate(&energy_integrand, &p, 0.0, 1.0, 1e-10);
}

int weyl_n_max(double h) {
    if (h >= 1.0) return 0;
    return static_cast<int>(std::floor(std::log(1.0 / h)));
}

std::vector<WeylRow> weyl_diagnostic(int base_nx, int base_ny, int degree, int levels,
                                     const std::vector<int>& n_list) {
    const double tau = solve_tanh_dispersion();
    ProblemSpec spec;
    spec.alpha = 1.0;
    spec.sign = -1;
    spec.weight = WeightKind::HalfPower;
    spec.shift = cplx(1.0, 1.0);
    spec.source = SourceKind::Zero;

    std::vector<WeylRow> rows;
    Mesh mesh = build_rect_mesh(base_nx, base_ny);
    for (int level = 0; level < levels; ++level) {
        const FeSpace space = make_space(mesh, degree);
        const AssembledProblem p = assemble_problem(spec, space);
        const LuFactor gram_lu(p.gram);

        auto push_row = [&](int n, const Eigen::VectorXcd& u, double closed) {
            const double norm = compute_norm(p, u, NormKind::Valpha);
            const Eigen::VectorXcd f = matvec(p.system, u);
            const double rho = std::sqrt(std::max(0.0, std::real(f.dot(gram_lu.solve(f)))));
            rows.push_back({level, mesh.mesh_size(), n, norm, rho, rho / norm, closed});
        };

        const int nmax = weyl_n_max(mesh.mesh_size());
        for (int n : n_list) {
            if (n < 1 || n > nmax) continue;
            const Eigen::VectorXcd xn = interpolate(
                space, [&](double x, double y) { return eval_weyl(n, tau, x, y); });
            push_row(n, xn, weyl_boundary_energy_closed(n, tau));
        }
        // constant control: not a near-kernel direction, ratio stays O(1)
        push_row(0, Eigen::VectorXcd::Ones(space.ndofs()), 0.0);

        if (level + 1 < levels) mesh = refine(mesh);
    }
    return rows;
}

} // namespace gibc

#include "gibc/problem.hpp"

#include <cmath>

#include "gibc/sparse_lu.hpp"

namespace gibc {

AssembledProblem assemble_problem(const ProblemSpec& spec, const FeSpace& s) {
    validate(spec);
    AssembledProblem p;
    p.space = &s;
    p.spec = spec;
    VolumeMatrices vm = assemble_volume(s);
    p.stiffness = std::move(vm.stiffness);
    p.mass = std::move(vm.mass);
    p.boundary_signed = assemble_boundary_weighted(s, spec);
    p.boundary_abs = assemble_boundary_weighted_abs(s, spec);
    p.system = csr_combine(1.0, p.stiffness, spec.shift, p.mass, 1.0, p.boundary_signed);
    p.gram = csr_combine(1.0, p.stiffness, 1.0, p.mass, 1.0, p.boundary_abs);
    p.rhs = assemble_rhs(s, spec);
    return p;
}

double compute_norm(const AssembledProblem& p, const Eigen::VectorXcd& u, NormKind which) {
    auto quad = [&](const CsrMatrix& A) {
        return std::sqrt(std::max(0.0, std::real(u.dot(matvec(A, u)))));
    };
    switch (which) {
        case NormKind::L2: return quad(p.mass);
        case NormKind::H1: return quad(csr_combine(1.0, p.stiffness, 1.0, p.mass));
        case NormKind::Valpha: return quad(p.gram);
    }
    return 0.0;
}

DiscreteSolution solve_problem(const AssembledProblem& p) {
    const LuFactor lu(p.system);
    DiscreteSolution sol;
    sol.values = lu.solve(p.rhs);
    sol.l2 = compute_norm(p, sol.values, NormKind::L2);
    sol.h1 = compute_norm(p, sol.values, NormKind::H1);
    sol.valpha = compute_norm(p, sol.values, NormKind::Valpha);
    return sol;
}

DiscreteSolution solve_problem(const ProblemSpec& spec, const FeSpace& s) {
    return solve_problem(assemble_problem(spec, s));
}

Eigen::VectorXcd interpolate(const FeSpace& s, const std::function<cplx(double, double)>& fun) {
    Eigen::VectorXcd u(s.ndofs());
    for (int i = 0; i < s.ndofs(); ++i) {
        const cplx v = fun(s.dof_coords[i][0], s.dof_coords[i][1]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("interpolate: non-finite value at a dof");
        u[i] = v;
    }
    return u;
}

} // namespace gibc

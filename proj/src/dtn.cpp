#include "gibc/dtn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "gibc/assembly.hpp"
#include "gibc/errors.hpp"
#include "gibc/quadrature.hpp"
#include "gibc/schur.hpp"

namespace gibc {

namespace {
constexpr double kPi = std::numbers::pi;

std::unordered_map<int, int> grid_positions(const BoundaryGrid& grid) {
    std::unordered_map<int, int> pos;
    for (int k = 0; k < grid.size(); ++k) pos[grid.dofs[k]] = k;
    return pos;
}

// Trace basis values at x on one edge (left, right, midpoint).
void trace_shape(int degree, double x0, double x1, double x, double* b) {
    const double t = (x - x0) / (x1 - x0);
    if (degree == 1) {
        b[0] = 1.0 - t;
        b[1] = t;
        b[2] = 0.0;
        return;
    }
    b[0] = (1.0 - t) * (1.0 - 2.0 * t);
    b[1] = t * (2.0 * t - 1.0);
    b[2] = 4.0 * t * (1.0 - t);
}

} // namespace

BoundaryGrid make_boundary_grid(const FeSpace& s, TraceSet which) {
    BoundaryGrid grid;
    for (const TraceDof& td : boundary_dofs_ordered(s, which)) {
        if (td.x == 0.0) grid.origin_index = grid.size();
        grid.dofs.push_back(td.dof);
        grid.x.push_back(td.x);
    }
    return grid;
}

TraceSet trace_set_for(WeightKind w) {
    return w == WeightKind::SignChanging ? TraceSet::Gamma : TraceSet::GammaPlus;
}

SpectralDtn spectral_dtn(int modes) {
    if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
    SpectralDtn d;
    d.modes = modes;
    d.beta_k.resize(modes);
    d.d_k.resize(modes);
    for (int k = 0; k < modes; ++k) {
        const double bk = std::sqrt(1.0 + 0.25 * kPi * kPi * k * k);
        d.beta_k[k] = bk;
        d.d_k[k] = bk * std::tanh(bk);
    }
    return d;
}

DtnOperator algebraic_dtn(const FeSpace& s, TraceSet which) {
    DtnOperator op;
    op.variant = DtnOperator::Variant::AlgebraicDense;
    op.grid = make_boundary_grid(s, which);
    const VolumeMatrices vm = assemble_volume(s);
    const CsrMatrix km = csr_combine(1.0, vm.stiffness, 1.0, vm.mass);
    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(s.ndofs());
    op.matrix = schur_reduce(km, zero, op.grid.dofs).matrix;
    return op;
}

DtnOperator spectral_dtn_operator(int modes, const FeSpace& s) {
    DtnOperator op;
    op.variant = DtnOperator::Variant::SpectralDiagonal;
    op.spectral = spectral_dtn(modes);
    op.grid = make_boundary_grid(s, TraceSet::Gamma);
    const auto pos = grid_positions(op.grid);
    const int n = op.grid.size();

    // C(k, a) = int cos(k pi (x+1)/2) * basis_a(x) dx, edge by edge.
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(modes, n);
    const QuadRule1d gl = gauss_legendre(8, 0.0, 1.0);
    for (const GammaEdge& ge : s.gamma_edges) {
        const double h = ge.x1 - ge.x0;
        const int ndof = s.degree == 2 ? 3 : 2;
        // basis polynomials on t in [0,1] as monomial coefficients
        double poly[3][3] = {{0}};
        if (s.degree == 1) {
            poly[0][0] = 1.0; poly[0][1] = -1.0;           // 1 - t
            poly[1][1] = 1.0;                              // t
        } else {
            poly[0][0] = 1.0; poly[0][1] = -3.0; poly[0][2] = 2.0;   // (1-t)(1-2t)
            poly[1][1] = -1.0; poly[1][2] = 2.0;                     // t(2t-1)
            poly[2][1] = 4.0; poly[2][2] = -4.0;                     // 4t(1-t)
        }
        for (int k = 0; k < modes; ++k) {
            const double w = 0.5 * kPi * k;
            double mom[3];  // int t^m cos(a t + b) dt on [0,1]
            if (k == 0) {
                mom[0] = 1.0; mom[1] = 0.5; mom[2] = 1.0 / 3.0;
            } else {
                const double a = w * h;
                const double b = w * (ge.x0 + 1.0);
                if (a <= 2.0) {
                    // low oscillation per edge: Gauss-Legendre is exact to
                    // machine precision and free of 1/a^3 cancellation
                    mom[0] = mom[1] = mom[2] = 0.0;
                    for (std::size_t q = 0; q < gl.x.size(); ++q) {
                        const double t = gl.x[q];
                        const double c = gl.w[q] * std::cos(a * t + b);
                        mom[0] += c;
                        mom[1] += c * t;
                        mom[2] += c * t * t;
                    }
                } else {
                    const double sab = std::sin(a + b), sb = std::sin(b);
                    const double cab = std::cos(a + b), cb = std::cos(b);
                    mom[0] = (sab - sb) / a;
                    mom[1] = sab / a + (cab - cb) / (a * a);
                    mom[2] = sab / a + 2.0 * cab / (a * a) - 2.0 * (sab - sb) / (a * a * a);
                }
            }
            for (int d = 0; d < ndof; ++d) {
                double v = 0.0;
                for (int m = 0; m < 3; ++m) v += poly[d][m] * mom[m];
                C(k, pos.at(ge.dofs[d])) += h * v;
            }
        }
    }

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < modes; ++k) {
        const double nk = k == 0 ? 2.0 : 1.0;   // ||cos mode||^2 on (-1,1)
        D.noalias() += (op.spectral.d_k[k] / nk) * (C.row(k).transpose() * C.row(k));
    }
    op.matrix = D.cast<cplx>();
    return op;
}

Reduced1dProblem make_reduced_problem(const ProblemSpec& spec, const FeSpace& s,
                                      const DtnOperator& dtn) {
    validate(spec);
    if (spec.shift != cplx(1.0))
        throw std::invalid_argument("the reduced 1D problem requires volume shift 1");
    Reduced1dProblem p;
    p.grid = dtn.grid;
    p.dtn = dtn.matrix;

    const CsrMatrix bw = assemble_boundary_weighted(s, spec);
    p.weighted_stiffness = dense_block(bw, p.grid.dofs, p.grid.dofs);

    // g is the interior elimination of the load: the lifted problem with
    // zero trace data, reduced onto the trace dofs.
    const VolumeMatrices vm = assemble_volume(s);
    const CsrMatrix volume = csr_combine(1.0, vm.stiffness, 1.0, vm.mass);
    p.g = schur_reduce(volume, assemble_rhs(s, spec), p.grid.dofs).rhs;
    return p;
}

Eigen::VectorXcd solve_reduced(const Reduced1dProblem& p) {
    const Eigen::MatrixXcd A = p.weighted_stiffness + p.dtn;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
    if (!lu.isInvertible()) throw NumericallySingular(-1, "reduced 1D system is singular");
    return lu.solve(p.g);
}

Eigen::VectorXcd apply_T(const BoundaryGrid& grid, const Eigen::VectorXcd& phi) {
    if (grid.origin_index < 0) throw std::invalid_argument("grid has no dof at x = 0");
    if (phi.size() != grid.size()) throw std::invalid_argument("apply_T: size mismatch");
    const cplx phi0 = phi[grid.origin_index];
    Eigen::VectorXcd out = phi;
    for (int k = 0; k < grid.size(); ++k)
        if (grid.x[k] < 0.0) out[k] = -phi[k] + 2.0 * phi0;
    return out;
}

Eigen::MatrixXcd trace_mass_matrix(const FeSpace& s, const BoundaryGrid& grid) {
    const auto pos = grid_positions(grid);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(grid.size(), grid.size());
    double b[3];
    for (const GammaEdge& ge : s.gamma_edges) {
        if (pos.find(ge.dofs[0]) == pos.end() || pos.find(ge.dofs[1]) == pos.end()) continue;
        const int ndof = s.degree == 2 ? 3 : 2;
        const QuadRule1d gl = gauss_legendre(8, ge.x0, ge.x1);
        for (std::size_t q = 0; q < gl.x.size(); ++q) {
            trace_shape(s.degree, ge.x0, ge.x1, gl.x[q], b);
            for (int i = 0; i < ndof; ++i)
                for (int j = 0; j < ndof; ++j)
                    M(pos.at(ge.dofs[i]), pos.at(ge.dofs[j])) += gl.w[q] * b[i] * b[j];
        }
    }
    return M;
}

} // namespace gibc

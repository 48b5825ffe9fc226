#include "gibc/assembly.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gibc/parallel.hpp"
#include "gibc/quadrature.hpp"

namespace gibc {

namespace {

constexpr int kEdgeQuadPoints = 8;

CsrMatrix zero_on_pattern(const FeSpace& s) {
    CsrMatrix A;
    A.nrows = A.ncols = s.ndofs();
    A.row_ptr = s.row_ptr;
    A.col_idx = s.col_idx;
    A.values.assign(s.col_idx.size(), cplx(0.0));
    A.symmetric = true;
    return A;
}

// Local stiffness/mass of one element; upper triangle computed once and
// mirrored so the blocks are symmetric to the bit.
void element_locals(const FeSpace& s, int e, double* kloc, double* mloc) {
    const int per = s.dofs_per_elem();
    const int* d = s.elem(e);
    const auto& p0 = s.dof_coords[d[0]];
    const auto& p1 = s.dof_coords[d[1]];
    const auto& p2 = s.dof_coords[d[2]];
    const double j00 = p1[0] - p0[0], j01 = p2[0] - p0[0];
    const double j10 = p1[1] - p0[1], j11 = p2[1] - p0[1];
    const double det = j00 * j11 - j01 * j10;

    for (int k = 0; k < per * per; ++k) kloc[k] = mloc[k] = 0.0;

    double n[6];
    std::array<double, 2> gref[6];
    double gx[6], gy[6];
    for (const TriQuadPoint& q : triangle_rule_degree5()) {
        shape_values(s.degree, q.bary, n);
        shape_grads_ref(s.degree, q.bary, gref);
        for (int a = 0; a < per; ++a) {
            gx[a] = (j11 * gref[a][0] - j10 * gref[a][1]) / det;
            gy[a] = (-j01 * gref[a][0] + j00 * gref[a][1]) / det;
        }
        const double w = 0.5 * det * q.w;
        for (int a = 0; a < per; ++a)
            for (int b = a; b < per; ++b) {
                kloc[a * per + b] += w * (gx[a] * gx[b] + gy[a] * gy[b]);
                mloc[a * per + b] += w * (n[a] * n[b]);
            }
    }
    for (int a = 0; a < per; ++a)
        for (int b = 0; b < a; ++b) {
            kloc[a * per + b] = kloc[b * per + a];
            mloc[a * per + b] = mloc[b * per + a];
        }
}

} // namespace

VolumeMatrices assemble_volume_serial(const FeSpace& s) {
    VolumeMatrices out{zero_on_pattern(s), zero_on_pattern(s)};
    const int per = s.dofs_per_elem();
    std::vector<double> kloc(per * per), mloc(per * per);
    for (int e = 0; e < s.nelems(); ++e) {
        element_locals(s, e, kloc.data(), mloc.data());
        const int* d = s.elem(e);
        for (int a = 0; a < per; ++a)
            for (int b = 0; b < per; ++b) {
                const int idx = out.stiffness.find(d[a], d[b]);
                out.stiffness.values[idx] += kloc[a * per + b];
                out.mass.values[idx] += mloc[a * per + b];
            }
    }
    return out;
}

VolumeMatrices assemble_volume(const FeSpace& s, int nthreads) {
    const int per = s.dofs_per_elem();
    const int ne = s.nelems();
    const int n = s.ndofs();

    std::vector<double> kloc(static_cast<std::size_t>(ne) * per * per);
    std::vector<double> mloc(static_cast<std::size_t>(ne) * per * per);
#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
    for (int e = 0; e < ne; ++e)
        element_locals(s, e, &kloc[static_cast<std::size_t>(e) * per * per],
                       &mloc[static_cast<std::size_t>(e) * per * per]);

    // Per-row contribution lists in increasing element order: the gathered
    // sums visit each (i,j) entry in the same order as the serial scatter.
    std::vector<int> count(n + 1, 0);
    for (int e = 0; e < ne; ++e)
        for (int a = 0; a < per; ++a) count[s.elem(e)[a] + 1]++;
    for (int i = 0; i < n; ++i) count[i + 1] += count[i];
    std::vector<std::pair<int, int>> contrib(count[n]);
    {
        std::vector<int> cursor(count.begin(), count.end() - 1);
        for (int e = 0; e < ne; ++e)
            for (int a = 0; a < per; ++a) contrib[cursor[s.elem(e)[a]]++] = {e, a};
    }

    VolumeMatrices out{zero_on_pattern(s), zero_on_pattern(s)};
#pragma omp parallel for schedule(static) num_threads(nthreads) if (nthreads > 1)
    for (int r = 0; r < n; ++r) {
        for (int c = count[r]; c < count[r + 1]; ++c) {
            const auto [e, a] = contrib[c];
            const int* d = s.elem(e);
            const double* ke = &kloc[static_cast<std::size_t>(e) * per * per + a * per];
            const double* me = &mloc[static_cast<std::size_t>(e) * per * per + a * per];
            for (int b = 0; b < per; ++b) {
                const int idx = out.stiffness.find(r, d[b]);
                out.stiffness.values[idx] += ke[b];
                out.mass.values[idx] += me[b];
            }
        }
    }
    return out;
}

VolumeMatrices assemble_volume(const FeSpace& s) { return assemble_volume(s, thread_count()); }

namespace {

// Derivatives of the trace basis (left vertex, right vertex, midpoint) at x.
void trace_dshape(int degree, double x0, double x1, double x, double* db) {
    const double h = x1 - x0;
    if (degree == 1) {
        db[0] = -1.0 / h;
        db[1] = 1.0 / h;
        db[2] = 0.0;
        return;
    }
    const double t = (x - x0) / h;
    db[0] = (4.0 * t - 3.0) / h;
    db[1] = (4.0 * t - 1.0) / h;
    db[2] = (4.0 - 8.0 * t) / h;
}

CsrMatrix assemble_boundary_impl(const FeSpace& s, const ProblemSpec& spec, bool absolute) {
    validate(spec);
    const double alpha = spec.alpha;
    CsrMatrix A = zero_on_pattern(s);

    for (const GammaEdge& ge : s.gamma_edges) {
        const bool on_plus = ge.tag == BoundaryTag::GammaPlus;
        double sgn;
        QuadRule1d rule;
        std::function<double(double)> extra;  // smooth leftover weight factor

        switch (spec.weight) {
            case WeightKind::HalfPower: {
                if (!on_plus) continue;
                sgn = absolute ? 1.0 : static_cast<double>(spec.sign);
                if (ge.x0 == 0.0)
                    rule = gauss_jacobi_left(kEdgeQuadPoints, 0.0, ge.x1, alpha);
                else {
                    rule = gauss_legendre(kEdgeQuadPoints, ge.x0, ge.x1);
                    extra = [alpha](double x) { return std::pow(x, alpha); };
                }
                break;
            }
            case WeightKind::SignChanging: {
                sgn = (on_plus || absolute) ? 1.0 : -1.0;
                if (on_plus) {
                    if (ge.x0 == 0.0)
                        rule = gauss_jacobi_left(kEdgeQuadPoints, 0.0, ge.x1, alpha);
                    else {
                        rule = gauss_legendre(kEdgeQuadPoints, ge.x0, ge.x1);
                        extra = [alpha](double x) { return std::pow(x, alpha); };
                    }
                } else {
                    if (ge.x1 == 0.0)
                        rule = gauss_jacobi_right(kEdgeQuadPoints, ge.x0, 0.0, alpha);
                    else {
                        rule = gauss_legendre(kEdgeQuadPoints, ge.x0, ge.x1);
                        extra = [alpha](double x) { return std::pow(-x, alpha); };
                    }
                }
                break;
            }
            case WeightKind::Bridge: {
                if (!on_plus) continue;
                sgn = absolute ? 1.0 : static_cast<double>(spec.sign);
                const bool at0 = ge.x0 == 0.0, at1 = ge.x1 == 1.0;
                if (at0 && at1)
                    rule = gauss_jacobi(kEdgeQuadPoints, 0.0, 1.0, alpha, alpha);
                else if (at0) {
                    rule = gauss_jacobi_left(kEdgeQuadPoints, 0.0, ge.x1, alpha);
                    extra = [alpha](double x) { return std::pow(1.0 - x, alpha); };
                } else if (at1) {
                    rule = gauss_jacobi_right(kEdgeQuadPoints, ge.x0, 1.0, alpha);
                    extra = [alpha](double x) { return std::pow(x, alpha); };
                } else {
                    rule = gauss_legendre(kEdgeQuadPoints, ge.x0, ge.x1);
                    extra = [alpha](double x) { return std::pow(x, alpha) * std::pow(1.0 - x, alpha); };
                }
                break;
            }
            default:
                continue;
        }

        const int ndof = s.degree == 2 ? 3 : 2;
        double local[9] = {0.0};
        double db[3];
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
            const double x = rule.x[q];
            double w = rule.w[q];
            if (extra) w *= extra(x);
            trace_dshape(s.degree, ge.x0, ge.x1, x, db);
            for (int a = 0; a < ndof; ++a)
                for (int b = a; b < ndof; ++b) local[a * 3 + b] += w * db[a] * db[b];
        }
        for (int a = 0; a < ndof; ++a)
            for (int b = 0; b < a; ++b) local[a * 3 + b] = local[b * 3 + a];

        for (int a = 0; a < ndof; ++a)
            for (int b = 0; b < ndof; ++b)
                A.add(ge.dofs[a], ge.dofs[b], sgn * local[a * 3 + b]);
    }
    return A;
}

} // namespace

CsrMatrix assemble_boundary_weighted(const FeSpace& s, const ProblemSpec& spec) {
    return assemble_boundary_impl(s, spec, false);
}

CsrMatrix assemble_boundary_weighted_abs(const FeSpace& s, const ProblemSpec& spec) {
    return assemble_boundary_impl(s, spec, true);
}

Eigen::VectorXcd assemble_rhs(const FeSpace& s, const ProblemSpec& spec) {
    validate(spec);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(s.ndofs());
    const int per = s.dofs_per_elem();
    double n[6];
    for (int e = 0; e < s.nelems(); ++e) {
        const int* d = s.elem(e);
        const auto& p0 = s.dof_coords[d[0]];
        const auto& p1 = s.dof_coords[d[1]];
        const auto& p2 = s.dof_coords[d[2]];
        const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        for (const TriQuadPoint& q : triangle_rule_degree5()) {
            const double x = q.bary[0] * p0[0] + q.bary[1] * p1[0] + q.bary[2] * p2[0];
            const double y = q.bary[0] * p0[1] + q.bary[1] * p1[1] + q.bary[2] * p2[1];
            const double f = eval_source(spec.source, x, y);
            if (f == 0.0) continue;
            shape_values(s.degree, q.bary, n);
            const double w = 0.5 * det * q.w * f;
            for (int a = 0; a < per; ++a) rhs[d[a]] += w * n[a];
        }
    }
    return rhs;
}

double weighted_monomial_integral(double alpha, int m, double a, double b) {
    const double p = alpha + m + 1.0;
    return (std::pow(b, p) - std::pow(a, p)) / p;
}

namespace {

// Coefficients of the trace polynomial c0 + c1 x + c2 x^2 on one edge.
std::array<cplx, 3> trace_poly(const FeSpace& s, const GammaEdge& ge, const cplx* u) {
    const cplx v0 = u[ge.dofs[0]], v1 = u[ge.dofs[1]];
    if (s.degree == 1) {
        const cplx c1 = (v1 - v0) / (ge.x1 - ge.x0);
        return {v0 - c1 * ge.x0, c1, cplx(0.0)};
    }
    const double xm = 0.5 * (ge.x0 + ge.x1);
    const cplx vm = u[ge.dofs[2]];
    const cplx f01 = (vm - v0) / (xm - ge.x0);
    const cplx f12 = (v1 - vm) / (ge.x1 - xm);
    const cplx c2 = (f12 - f01) / (ge.x1 - ge.x0);
    const cplx c1 = f01 - c2 * (ge.x0 + xm);
    const cplx c0 = v0 - f01 * ge.x0 + c2 * ge.x0 * xm;
    return {c0, c1, c2};
}

} // namespace

double trace_xalpha_norm_sq(const FeSpace& s, TraceSet which, double alpha,
                            const cplx* u) {
    auto wanted = [&](BoundaryTag t) {
        if (which == TraceSet::Gamma) return t != BoundaryTag::Gamma0;
        return which == TraceSet::GammaPlus ? t == BoundaryTag::GammaPlus
                                            : t == BoundaryTag::GammaMinus;
    };
    double total = 0.0;
    for (const GammaEdge& ge : s.gamma_edges) {
        if (!wanted(ge.tag)) continue;
        const auto [c0, c1, c2] = trace_poly(s, ge, u);
        // |phi|^2 expanded in monomials
        const double p[5] = {std::norm(c0), 2.0 * std::real(c0 * std::conj(c1)),
                             std::norm(c1) + 2.0 * std::real(c0 * std::conj(c2)),
                             2.0 * std::real(c1 * std::conj(c2)), std::norm(c2)};
        // |phi'|^2 with phi' = c1 + 2 c2 x
        const double q[3] = {std::norm(c1), 4.0 * std::real(c1 * std::conj(c2)), 4.0 * std::norm(c2)};
        if (ge.x0 >= 0.0) {
            for (int k = 0; k < 5; ++k) total += p[k] * weighted_monomial_integral(0.0, k, ge.x0, ge.x1);
            for (int k = 0; k < 3; ++k) total += q[k] * weighted_monomial_integral(alpha, k, ge.x0, ge.x1);
        } else {
            // mirror x -> -x; odd monomials flip sign
            for (int k = 0; k < 5; ++k)
                total += (k % 2 ? -1.0 : 1.0) * p[k] * weighted_monomial_integral(0.0, k, -ge.x1, -ge.x0);
            for (int k = 0; k < 3; ++k)
                total += (k % 2 ? -1.0 : 1.0) * q[k] * weighted_monomial_integral(alpha, k, -ge.x1, -ge.x0);
        }
    }
    return total;
}

} // namespace gibc

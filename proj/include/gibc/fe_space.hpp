#ifndef GIBC_FE_SPACE_HPP
#define GIBC_FE_SPACE_HPP

#include <array>
#include <complex>
#include <vector>

#include "gibc/mesh.hpp"

namespace gibc {

using cplx = std::complex<double>;

/// Boundary parts a trace can live on; Gamma is the full bottom side.
enum class TraceSet { GammaMinus, GammaPlus, Gamma };

struct TraceDof {
    int dof;
    double x;
};

/// One tagged bottom edge together with the dofs of its trace polynomial:
/// left vertex, right vertex and (P2 only, else -1) edge midpoint.
struct GammaEdge {
    double x0, x1;
    std::array<int, 3> dofs;
    BoundaryTag tag;
};

/// Lagrange P1/P2 space over a Mesh. Owns a copy of the mesh and the CSR
/// sparsity pattern shared by every matrix assembled on the space.
struct FeSpace {
    Mesh mesh;
    int degree = 1;
    std::vector<std::array<double, 2>> dof_coords;
    std::vector<int> elem_dofs;                // stride dofs_per_elem()
    std::vector<GammaEdge> gamma_edges;        // bottom edges, left to right
    std::vector<int> row_ptr, col_idx;         // shared sparsity pattern

    int dofs_per_elem() const { return degree == 1 ? 3 : 6; }
    int ndofs() const { return static_cast<int>(dof_coords.size()); }
    int nelems() const { return static_cast<int>(mesh.triangles.size()); }
    const int* elem(int e) const { return elem_dofs.data() + static_cast<std::size_t>(e) * dofs_per_elem(); }
};

FeSpace make_space(const Mesh& m, int degree);

/// Dofs on the requested bottom part, sorted by strictly increasing x.
/// Endpoints are included; P2 traces include the edge midpoints.
std::vector<TraceDof> boundary_dofs_ordered(const FeSpace& s, TraceSet which);

/// Shape function values / reference gradients at a barycentric point.
void shape_values(int degree, const std::array<double, 3>& bary, double* out);
void shape_grads_ref(int degree, const std::array<double, 3>& bary, std::array<double, 2>* out);

/// Evaluates the FE function with the given dof values at (x,y) using the
/// structured cell lookup. Exact on the nested mesh family, which makes
/// coarse-to-fine prolongation exact.
cplx evaluate(const FeSpace& s, const cplx* u, double x, double y);

} // namespace gibc

#endif

#ifndef GIBC_MESH_HPP
#define GIBC_MESH_HPP

#include <array>
#include <vector>

namespace gibc {

/// Boundary parts of the rectangle (-1,1)x(0,1). The bottom side y=0 is
/// split at the origin into GammaMinus (x<0) and GammaPlus (x>0); the
/// remaining three sides are Gamma0.
enum class BoundaryTag { GammaMinus, GammaPlus, Gamma0 };

struct BoundaryEdge {
    int a = -1, b = -1;           // node indices, a->b along the boundary
    BoundaryTag tag = BoundaryTag::Gamma0;
};

/// Conforming structured triangulation of (-1,1)x(0,1). Each grid cell is
/// split along its lower-left to upper-right diagonal. The origin (0,0) is
/// always a node, so no bottom edge straddles the impedance sign change.
/// Immutable after construction; safe to share across threads.
struct Mesh {
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 3>> triangles;       // positively oriented
    std::vector<BoundaryEdge> boundary_edges;
    int level = 0;                                    // refinement depth
    int nx = 0, ny = 0;                               // current grid resolution

    int node_id(int i, int j) const { return j * (nx + 1) + i; }
    double hx() const { return 2.0 / nx; }
    double hy() const { return 1.0 / ny; }
    /// Longest edge (the cell diagonal).
    double mesh_size() const;
};

/// Structured mesh with nx x ny cells. nx must be even (the origin has to
/// be a grid node) and at least 2; ny at least 1.
Mesh build_rect_mesh(int nx, int ny);

/// Uniform red refinement: every triangle is split into four by its edge
/// midpoints, tags are inherited and every parent vertex is kept.
Mesh refine(const Mesh& m);

double triangle_area(const Mesh& m, int t);

} // namespace gibc

#endif

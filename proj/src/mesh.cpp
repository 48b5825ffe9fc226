#include "gibc/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace gibc {

double Mesh::mesh_size() const {
    return std::hypot(hx(), hy());
}

double triangle_area(const Mesh& m, int t) {
    const auto& tri = m.triangles[t];
    const auto& p0 = m.nodes[tri[0]];
    const auto& p1 = m.nodes[tri[1]];
    const auto& p2 = m.nodes[tri[2]];
    return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

Mesh build_rect_mesh(int nx, int ny) {
    if (nx % 2 != 0) throw std::invalid_argument("nx must be even");
    if (nx < 2) throw std::invalid_argument("nx must be >= 2");
    if (ny < 1) throw std::invalid_argument("ny must be >= 1");

    Mesh m;
    m.nx = nx;
    m.ny = ny;

    m.nodes.reserve((nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            // (2i-nx)/nx is exactly 0 at i = nx/2 and exactly +-1 at the ends
            const double x = static_cast<double>(2 * i - nx) / nx;
            const double y = static_cast<double>(j) / ny;
            m.nodes.push_back({x, y});
        }
    }

    m.triangles.reserve(2 * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = m.node_id(i, j);
            const int b = m.node_id(i + 1, j);
            const int c = m.node_id(i + 1, j + 1);
            const int d = m.node_id(i, j + 1);
            m.triangles.push_back({a, b, c});
            m.triangles.push_back({a, c, d});
        }
    }

    for (int i = 0; i < nx; ++i) {
        const int a = m.node_id(i, 0);
        const int b = m.node_id(i + 1, 0);
        const double midx = 0.5 * (m.nodes[a][0] + m.nodes[b][0]);
        m.boundary_edges.push_back({a, b, midx < 0.0 ? BoundaryTag::GammaMinus : BoundaryTag::GammaPlus});
    }
    for (int j = 0; j < ny; ++j)
        m.boundary_edges.push_back({m.node_id(nx, j), m.node_id(nx, j + 1), BoundaryTag::Gamma0});
    for (int i = nx; i > 0; --i)
        m.boundary_edges.push_back({m.node_id(i, ny), m.node_id(i - 1, ny), BoundaryTag::Gamma0});
    for (int j = ny; j > 0; --j)
        m.boundary_edges.push_back({m.node_id(0, j), m.node_id(0, j - 1), BoundaryTag::Gamma0});

    return m;
}

Mesh refine(const Mesh& m) {
    // Red refinement of this structured family is again a member of the
    // family at doubled resolution: each parent triangle is covered by the
    // four children cut off by its edge midpoints, and every parent node
    // stays a node. Rebuilding keeps the structured node numbering.
    Mesh fine = build_rect_mesh(2 * m.nx, 2 * m.ny);
    fine.level = m.level + 1;
    return fine;
}

} // namespace gibc

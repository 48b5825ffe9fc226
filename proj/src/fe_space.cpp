#include "gibc/fe_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace gibc {

namespace {

// Deterministic edge numbering: first sight while walking triangles in order.
struct EdgeTable {
    std::map<std::pair<int, int>, int> ids;
    int add(int a, int b) {
        auto key = std::minmax(a, b);
        auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
        return it->second;
    }
    int find(int a, int b) const {
        auto it = ids.find(std::minmax(a, b));
        if (it == ids.end()) throw std::logic_error("edge not in table");
        return it->second;
    }
};

void build_pattern(FeSpace& s) {
    const int n = s.ndofs();
    const int per = s.dofs_per_elem();
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < s.nelems(); ++e) {
        const int* d = s.elem(e);
        for (int a = 0; a < per; ++a)
            for (int b = 0; b < per; ++b) adj[d[a]].push_back(d[b]);
    }
    s.row_ptr.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto& row = adj[i];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        s.row_ptr[i + 1] = s.row_ptr[i] + static_cast<int>(row.size());
    }
    s.col_idx.clear();
    s.col_idx.reserve(s.row_ptr[n]);
    for (int i = 0; i < n; ++i) s.col_idx.insert(s.col_idx.end(), adj[i].begin(), adj[i].end());
}

} // namespace

FeSpace make_space(const Mesh& m, int degree) {
    if (degree != 1 && degree != 2) throw std::invalid_argument("degree must be 1 or 2");

    FeSpace s;
    s.mesh = m;
    s.degree = degree;

    const int nnodes = static_cast<int>(m.nodes.size());
    s.dof_coords.assign(m.nodes.begin(), m.nodes.end());

    EdgeTable edges;
    if (degree == 1) {
        s.elem_dofs.reserve(3 * m.triangles.size());
        for (const auto& t : m.triangles) {
            s.elem_dofs.push_back(t[0]);
            s.elem_dofs.push_back(t[1]);
            s.elem_dofs.push_back(t[2]);
        }
    } else {
        // First pass fixes the edge numbering, second pass emits dofs.
        for (const auto& t : m.triangles) {
            edges.add(t[0], t[1]);
            edges.add(t[1], t[2]);
            edges.add(t[2], t[0]);
        }
        s.dof_coords.resize(nnodes + edges.ids.size());
        for (const auto& [key, id] : edges.ids) {
            const auto& p = m.nodes[key.first];
            const auto& q = m.nodes[key.second];
            s.dof_coords[nnodes + id] = {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
        }
        s.elem_dofs.reserve(6 * m.triangles.size());
        for (const auto& t : m.triangles) {
            s.elem_dofs.push_back(t[0]);
            s.elem_dofs.push_back(t[1]);
            s.elem_dofs.push_back(t[2]);
            s.elem_dofs.push_back(nnodes + edges.find(t[0], t[1]));
            s.elem_dofs.push_back(nnodes + edges.find(t[1], t[2]));
            s.elem_dofs.push_back(nnodes + edges.find(t[2], t[0]));
        }
    }

    for (const auto& be : m.boundary_edges) {
        if (be.tag == BoundaryTag::Gamma0) continue;
        GammaEdge ge;
        ge.x0 = m.nodes[be.a][0];
        ge.x1 = m.nodes[be.b][0];
        ge.dofs = {be.a, be.b, degree == 2 ? nnodes + edges.find(be.a, be.b) : -1};
        ge.tag = be.tag;
        if (ge.x0 > ge.x1) {
            std::swap(ge.x0, ge.x1);
            std::swap(ge.dofs[0], ge.dofs[1]);
        }
        s.gamma_edges.push_back(ge);
    }
    std::sort(s.gamma_edges.begin(), s.gamma_edges.end(),
              [](const GammaEdge& a, const GammaEdge& b) { return a.x0 < b.x0; });

    build_pattern(s);
    return s;
}

std::vector<TraceDof> boundary_dofs_ordered(const FeSpace& s, TraceSet which) {
    auto wanted = [&](BoundaryTag t) {
        switch (which) {
            case TraceSet::GammaMinus: return t == BoundaryTag::GammaMinus;
            case TraceSet::GammaPlus: return t == BoundaryTag::GammaPlus;
            case TraceSet::Gamma: return t != BoundaryTag::Gamma0;
        }
        return false;
    };
    std::vector<TraceDof> out;
    for (const auto& ge : s.gamma_edges) {
        if (!wanted(ge.tag)) continue;
        out.push_back({ge.dofs[0], ge.x0});
        if (ge.dofs[2] >= 0) out.push_back({ge.dofs[2], 0.5 * (ge.x0 + ge.x1)});
        out.push_back({ge.dofs[1], ge.x1});
    }
    std::sort(out.begin(), out.end(), [](const TraceDof& a, const TraceDof& b) { return a.x < b.x; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const TraceDof& a, const TraceDof& b) { return a.dof == b.dof; }),
              out.end());
    if (out.empty()) throw std::invalid_argument("no boundary dofs for the requested trace set");
    return out;
}

void shape_values(int degree, const std::array<double, 3>& l, double* out) {
    if (degree == 1) {
        out[0] = l[0];
        out[1] = l[1];
        out[2] = l[2];
        return;
    }
    out[0] = l[0] * (2.0 * l[0] - 1.0);
    out[1] = l[1] * (2.0 * l[1] - 1.0);
    out[2] = l[2] * (2.0 * l[2] - 1.0);
    out[3] = 4.0 * l[0] * l[1];
    out[4] = 4.0 * l[1] * l[2];
    out[5] = 4.0 * l[2] * l[0];
}

void shape_grads_ref(int degree, const std::array<double, 3>& l, std::array<double, 2>* out) {
    static constexpr std::array<std::array<double, 2>, 3> gl = {{{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}}};
    if (degree == 1) {
        out[0] = gl[0];
        out[1] = gl[1];
        out[2] = gl[2];
        return;
    }
    for (int i = 0; i < 3; ++i) {
        const double c = 4.0 * l[i] - 1.0;
        out[i] = {c * gl[i][0], c * gl[i][1]};
    }
    auto edge = [&](int i, int j) -> std::array<double, 2> {
        return {4.0 * (l[i] * gl[j][0] + l[j] * gl[i][0]), 4.0 * (l[i] * gl[j][1] + l[j] * gl[i][1])};
    };
    out[3] = edge(0, 1);
    out[4] = edge(1, 2);
    out[5] = edge(2, 0);
}

cplx evaluate(const FeSpace& s, const cplx* u, double x, double y) {
    const Mesh& m = s.mesh;
    const double hx = m.hx(), hy = m.hy();
    int i = static_cast<int>(std::floor((x + 1.0) / hx));
    int j = static_cast<int>(std::floor(y / hy));
    i = std::clamp(i, 0, m.nx - 1);
    j = std::clamp(j, 0, m.ny - 1);
    const double x0 = static_cast<double>(2 * i - m.nx) / m.nx;
    const double y0 = static_cast<double>(j) / m.ny;
    const double xi = (x - x0) / hx;
    const double eta = (y - y0) / hy;

    std::array<double, 3> bary;
    int e;
    if (xi >= eta) {  // lower triangle (a,b,c)
        e = 2 * (j * m.nx + i);
        bary = {1.0 - xi, xi - eta, eta};
    } else {          // upper triangle (a,c,d)
        e = 2 * (j * m.nx + i) + 1;
        bary = {1.0 - eta, xi, eta - xi};
    }
    double n[6];
    shape_values(s.degree, bary, n);
    const int* d = s.elem(e);
    cplx v = 0.0;
    for (int k = 0; k < s.dofs_per_elem(); ++k) v += n[k] * u[d[k]];
    return v;
}

} // namespace gibc

#include "gibc/schur.hpp"

#include <stdexcept>

namespace gibc {

SchurReduced schur_reduce(const CsrMatrix& S, const Eigen::VectorXcd& rhs,
                          const std::vector<int>& boundary_dofs) {
    const int n = S.nrows;
    if (rhs.size() != n) throw std::invalid_argument("schur_reduce: rhs size mismatch");

    SchurReduced red;
    red.boundary = boundary_dofs;
    const int nb = static_cast<int>(boundary_dofs.size());

    std::vector<int> bpos(n, -1);
    for (int k = 0; k < nb; ++k) {
        if (bpos[boundary_dofs[k]] != -1) throw std::invalid_argument("duplicate boundary dof");
        bpos[boundary_dofs[k]] = k;
    }
    red.interior.reserve(n - nb);
    std::vector<int> ipos(n, -1);
    for (int i = 0; i < n; ++i)
        if (bpos[i] < 0) {
            ipos[i] = static_cast<int>(red.interior.size());
            red.interior.push_back(i);
        }
    const int ni = static_cast<int>(red.interior.size());

    red.interior_lu = std::make_shared<LuFactor>(csr_block(S, red.interior, red.interior));

    red.coupling.resize(ni);
    for (int pi = 0; pi < ni; ++pi) {
        const int r = red.interior[pi];
        for (int k = S.row_ptr[r]; k < S.row_ptr[r + 1]; ++k)
            if (bpos[S.col_idx[k]] >= 0) red.coupling[pi].emplace_back(bpos[S.col_idx[k]], S.values[k]);
    }
    std::vector<std::vector<std::pair<int, cplx>>> bi_rows(nb);  // (interior pos, value)
    Eigen::MatrixXcd sbb = Eigen::MatrixXcd::Zero(nb, nb);
    for (int pb = 0; pb < nb; ++pb) {
        const int r = boundary_dofs[pb];
        for (int k = S.row_ptr[r]; k < S.row_ptr[r + 1]; ++k) {
            const int c = S.col_idx[k];
            if (bpos[c] >= 0)
                sbb(pb, bpos[c]) = S.values[k];
            else
                bi_rows[pb].emplace_back(ipos[c], S.values[k]);
        }
    }

    Eigen::VectorXcd ri(ni), rb(nb);
    for (int pi = 0; pi < ni; ++pi) ri[pi] = rhs[red.interior[pi]];
    for (int pb = 0; pb < nb; ++pb) rb[pb] = rhs[boundary_dofs[pb]];

    const Eigen::VectorXcd y = red.interior_lu->solve(ri);
    red.rhs = rb;
    for (int pb = 0; pb < nb; ++pb)
        for (const auto& [pi, v] : bi_rows[pb]) red.rhs[pb] -= v * y[pi];

    // Sd column block by column block to bound the dense workspace.
    red.matrix = sbb;
    constexpr int kChunk = 64;
    for (int c0 = 0; c0 < nb; c0 += kChunk) {
        const int w = std::min(kChunk, nb - c0);
        Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(ni, w);
        for (int pi = 0; pi < ni; ++pi)
            for (const auto& [pc, v] : red.coupling[pi])
                if (pc >= c0 && pc < c0 + w) B(pi, pc - c0) = v;
        const Eigen::MatrixXcd X = red.interior_lu->solve(B);
        for (int pb = 0; pb < nb; ++pb)
            for (const auto& [pi, v] : bi_rows[pb])
                for (int cc = 0; cc < w; ++cc) red.matrix(pb, c0 + cc) -= v * X(pi, cc);
    }
    return red;
}

Eigen::VectorXcd schur_back_substitute(const SchurReduced& red, const Eigen::VectorXcd& phi,
                                       const Eigen::VectorXcd& full_rhs) {
    const int ni = static_cast<int>(red.interior.size());
    Eigen::VectorXcd t(ni);
    for (int pi = 0; pi < ni; ++pi) {
        cplx v = full_rhs[red.interior[pi]];
        for (const auto& [pc, sv] : red.coupling[pi]) v -= sv * phi[pc];
        t[pi] = v;
    }
    const Eigen::VectorXcd ui = red.interior_lu->solve(t);
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(full_rhs.size());
    for (std::size_t k = 0; k < red.boundary.size(); ++k) full[red.boundary[k]] = phi[k];
    for (int pi = 0; pi < ni; ++pi) full[red.interior[pi]] = ui[pi];
    return full;
}

} // namespace gibc

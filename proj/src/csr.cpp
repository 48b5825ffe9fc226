#include "gibc/csr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gibc/parallel.hpp"

namespace gibc {

int CsrMatrix::find(int i, int j) const {
    const int lo = row_ptr[i], hi = row_ptr[i + 1];
    auto it = std::lower_bound(col_idx.begin() + lo, col_idx.begin() + hi, j);
    if (it == col_idx.begin() + hi || *it != j) return -1;
    return static_cast<int>(it - col_idx.begin());
}

cplx CsrMatrix::at(int i, int j) const {
    const int k = find(i, j);
    return k < 0 ? cplx(0.0) : values[k];
}

void CsrMatrix::add(int i, int j, cplx v) {
    const int k = find(i, j);
    if (k < 0) throw std::logic_error("entry outside sparsity pattern");
    values[k] += v;
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

CsrMatrix csr_from_triplets(int nrows, int ncols, std::vector<std::tuple<int, int, cplx>> trips) {
    std::sort(trips.begin(), trips.end(), [](const auto& a, const auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    CsrMatrix A;
    A.nrows = nrows;
    A.ncols = ncols;
    A.row_ptr.assign(nrows + 1, 0);
    for (std::size_t k = 0; k < trips.size();) {
        const int i = std::get<0>(trips[k]);
        const int j = std::get<1>(trips[k]);
        cplx v = 0.0;
        while (k < trips.size() && std::get<0>(trips[k]) == i && std::get<1>(trips[k]) == j)
            v += std::get<2>(trips[k++]);
        A.col_idx.push_back(j);
        A.values.push_back(v);
        A.row_ptr[i + 1]++;
    }
    for (int i = 0; i < nrows; ++i) A.row_ptr[i + 1] += A.row_ptr[i];
    return A;
}

CsrMatrix csr_identity(int n) {
    CsrMatrix A;
    A.nrows = A.ncols = n;
    A.row_ptr.resize(n + 1);
    A.col_idx.resize(n);
    A.values.assign(n, cplx(1.0));
    for (int i = 0; i <= n; ++i) A.row_ptr[i] = i;
    for (int i = 0; i < n; ++i) A.col_idx[i] = i;
    A.symmetric = true;
    return A;
}

namespace {
void require_same_pattern(const CsrMatrix& A, const CsrMatrix& B) {
    if (A.nrows != B.nrows || A.ncols != B.ncols || A.row_ptr != B.row_ptr || A.col_idx != B.col_idx)
        throw std::logic_error("matrices do not share a sparsity pattern");
}
} // namespace

CsrMatrix csr_combine(cplx a, const CsrMatrix& A, cplx b, const CsrMatrix& B) {
    require_same_pattern(A, B);
    CsrMatrix C = A;
    for (int k = 0; k < C.nnz(); ++k) C.values[k] = a * A.values[k] + b * B.values[k];
    C.symmetric = A.symmetric && B.symmetric;
    return C;
}

CsrMatrix csr_combine(cplx a, const CsrMatrix& A, cplx b, const CsrMatrix& B, cplx c, const CsrMatrix& C) {
    require_same_pattern(A, B);
    require_same_pattern(A, C);
    CsrMatrix R = A;
    for (int k = 0; k < R.nnz(); ++k)
        R.values[k] = a * A.values[k] + b * B.values[k] + c * C.values[k];
    R.symmetric = A.symmetric && B.symmetric && C.symmetric;
    return R;
}

double max_asymmetry(const CsrMatrix& A) {
    double m = 0.0;
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            m = std::max(m, std::abs(A.values[k] - A.at(A.col_idx[k], i)));
    return m;
}

void spmv_serial(const CsrMatrix& A, const cplx* x, cplx* y) {
    for (int i = 0; i < A.nrows; ++i) {
        cplx s = 0.0;
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) s += A.values[k] * x[A.col_idx[k]];
        y[i] = s;
    }
}

void spmv(const CsrMatrix& A, const cplx* x, cplx* y, int nthreads) {
    if (nthreads <= 1) {
        spmv_serial(A, x, y);
        return;
    }
#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (int i = 0; i < A.nrows; ++i) {
        cplx s = 0.0;
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) s += A.values[k] * x[A.col_idx[k]];
        y[i] = s;
    }
}

Eigen::VectorXcd matvec(const CsrMatrix& A, const Eigen::VectorXcd& x) {
    if (x.size() != A.ncols) throw std::invalid_argument("spmv dimension mismatch");
    Eigen::VectorXcd y(A.nrows);
    spmv(A, x.data(), y.data(), thread_count());
    return y;
}

Eigen::SparseMatrix<cplx> to_eigen(const CsrMatrix& A) {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(A.nnz());
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            trips.emplace_back(i, A.col_idx[k], A.values[k]);
    Eigen::SparseMatrix<cplx> M(A.nrows, A.ncols);
    M.setFromTriplets(trips.begin(), trips.end());
    M.makeCompressed();
    return M;
}

Eigen::MatrixXcd dense_block(const CsrMatrix& A, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows.size(); ++r) B(r, c) = A.at(rows[r], cols[c]);
    return B;
}

CsrMatrix csr_block(const CsrMatrix& A, const std::vector<int>& rows, const std::vector<int>& cols) {
    std::vector<int> colmap(A.ncols, -1);
    for (std::size_t c = 0; c < cols.size(); ++c) colmap[cols[c]] = static_cast<int>(c);
    CsrMatrix B;
    B.nrows = static_cast<int>(rows.size());
    B.ncols = static_cast<int>(cols.size());
    B.row_ptr.assign(B.nrows + 1, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int i = rows[r];
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const int j = colmap[A.col_idx[k]];
            if (j < 0) continue;
            B.col_idx.push_back(j);
            B.values.push_back(A.values[k]);
            B.row_ptr[r + 1]++;
        }
    }
    for (int i = 0; i < B.nrows; ++i) B.row_ptr[i + 1] += B.row_ptr[i];
    return B;
}

} // namespace gibc

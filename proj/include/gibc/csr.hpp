#ifndef GIBC_CSR_HPP
#define GIBC_CSR_HPP

#include <complex>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gibc {

using cplx = std::complex<double>;

/// Compressed sparse row matrix over complex scalars. Column indices are
/// strictly increasing within each row. `symmetric` is metadata set by the
/// assemblers; it is asserted, never assumed silently.
struct CsrMatrix {
    int nrows = 0, ncols = 0;
    std::vector<int> row_ptr;
    std::vector<int> col_idx;
    std::vector<cplx> values;
    bool symmetric = false;

    int nnz() const { return static_cast<int>(values.size()); }
    int find(int i, int j) const;          // value index or -1
    cplx at(int i, int j) const;           // 0 outside the pattern
    void add(int i, int j, cplx v);        // throws outside the pattern
    double max_abs() const;
};

CsrMatrix csr_from_triplets(int nrows, int ncols,
                            std::vector<std::tuple<int, int, cplx>> trips);
CsrMatrix csr_identity(int n);

/// Entrywise a*A + b*B; A and B must share their sparsity pattern.
CsrMatrix csr_combine(cplx a, const CsrMatrix& A, cplx b, const CsrMatrix& B);
CsrMatrix csr_combine(cplx a, const CsrMatrix& A, cplx b, const CsrMatrix& B,
                      cplx c, const CsrMatrix& C);

/// max |A_ij - A_ji| over the pattern; exact zero for assembled forms.
double max_asymmetry(const CsrMatrix& A);

/// y = A x. The parallel version is row-parallel and bit-identical to the
/// serial reference for any thread count.
void spmv_serial(const CsrMatrix& A, const cplx* x, cplx* y);
void spmv(const CsrMatrix& A, const cplx* x, cplx* y, int nthreads);
Eigen::VectorXcd matvec(const CsrMatrix& A, const Eigen::VectorXcd& x);

Eigen::SparseMatrix<cplx> to_eigen(const CsrMatrix& A);

/// Dense block A(rows, cols) in the given index order.
Eigen::MatrixXcd dense_block(const CsrMatrix& A, const std::vector<int>& rows,
                             const std::vector<int>& cols);

/// CSR block A(rows, cols); `cols` must be sorted ascending.
CsrMatrix csr_block(const CsrMatrix& A, const std::vector<int>& rows,
                    const std::vector<int>& cols);

} // namespace gibc

#endif

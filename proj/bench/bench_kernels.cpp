// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones, with a bitwise equality check on the results.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "gibc/assembly.hpp"
#include "gibc/csr.hpp"
#include "gibc/fe_space.hpp"
#include "gibc/mesh.hpp"

using namespace gibc;

namespace {

double seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

bool bitwise_equal(const CsrMatrix& a, const CsrMatrix& b) {
    return a.row_ptr == b.row_ptr && a.col_idx == b.col_idx &&
           std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(cplx)) == 0;
}

} // namespace

int main(int argc, char** argv) {
    int nx = 128, ny = 64, degree = 2, reps = 3;
    std::vector<int> threads = {1, 2, 4};
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&] { return std::stoi(argv[++i]); };
        if (a == "--nx") nx = next();
        else if (a == "--ny") ny = next();
        else if (a == "--degree") degree = next();
        else if (a == "--reps") reps = next();
        else {
            std::fprintf(stderr, "usage: gibc_bench [--nx N] [--ny N] [--degree D] [--reps R]\n");
            return 1;
        }
    }

    const FeSpace space = make_space(build_rect_mesh(nx, ny), degree);
    std::printf("mesh %dx%d P%d: %d dofs, %d elements\n", nx, ny, degree, space.ndofs(),
                space.nelems());

    double t0 = seconds();
    VolumeMatrices ref;
    for (int r = 0; r < reps; ++r) ref = assemble_volume_serial(space);
    const double t_serial = (seconds() - t0) / reps;
    std::printf("%-28s %8.4f s\n", "assemble serial reference", t_serial);

    for (int nt : threads) {
        t0 = seconds();
        VolumeMatrices par;
        for (int r = 0; r < reps; ++r) par = assemble_volume(space, nt);
        const double t = (seconds() - t0) / reps;
        const bool same = bitwise_equal(ref.stiffness, par.stiffness) &&
                          bitwise_equal(ref.mass, par.mass);
        std::printf("assemble gather, %d thread%s  %8.4f s  speedup %.2fx  bit-identical: %s\n", nt,
                    nt == 1 ? " " : "s", t, t_serial / t, same ? "yes" : "NO");
        if (!same) return 1;
    }

    const CsrMatrix& K = ref.stiffness;
    std::vector<cplx> x(space.ndofs()), y_ref(space.ndofs()), y(space.ndofs());
    for (int i = 0; i < space.ndofs(); ++i) x[i] = cplx(std::sin(0.1 * i), std::cos(0.2 * i));

    const int spmv_reps = 200;
    t0 = seconds();
    for (int r = 0; r < spmv_reps; ++r) spmv_serial(K, x.data(), y_ref.data());
    const double t_spmv = (seconds() - t0) / spmv_reps;
    std::printf("%-28s %8.6f s\n", "spmv serial reference", t_spmv);
    for (int nt : threads) {
        t0 = seconds();
        for (int r = 0; r < spmv_reps; ++r) spmv(K, x.data(), y.data(), nt);
        const double t = (seconds() - t0) / spmv_reps;
        const bool same = std::memcmp(y.data(), y_ref.data(), y.size() * sizeof(cplx)) == 0;
        std::printf("spmv row-parallel, %d thread%s %8.6f s  speedup %.2fx  bit-identical: %s\n",
                    nt, nt == 1 ? " " : "s", t, t_spmv / t, same ? "yes" : "NO");
        if (!same) return 1;
    }
    return 0;
}

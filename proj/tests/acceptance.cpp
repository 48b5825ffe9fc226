// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gibc/assembly.hpp"
#include "gibc/cli.hpp"
#include "gibc/dtn.hpp"
#include "gibc/experiments.hpp"
#include "gibc/infsup.hpp"
#include "gibc/io.hpp"
#include "gibc/problem.hpp"
#include "gibc/singularities.hpp"

using namespace gibc;
namespace fs = std::filesystem;

namespace {

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

struct Check {
    bool ok = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. good-sign system matrix is the Gram matrix; inf-sup exactly 1
void criterion_identity(Check& c) {
    for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
        ProblemSpec spec;
        spec.alpha = alpha;
        spec.sign = +1;
        spec.weight = WeightKind::HalfPower;
        spec.shift = 1.0;
        const FeSpace s = make_space(build_rect_mesh(8, 4), 2);
        const AssembledProblem p = assemble_problem(spec, s);
        double maxdiff = 0.0;
        for (int k = 0; k < p.system.nnz(); ++k)
            maxdiff = std::max(maxdiff, std::abs(p.system.values[k] - p.gram.values[k]));
        c.require(maxdiff <= 1e-12, "alpha=" + fmt(alpha) + ": |S-G| = " + fmt(maxdiff));
        const double beta = smallest_infsup(p.system, p.gram).beta;
        c.require(std::abs(beta - 1.0) <= 1e-8,
                  "alpha=" + fmt(alpha) + ": beta = " + fmt(beta));
    }
}

StudyConfig study_config(WeightKind w, double alpha, int sign) {
    StudyConfig cfg;
    cfg.spec.alpha = alpha;
    cfg.spec.sign = sign;
    cfg.spec.weight = w;
    cfg.degree = 2;
    cfg.nx = 8;
    cfg.ny = 4;
    cfg.levels = 5;
    return cfg;
}

// 2. Fredholm regime: decreasing differences, stable inf-sup
void criterion_fredholm(Check& c) {
    for (double alpha : {0.5, 0.95}) {
        const RefinementReport rep = refinement_study(study_config(WeightKind::HalfPower, alpha, -1));
        std::vector<double> d, beta;
        for (const auto& r : rep.records) {
            if (r.rel_l2_diff >= 0.0) d.push_back(r.rel_l2_diff);
            if (r.infsup_beta >= 0.0) beta.push_back(r.infsup_beta);
        }
        c.require(d.size() == 4, "alpha=" + fmt(alpha) + ": missing levels");
        for (std::size_t i = 1; i < d.size(); ++i)
            c.require(d[i] < d[i - 1] && d[i] <= 0.7 * d[i - 1],
                      "alpha=" + fmt(alpha) + ": d ratio " + fmt(d[i] / d[i - 1]));
        c.require(beta.size() == 5, "alpha=" + fmt(alpha) + ": missing betas");
        const double change = std::abs(beta[4] - beta[3]) / beta[3];
        c.require(change < 0.10, "alpha=" + fmt(alpha) + ": beta change " + fmt(change));
    }
}

// 3. non-Fredholm regime: inf-sup collapse, no convergence
void criterion_nonfredholm(Check& c) {
    for (const WeightKind w : {WeightKind::HalfPower, WeightKind::SignChanging}) {
        const std::string tag = to_string(w);
        const RefinementReport rep = refinement_study(study_config(w, 1.0, -1));
        std::vector<double> d, beta;
        for (const auto& r : rep.records) {
            if (r.rel_l2_diff >= 0.0) d.push_back(r.rel_l2_diff);
            if (r.infsup_beta >= 0.0) beta.push_back(r.infsup_beta);
        }
        c.require(beta.size() == 5, tag + ": missing betas");
        for (std::size_t i = 1; i < beta.size(); ++i)
            c.require(beta[i] < beta[i - 1], tag + ": beta not decreasing at level " +
                                                 std::to_string(i) + " (" + fmt(beta[i]) + ")");
        c.require(beta.front() >= 2.0 * beta.back(),
                  tag + ": decay factor " + fmt(beta.front() / beta.back()));
        c.require(!d.empty(), tag + ": no difference records");
        for (double v : d) c.require(v >= 0.1, tag + ": d = " + fmt(v) + " fell below 0.1");
    }
}

// 4. singular exponents
void criterion_singular(Check& c) {
    const double tau = solve_tanh_dispersion();
    c.require(std::abs(std::tanh(tau * 3.14159265358979323846) - tau) <= 1e-14,
              "tanh residual too large");
    c.require(tau > 0.9 && tau < 1.0, "root outside (0.9, 1.0)");
    // independent bisection oracle
    double lo = 0.9, hi = 1.0;
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (std::tanh(mid * 3.14159265358979323846) - mid > 0.0 ? lo : hi) = mid;
    }
    c.require(std::abs(tau - 0.5 * (lo + hi)) <= 1e-10, "disagrees with bisection oracle");
    c.require(dispersion_residual(cplx(0.0, 1.0), DispersionCase::SignChanging) == cplx(0.0),
              "sign-changing residual at i not exactly zero");
}

// 5. Weyl growth: closed form vs quadrature, paper lower bound, discrete trend
void criterion_weyl(Check& c) {
    const double tau = solve_tanh_dispersion();
    const double c2 = std::cosh(tau * 3.14159265358979323846) *
                      std::cosh(tau * 3.14159265358979323846);
    for (int n : {1, 10, 100}) {
        const double closed = weyl_boundary_energy_closed(n, tau);
        const double quad = weyl_boundary_energy_quadrature(n, tau);
        c.require(std::abs(closed - quad) <= 1e-8 * closed,
                  "n=" + std::to_string(n) + ": quadrature mismatch " +
                      fmt(std::abs(closed - quad) / closed));
        c.require(closed >= c2 * tau * tau * 0.5 * n, "n=" + std::to_string(n) + ": bound violated");
    }

    const int levels = 5;
    const auto rows = weyl_diagnostic(8, 4, 2, levels, {1, 2, 3, 4, 5});
    double prev_ratio = -1.0;
    int finest_count = 0;
    for (const auto& r : rows) {
        if (r.level != levels - 1 || r.n == 0) continue;
        ++finest_count;
        if (prev_ratio >= 0.0)
            c.require(r.ratio < prev_ratio,
                      "ratio not decreasing at n=" + std::to_string(r.n));
        prev_ratio = r.ratio;
    }
    c.require(finest_count >= 2, "too few Weyl indices on the finest mesh");
}

// 6. reduction equivalence across the weight-by-alpha grid
void criterion_equivalence(Check& c) {
    const FeSpace s = make_space(build_rect_mesh(8, 4), 2);
    for (const WeightKind w : {WeightKind::HalfPower, WeightKind::SignChanging, WeightKind::Bridge}) {
        const DtnOperator dtn = algebraic_dtn(s, trace_set_for(w));
        for (double alpha : {0.0, 0.5, 1.0}) {
            ProblemSpec spec;
            spec.alpha = alpha;
            spec.sign = -1;
            spec.weight = w;
            const double diff = equivalence_check(spec, s, dtn);
            c.require(diff <= 1e-10,
                      to_string(w) + ", alpha=" + fmt(alpha) + ": trace diff " + fmt(diff));
        }
    }
}

// 7. algebraic DtN constant-mode Rayleigh quotient converges to tanh(1)
void criterion_dtn(Check& c) {
    Mesh mesh = build_rect_mesh(8, 4);
    double prev_err = -1.0;
    for (int level = 0; level <= 4; ++level) {
        const FeSpace s = make_space(mesh, 1);
        const DtnOperator dtn = algebraic_dtn(s, TraceSet::Gamma);
        const Eigen::MatrixXcd M = trace_mass_matrix(s, dtn.grid);
        const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(dtn.grid.size());
        const double r = std::real(ones.dot(dtn.matrix * ones)) / std::real(ones.dot(M * ones));
        const double err = std::abs(r - std::tanh(1.0)) / std::tanh(1.0);
        if (prev_err >= 0.0)
            c.require(err < prev_err, "error not decreasing at level " + std::to_string(level));
        prev_err = err;
        if (level == 4) c.require(err < 0.01, "level-4 error " + fmt(err));
        if (level < 4) mesh = refine(mesh);
    }
}

// 8. Poincare eigenvalues
void criterion_poincare(Check& c) {
    const double mu0 = poincare_eigenvalue(0.0, 512).mu;
    const double target = 2.4674011002723395;  // (pi/2)^2
    c.require(std::abs(mu0 - target) <= 0.005 * target, "alpha=0: mu = " + fmt(mu0));

    const auto rows = poincare_study(1.0, 128, 3);
    const double mu_a = rows[1].mu, mu_b = rows[2].mu;
    c.require(mu_b > 0.0, "alpha=1: nonpositive eigenvalue");
    c.require(std::abs(mu_b - mu_a) < 0.01 * mu_b,
              "alpha=1: relative change " + fmt(std::abs(mu_b - mu_a) / mu_b));
}

// 9. Hoelder property suite
void criterion_hoelder(Check& c) {
    const FeSpace s = make_space(build_rect_mesh(16, 4), 2);
    const auto dofs = boundary_dofs_ordered(s, TraceSet::GammaPlus);
    std::mt19937_64 rng(0xfeedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    long violations = 0;
    for (double alpha : {0.0, 0.3, 0.5, 0.9}) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<cplx> full(s.ndofs(), cplx(0.0));
            for (const auto& d : dofs) full[d.dof] = cplx(u(rng), u(rng));
            const double norm =
                std::sqrt(trace_xalpha_norm_sq(s, TraceSet::GammaPlus, alpha, full.data()));
            for (std::size_t i = 0; i < dofs.size(); ++i) {
                if (dofs[i].x <= 0.0) continue;
                for (std::size_t j = i; j < dofs.size(); ++j) {
                    if (dofs[j].x <= 0.0) continue;
                    const double x = dofs[i].x, y = dofs[j].x;
                    const double bound = std::sqrt(
                        (std::pow(y, 1.0 - alpha) - std::pow(x, 1.0 - alpha)) / (1.0 - alpha));
                    if (std::abs(full[dofs[j].dof] - full[dofs[i].dof]) > bound * norm)
                        ++violations;
                }
            }
        }
    }
    c.require(violations == 0, std::to_string(violations) + " violations");
}

// 10. determinism and file round trips
void criterion_determinism(Check& c) {
    const fs::path d1 = fs::temp_directory_path() / "gibc_acc_det1";
    const fs::path d2 = fs::temp_directory_path() / "gibc_acc_det2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    fs::create_directories(d1);
    fs::create_directories(d2);

    auto run = [](const fs::path& d) {
        std::vector<const char*> argv = {"gibc_fem", "refine-study", "--alpha", "0.5", "--sign",
                                         "-1",       "--weight",     "half-power", "--degree", "1",
                                         "--nx",     "4",            "--ny",       "2",        "--levels",
                                         "3",        "--out",        d.c_str()};
        return cli_run(static_cast<int>(argv.size()), argv.data());
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    c.require(run(d1) == 0 && run(d2) == 0, "study run failed");
    c.require(slurp(d1 / "refine_study.csv") == slurp(d2 / "refine_study.csv"),
              "CSV not bit-identical");
    c.require(slurp(d1 / "refine_study.json") == slurp(d2 / "refine_study.json"),
              "JSON not bit-identical");

    // emitted CSV re-parses to the exact in-memory values
    StudyConfig cfg;
    cfg.spec.alpha = 0.5;
    cfg.spec.sign = -1;
    cfg.spec.weight = WeightKind::HalfPower;
    cfg.degree = 1;
    cfg.nx = 4;
    cfg.ny = 2;
    cfg.levels = 3;
    const RefinementReport rep = refinement_study(cfg);
    const CsvTable t = read_csv((d1 / "refine_study.csv").string());
    c.require(t.rows.size() == rep.records.size(), "row count mismatch");
    for (std::size_t i = 0; i < t.rows.size() && i < rep.records.size(); ++i) {
        c.require(std::strtod(t.rows[i][1].c_str(), nullptr) == rep.records[i].h,
                  "h does not round-trip");
        c.require(std::strtod(t.rows[i][3].c_str(), nullptr) == rep.records[i].l2_norm,
                  "l2 does not round-trip");
        c.require(std::strtod(t.rows[i][6].c_str(), nullptr) == rep.records[i].infsup_beta,
                  "beta does not round-trip");
    }

    // VTK and MatrixMarket round trips
    const FeSpace s = make_space(build_rect_mesh(4, 2), 1);
    ProblemSpec spec = cfg.spec;
    const AssembledProblem p = assemble_problem(spec, s);
    const DiscreteSolution sol = solve_problem(p);
    write_solution_vtk((d1 / "u.vtk").string(), s, sol.values);
    const VtkData vtk = read_vtk((d1 / "u.vtk").string());
    bool vtk_exact = vtk.points.size() == s.mesh.nodes.size();
    for (std::size_t i = 0; vtk_exact && i < vtk.points.size(); ++i)
        vtk_exact = vtk.point_data.at("re_u")[i] == sol.values[static_cast<int>(i)].real() &&
                    vtk.point_data.at("im_u")[i] == sol.values[static_cast<int>(i)].imag();
    c.require(vtk_exact, "VTK does not round-trip exactly");

    write_matrix_market((d1 / "s.mtx").string(), p.system);
    const CsrMatrix back = read_matrix_market((d1 / "s.mtx").string());
    bool mm_exact = back.nnz() == p.system.nnz();
    for (int k = 0; mm_exact && k < back.nnz(); ++k)
        mm_exact = back.values[k] == p.system.values[k];
    c.require(mm_exact, "MatrixMarket does not round-trip exactly");

    fs::remove_all(d1);
    fs::remove_all(d2);
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Check&)> fn;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria = {
        {"1 identity case (S == Gram, beta == 1)", criterion_identity, 10.0},
        {"2 Fredholm regime (alpha 0.5, 0.95)", criterion_fredholm, 120.0},
        {"3 non-Fredholm regime (alpha 1)", criterion_nonfredholm, 120.0},
        {"4 singular exponents", criterion_singular, 1.0},
        {"5 Weyl growth and diagnostic", criterion_weyl, 120.0},
        {"6 reduction equivalence", criterion_equivalence, 60.0},
        {"7 spectral DtN convergence", criterion_dtn, 60.0},
        {"8 Poincare eigenvalues", criterion_poincare, 10.0},
        {"9 Hoelder property suite", criterion_hoelder, 30.0},
        {"10 determinism and round trips", criterion_determinism, 60.0},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        const double t0 = now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double dt = now() - t0;
        if (dt >= cr.budget_seconds)
            c.require(false, "runtime " + fmt(dt) + " s over budget " + fmt(cr.budget_seconds));
        if (c.ok) {
            std::printf("[PASS] criterion %-42s (%.1f s)\n", cr.name, dt);
        } else {
            std::printf("[FAIL] criterion %-42s (%.1f s): %s\n", cr.name, dt,
                        c.detail.str().c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}

#include "gibc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "gibc/errors.hpp"
#include "gibc/infsup.hpp"
#include "gibc/quadrature.hpp"
#include "gibc/sparse_lu.hpp"

namespace gibc {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string StudyConfig::canonical() const {
    std::ostringstream os;
    os << "alpha=" << spec.alpha << ";sign=" << spec.sign << ";weight=" << to_string(spec.weight)
       << ";source=" << to_string(spec.source) << ";shift=" << spec.shift.real() << "+"
       << spec.shift.imag() << "i;degree=" << degree << ";nx=" << nx << ";ny=" << ny
       << ";levels=" << levels << ";converge_ratio=" << converge_ratio
       << ";dtn_modes=" << dtn_modes;
    return os.str();
}

std::uint64_t StudyConfig::hash() const { return fnv1a(canonical()); }

namespace {

double wall_now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

} // namespace

RefinementReport refinement_study(const StudyConfig& cfg) {
    if (cfg.levels < 2) throw std::invalid_argument("refinement study needs at least 2 levels");
    validate(cfg.spec);

    RefinementReport report;
    report.config = cfg;
    report.config_hash = cfg.hash();

    Mesh mesh = build_rect_mesh(cfg.nx, cfg.ny);
    FeSpace prev_space;
    Eigen::VectorXcd prev_values;
    bool have_prev = false;

    for (int level = 0; level < cfg.levels; ++level) {
        const double t0 = wall_now();
        const FeSpace space = make_space(mesh, cfg.degree);
        RefinementRecord rec;
        rec.level = level;
        rec.h = mesh.mesh_size();
        rec.ndofs = space.ndofs();

        const AssembledProblem p = assemble_problem(cfg.spec, space);
        try {
            const DiscreteSolution sol = solve_problem(p);
            rec.l2_norm = sol.l2;
            rec.valpha_norm = sol.valpha;
            if (have_prev) {
                Eigen::VectorXcd prolonged(space.ndofs());
                for (int i = 0; i < space.ndofs(); ++i)
                    prolonged[i] = evaluate(prev_space, prev_values.data(), space.dof_coords[i][0],
                                            space.dof_coords[i][1]);
                const Eigen::VectorXcd e = sol.values - prolonged;
                const double den = std::real(sol.values.dot(matvec(p.mass, sol.values)));
                const double num = std::real(e.dot(matvec(p.mass, e)));
                rec.rel_l2_diff = std::sqrt(std::max(0.0, num) / std::max(1e-300, den));
            }
            prev_space = space;
            prev_values = sol.values;
            have_prev = true;
        } catch (const NumericallySingular&) {
            rec.status = "singular";
            have_prev = false;
        }

        try {
            const InfSupResult is = smallest_infsup(p.system, p.gram);
            rec.infsup_beta = is.beta;
            rec.infsup_iterations = is.iterations;
        } catch (const NonConvergence& e) {
            if (rec.status == "ok") rec.status = "non-convergence";
            rec.infsup_iterations = e.iterations;
        }

        rec.wall_seconds = wall_now() - t0;
        report.records.push_back(rec);
        if (level + 1 < cfg.levels) mesh = refine(mesh);
    }

    // Verdict from the successive differences, thresholds per config.
    bool converging = true;
    bool any = false;
    double prev_d = -1.0;
    for (const auto& rec : report.records) {
        if (rec.rel_l2_diff < 0.0) continue;
        if (prev_d >= 0.0) {
            any = true;
            if (!(rec.rel_l2_diff < prev_d && rec.rel_l2_diff <= cfg.converge_ratio * prev_d))
                converging = false;
        }
        prev_d = rec.rel_l2_diff;
    }
    report.verdict = (any && converging) ? "converging" : "non-converging";
    return report;
}

InfSupReport infsup_study(const StudyConfig& cfg) {
    validate(cfg.spec);
    InfSupReport report;
    report.config = cfg;
    report.config_hash = cfg.hash();

    Mesh mesh = build_rect_mesh(cfg.nx, cfg.ny);
    for (int level = 0; level < cfg.levels; ++level) {
        const FeSpace space = make_space(mesh, cfg.degree);
        InfSupRecord rec;
        rec.level = level;
        rec.h = mesh.mesh_size();
        rec.ndofs = space.ndofs();
        const AssembledProblem p = assemble_problem(cfg.spec, space);
        try {
            const InfSupResult is = smallest_infsup(p.system, p.gram);
            rec.beta = is.beta;
            rec.iterations = is.iterations;
        } catch (const NonConvergence& e) {
            rec.status = "non-convergence";
            rec.iterations = e.iterations;
        }
        report.records.push_back(rec);
        if (level + 1 < cfg.levels) mesh = refine(mesh);
    }
    return report;
}

namespace {

// Weighted P1 pencil on (0,1) with phi(1)=0: dofs 0..cells-1.
void poincare_matrices(double alpha, int cells, CsrMatrix& B, CsrMatrix& M) {
    const int n = cells;  // constrained dof count
    std::vector<std::tuple<int, int, cplx>> bt, mt;
    for (int c = 0; c < cells; ++c) {
        const double x0 = static_cast<double>(c) / cells;
        const double x1 = static_cast<double>(c + 1) / cells;
        const double h = x1 - x0;
        double stiff;
        if (x0 == 0.0) {
            const QuadRule1d gj = gauss_jacobi_left(8, 0.0, x1, alpha);
            double sum = 0.0;
            for (double w : gj.w) sum += w;
            stiff = sum / (h * h);
        } else {
            const QuadRule1d gl = gauss_legendre(8, x0, x1);
            double sum = 0.0;
            for (std::size_t q = 0; q < gl.x.size(); ++q) sum += gl.w[q] * std::pow(gl.x[q], alpha);
            stiff = sum / (h * h);
        }
        const double m00 = h / 3.0, m01 = h / 6.0;
        const int a = c, b = c + 1;
        auto put = [&](int i, int j, double sv, double mv) {
            if (i >= n || j >= n) return;  // phi(1)=0 eliminated
            bt.emplace_back(i, j, sv);
            mt.emplace_back(i, j, mv);
        };
        put(a, a, stiff, m00);
        put(a, b, -stiff, m01);
        put(b, a, -stiff, m01);
        put(b, b, stiff, m00);
    }
    B = csr_from_triplets(n, n, std::move(bt));
    M = csr_from_triplets(n, n, std::move(mt));
    B.symmetric = M.symmetric = true;
}

} // namespace

PoincareRecord poincare_eigenvalue(double alpha, int cells) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (cells < 2) throw std::invalid_argument("need at least 2 cells");
    CsrMatrix B, M;
    poincare_matrices(alpha, cells, B, M);
    const LuFactor blu(B);

    const int n = B.nrows;
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(n);
    double prev = -1.0;
    constexpr int kMaxIt = 500;
    for (int it = 1; it <= kMaxIt; ++it) {
        const Eigen::VectorXcd mx = matvec(M, x);
        const double mu = std::real(x.dot(matvec(B, x))) / std::real(x.dot(mx));
        if (prev > 0.0 && std::abs(mu - prev) <= 1e-10 * mu)
            return {cells, 1.0 / cells, mu, it};
        prev = mu;
        Eigen::VectorXcd y = blu.solve(mx);
        x = y / std::sqrt(std::real(y.dot(matvec(M, y))));
    }
    throw NonConvergence(kMaxIt, "Poincare eigensolver did not converge");
}

std::vector<PoincareRecord> poincare_study(double alpha, int base_cells, int refinements) {
    std::vector<PoincareRecord> out;
    int cells = base_cells;
    for (int k = 0; k < refinements; ++k) {
        out.push_back(poincare_eigenvalue(alpha, cells));
        cells *= 2;
    }
    return out;
}

double equivalence_check(const ProblemSpec& spec, const FeSpace& s, const DtnOperator& dtn) {
    const Reduced1dProblem reduced = make_reduced_problem(spec, s, dtn);
    const Eigen::VectorXcd phi = solve_reduced(reduced);

    const DiscreteSolution mono = solve_problem(spec, s);
    Eigen::VectorXcd trace(reduced.grid.size());
    for (int k = 0; k < reduced.grid.size(); ++k) trace[k] = mono.values[reduced.grid.dofs[k]];

    const double scale = trace.cwiseAbs().maxCoeff();
    return (phi - trace).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
}

} // namespace gibc

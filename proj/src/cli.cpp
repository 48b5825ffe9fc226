#include "gibc/cli.hpp"

#include <complex>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gibc/errors.hpp"
#include "gibc/experiments.hpp"
#include "gibc/io.hpp"
#include "gibc/singularities.hpp"

namespace gibc {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliState {
    std::string out = ".";
    double alpha = 1.0;
    int sign = -1;
    std::string weight = "half-power";
    std::string source = "cos-x";
    std::string shift = "1";
    int degree = 2;
    int nx = 8, ny = 4;
    int levels = 5;
    double ratio = 0.7;
    std::string dtn = "algebraic";
    int modes = 64;
    int refinements = 4;
    int cells = 64;
    std::vector<int> weyl_n = {1, 2, 3, 4, 6, 8};
    bool dump_vtk = false;
};

ProblemSpec spec_from(const CliState& st) {
    ProblemSpec spec;
    spec.alpha = st.alpha;
    spec.sign = st.sign;
    spec.weight = weight_kind_from_string(st.weight);
    spec.source = source_kind_from_string(st.source);
    if (st.shift == "1")
        spec.shift = cplx(1.0, 0.0);
    else if (st.shift == "1+i")
        spec.shift = cplx(1.0, 1.0);
    else
        throw CLI::ValidationError("--shift", "shift must be 1 or 1+i");
    return spec;
}

void check_domain(const CliState& st) {
    if (st.alpha < 0.0) throw CLI::ValidationError("--alpha", "alpha must be >= 0");
    if (st.sign != 1 && st.sign != -1) throw CLI::ValidationError("--sign", "sign must be 1 or -1");
    if (st.degree != 1 && st.degree != 2)
        throw CLI::ValidationError("--degree", "degree must be 1 or 2");
    if (st.nx < 2 || st.nx % 2 != 0) throw CLI::ValidationError("--nx", "nx must be even and >= 2");
    if (st.ny < 1) throw CLI::ValidationError("--ny", "ny must be >= 1");
}

std::string path_in(const CliState& st, const std::string& name) {
    return (fs::path(st.out) / name).string();
}

void write_json_atomic(const std::string& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

json config_json(const StudyConfig& cfg) {
    return json{{"alpha", cfg.spec.alpha},
                {"sign", cfg.spec.sign},
                {"weight", to_string(cfg.spec.weight)},
                {"source", to_string(cfg.spec.source)},
                {"shift_re", cfg.spec.shift.real()},
                {"shift_im", cfg.spec.shift.imag()},
                {"degree", cfg.degree},
                {"nx", cfg.nx},
                {"ny", cfg.ny},
                {"levels", cfg.levels},
                {"converge_ratio", cfg.converge_ratio},
                {"config_hash", cfg.hash()}};
}

int run_mesh(const CliState& st) {
    check_domain(st);
    Mesh m = build_rect_mesh(st.nx, st.ny);
    for (int l = 0; l < st.levels - 1; ++l) m = refine(m);
    write_mesh_vtk(path_in(st, "mesh.vtk"), m);
    double area = 0.0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        area += triangle_area(m, static_cast<int>(t));
    write_json_atomic(path_in(st, "mesh.json"),
                      json{{"status", "ok"},
                           {"nodes", m.nodes.size()},
                           {"triangles", m.triangles.size()},
                           {"level", m.level},
                           {"area", area}});
    return 0;
}

int run_solve(const CliState& st) {
    check_domain(st);
    const ProblemSpec spec = spec_from(st);
    const FeSpace space = make_space(build_rect_mesh(st.nx, st.ny), st.degree);
    const DiscreteSolution sol = solve_problem(spec, space);
    write_solution_vtk(path_in(st, "solution.vtk"), space, sol.values);
    StudyConfig cfg{spec, st.degree, st.nx, st.ny, 1, st.ratio, st.modes};
    write_json_atomic(path_in(st, "norms.json"),
                      json{{"status", "ok"},
                           {"l2", sol.l2},
                           {"h1", sol.h1},
                           {"valpha", sol.valpha},
                           {"ndofs", space.ndofs()},
                           {"config", config_json(cfg)}});
    return 0;
}

int run_refine_study(const CliState& st) {
    check_domain(st);
    StudyConfig cfg{spec_from(st), st.degree, st.nx, st.ny, st.levels, st.ratio, st.modes};
    const RefinementReport report = refinement_study(cfg);

    CsvTable csv;
    csv.header = {"level", "h",          "ndofs",  "l2_norm",     "valpha_norm", "rel_l2_diff",
                  "beta",  "iterations", "status", "config_hash"};
    const std::string hash = std::to_string(report.config_hash);
    for (const auto& r : report.records) {
        csv.rows.push_back({std::to_string(r.level), format_double(r.h), std::to_string(r.ndofs),
                            format_double(r.l2_norm), format_double(r.valpha_norm),
                            format_double(r.rel_l2_diff), format_double(r.infsup_beta),
                            std::to_string(r.infsup_iterations), r.status, hash});
        std::cerr << "level " << r.level << " done in " << r.wall_seconds << " s\n";
    }
    write_csv(path_in(st, "refine_study.csv"), csv);

    json rows = json::array();
    for (const auto& r : report.records)
        rows.push_back(json{{"level", r.level},
                            {"h", r.h},
                            {"ndofs", r.ndofs},
                            {"l2_norm", r.l2_norm},
                            {"valpha_norm", r.valpha_norm},
                            {"rel_l2_diff", r.rel_l2_diff},
                            {"beta", r.infsup_beta},
                            {"iterations", r.infsup_iterations},
                            {"status", r.status}});
    write_json_atomic(path_in(st, "refine_study.json"),
                      json{{"status", "ok"},
                           {"study", "refine-study"},
                           {"verdict", report.verdict},
                           {"config", config_json(cfg)},
                           {"rows", rows}});

    if (st.dump_vtk) {
        Mesh m = build_rect_mesh(st.nx, st.ny);
        for (int l = 0; l < st.levels; ++l) {
            const FeSpace space = make_space(m, st.degree);
            try {
                const DiscreteSolution sol = solve_problem(cfg.spec, space);
                write_solution_vtk(path_in(st, "solution_l" + std::to_string(l) + ".vtk"), space,
                                   sol.values);
            } catch (const NumericallySingular&) {
                // already recorded in the study
            }
            if (l + 1 < st.levels) m = refine(m);
        }
    }
    return 0;
}

int run_infsup(const CliState& st) {
    check_domain(st);
    StudyConfig cfg{spec_from(st), st.degree, st.nx, st.ny, st.levels, st.ratio, st.modes};
    const InfSupReport report = infsup_study(cfg);
    CsvTable csv;
    csv.header = {"level", "h", "ndofs", "beta", "iterations", "status", "config_hash"};
    const std::string hash = std::to_string(report.config_hash);
    for (const auto& r : report.records)
        csv.rows.push_back({std::to_string(r.level), format_double(r.h), std::to_string(r.ndofs),
                            format_double(r.beta), std::to_string(r.iterations), r.status, hash});
    write_csv(path_in(st, "infsup.csv"), csv);
    json rows = json::array();
    for (const auto& r : report.records)
        rows.push_back(json{{"level", r.level},
                            {"h", r.h},
                            {"ndofs", r.ndofs},
                            {"beta", r.beta},
                            {"iterations", r.iterations},
                            {"status", r.status}});
    write_json_atomic(path_in(st, "infsup.json"), json{{"status", "ok"},
                                                       {"study", "infsup"},
                                                       {"config", config_json(cfg)},
                                                       {"rows", rows}});
    return 0;
}

int run_reduce(const CliState& st) {
    check_domain(st);
    const ProblemSpec spec = spec_from(st);
    if (spec.shift != cplx(1.0)) throw CLI::ValidationError("--shift", "reduce requires shift 1");
    const FeSpace space = make_space(build_rect_mesh(st.nx, st.ny), st.degree);

    DtnOperator dtn;
    if (st.dtn == "algebraic") {
        dtn = algebraic_dtn(space, trace_set_for(spec.weight));
    } else if (st.dtn == "spectral") {
        if (spec.weight != WeightKind::SignChanging)
            throw CLI::ValidationError("--dtn", "spectral DtN requires --weight sign-changing");
        dtn = spectral_dtn_operator(st.modes, space);
        CsvTable eigs;
        eigs.header = {"k", "beta_k", "d_k"};
        for (int k = 0; k < dtn.spectral.modes; ++k)
            eigs.rows.push_back({std::to_string(k), format_double(dtn.spectral.beta_k[k]),
                                 format_double(dtn.spectral.d_k[k])});
        write_csv(path_in(st, "dtn_eigenvalues.csv"), eigs);
    } else {
        throw CLI::ValidationError("--dtn", "dtn must be algebraic or spectral");
    }

    const Reduced1dProblem reduced = make_reduced_problem(spec, space, dtn);
    const Eigen::VectorXcd phi = solve_reduced(reduced);
    CsvTable out;
    out.header = {"x", "re_phi", "im_phi"};
    for (int k = 0; k < reduced.grid.size(); ++k)
        out.rows.push_back({format_double(reduced.grid.x[k]), format_double(phi[k].real()),
                            format_double(phi[k].imag())});
    write_csv(path_in(st, "reduced.csv"), out);

    const double diff = equivalence_check(spec, space, dtn);
    StudyConfig cfg{spec, st.degree, st.nx, st.ny, 1, st.ratio, st.modes};
    write_json_atomic(path_in(st, "equivalence.json"),
                      json{{"status", "ok"},
                           {"dtn", st.dtn},
                           {"max_rel_trace_diff", diff},
                           {"config", config_json(cfg)}});
    return 0;
}

int run_singular(const CliState& st) {
    const double tau = solve_tanh_dispersion();
    const cplx itau(0.0, tau);
    const cplx r_plus = dispersion_residual(itau, DispersionCase::GammaPlus);
    const cplx r_sign = dispersion_residual(cplx(0.0, 1.0), DispersionCase::SignChanging);
    std::cout << "tau = " << format_double(tau) << "\n"
              << "|tanh(tau*pi) - tau| = "
              << format_double(std::abs(std::tanh(tau * 3.14159265358979323846) - tau)) << "\n"
              << "|dispersion residual at lambda = i*tau| = " << format_double(std::abs(r_plus))
              << "\n"
              << "|sign-changing residual at lambda = i| = " << format_double(std::abs(r_sign))
              << "\n";
    write_json_atomic(path_in(st, "singular.json"),
                      json{{"status", "ok"},
                           {"tau", tau},
                           {"gamma_plus_residual_at_itau", std::abs(r_plus)},
                           {"sign_changing_residual_at_i", std::abs(r_sign)}});
    return 0;
}

int run_weyl(const CliState& st) {
    check_domain(st);
    const auto rows = weyl_diagnostic(st.nx, st.ny, st.degree, st.levels, st.weyl_n);
    CsvTable csv;
    csv.header = {"n", "level", "h", "norm_v1h", "rho_n", "ratio", "closed_form"};
    for (const auto& r : rows)
        csv.rows.push_back({std::to_string(r.n), std::to_string(r.level), format_double(r.h),
                            format_double(r.norm_v1h), format_double(r.rho),
                            format_double(r.ratio), format_double(r.boundary_energy_closed)});
    write_csv(path_in(st, "weyl.csv"), csv);
    write_json_atomic(path_in(st, "weyl.json"),
                      json{{"status", "ok"}, {"rows", csv.rows.size()}});
    return 0;
}

int run_poincare(const CliState& st) {
    if (st.alpha < 0.0) throw CLI::ValidationError("--alpha", "alpha must be >= 0");
    const auto rows = poincare_study(st.alpha, st.cells, st.refinements);
    CsvTable csv;
    csv.header = {"cells", "h", "mu", "iterations"};
    for (const auto& r : rows)
        csv.rows.push_back({std::to_string(r.cells), format_double(r.h), format_double(r.mu),
                            std::to_string(r.iterations)});
    write_csv(path_in(st, "poincare.csv"), csv);
    write_json_atomic(path_in(st, "poincare.json"),
                      json{{"status", "ok"},
                           {"alpha", st.alpha},
                           {"mu_finest", rows.back().mu},
                           {"cells_finest", rows.back().cells}});
    return 0;
}

} // namespace

int cli_run(int argc, const char* const* argv) {
    CliState st;
    CLI::App app{"FEM studies of Laplace problems with vanishing or sign-changing Ventcel impedance"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    app.set_config("--config", "", "key=value configuration file (flags take precedence)");
    app.add_option("--out", st.out, "output directory")->capture_default_str();

    auto add_problem_opts = [&](CLI::App* c) {
        c->add_option("--alpha", st.alpha, "impedance exponent (>= 0)")->capture_default_str();
        c->add_option("--sign", st.sign, "impedance sign s (+1 or -1)")->capture_default_str();
        c->add_option("--weight", st.weight, "half-power | sign-changing | bridge")
            ->capture_default_str();
        c->add_option("--source", st.source, "zero | one | cos-x")->capture_default_str();
        c->add_option("--shift", st.shift, "volume coefficient: 1 or 1+i")->capture_default_str();
    };
    auto add_mesh_opts = [&](CLI::App* c) {
        c->add_option("--degree", st.degree, "FE degree (1 or 2)")->capture_default_str();
        c->add_option("--nx", st.nx, "cells along x (even)")->capture_default_str();
        c->add_option("--ny", st.ny, "cells along y")->capture_default_str();
    };

    CLI::App* mesh = app.add_subcommand("mesh", "build a mesh and export it as VTK");
    add_mesh_opts(mesh);
    mesh->add_option("--levels", st.levels, "refinement levels to apply")->capture_default_str();

    CLI::App* solve = app.add_subcommand("solve", "solve one problem and export the solution");
    add_problem_opts(solve);
    add_mesh_opts(solve);

    CLI::App* study = app.add_subcommand("refine-study", "mesh refinement convergence study");
    add_problem_opts(study);
    add_mesh_opts(study);
    study->add_option("--levels", st.levels, "number of nested levels")->capture_default_str();
    study->add_option("--ratio", st.ratio, "convergence verdict ratio")->capture_default_str();
    study->add_flag("--vtk", st.dump_vtk, "dump per-level solutions");

    CLI::App* infsup = app.add_subcommand("infsup", "per-level inf-sup constants");
    add_problem_opts(infsup);
    add_mesh_opts(infsup);
    infsup->add_option("--levels", st.levels, "number of nested levels")->capture_default_str();

    CLI::App* reduce = app.add_subcommand("reduce", "DtN-reduced 1D solve and equivalence check");
    add_problem_opts(reduce);
    add_mesh_opts(reduce);
    reduce->add_option("--dtn", st.dtn, "algebraic | spectral")->capture_default_str();
    reduce->add_option("--modes", st.modes, "spectral mode count")->capture_default_str();

    CLI::App* singular = app.add_subcommand("singular", "singular exponents and residuals");
    (void)singular;

    CLI::App* weyl = app.add_subcommand("weyl", "Weyl sequence growth diagnostic");
    add_mesh_opts(weyl);
    weyl->add_option("--levels", st.levels, "number of nested levels")->capture_default_str();
    weyl->add_option("--n", st.weyl_n, "Weyl indices to test")->capture_default_str();

    CLI::App* poincare = app.add_subcommand("poincare", "discrete weighted Poincare constants");
    poincare->add_option("--alpha", st.alpha, "impedance exponent (>= 0)")->capture_default_str();
    poincare->add_option("--cells", st.cells, "base 1D grid cells")->capture_default_str();
    poincare->add_option("--refinements", st.refinements, "grid doublings")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        std::filesystem::create_directories(st.out);
        if (sub == "mesh") return run_mesh(st);
        if (sub == "solve") return run_solve(st);
        if (sub == "refine-study") return run_refine_study(st);
        if (sub == "infsup") return run_infsup(st);
        if (sub == "reduce") return run_reduce(st);
        if (sub == "singular") return run_singular(st);
        if (sub == "weyl") return run_weyl(st);
        if (sub == "poincare") return run_poincare(st);
        std::cerr << "unknown subcommand\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const NumericallySingular& e) {
        write_json_atomic(path_in(st, sub == "refine-study" ? "refine_study.json" : sub + ".json"),
                          nlohmann::json{{"status", "error"}, {"error", e.what()}});
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NonConvergence& e) {
        write_json_atomic(path_in(st, sub == "refine-study" ? "refine_study.json" : sub + ".json"),
                          nlohmann::json{{"status", "error"}, {"error", e.what()}});
        std::cerr << e.what() << "\n";
        return 2;
    }
}

} // namespace gibc

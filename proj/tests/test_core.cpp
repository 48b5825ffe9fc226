#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gibc/assembly.hpp"
#include "gibc/fe_space.hpp"
#include "gibc/mesh.hpp"
#include "gibc/problem.hpp"
#include "gibc/quadrature.hpp"

using namespace gibc;

TEST_CASE("structured mesh counts and tags") {
    const Mesh m = build_rect_mesh(2, 1);
    CHECK(m.nodes.size() == 6);
    CHECK(m.triangles.size() == 4);
    int nminus = 0, nplus = 0;
    for (const auto& be : m.boundary_edges) {
        if (be.tag == BoundaryTag::GammaMinus) ++nminus;
        if (be.tag == BoundaryTag::GammaPlus) ++nplus;
    }
    CHECK(nminus == 1);
    CHECK(nplus == 1);

    const Mesh m2 = build_rect_mesh(4, 2);
    CHECK(m2.nodes.size() == 15);
    CHECK(m2.triangles.size() == 16);
}

TEST_CASE("mesh preconditions") {
    CHECK_THROWS_WITH_AS(build_rect_mesh(3, 1), "nx must be even", std::invalid_argument);
    CHECK_THROWS_AS(build_rect_mesh(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_rect_mesh(4, 0), std::invalid_argument);
}

TEST_CASE("areas positive, total area 2, origin is a node at every level") {
    Mesh m = build_rect_mesh(2, 1);
    for (int level = 0; level < 3; ++level) {
        double total = 0.0;
        for (std::size_t t = 0; t < m.triangles.size(); ++t) {
            const double a = triangle_area(m, static_cast<int>(t));
            CHECK(a > 0.0);
            total += a;
        }
        CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
        bool origin = false;
        for (const auto& p : m.nodes) origin |= (p[0] == 0.0 && p[1] == 0.0);
        CHECK(origin);
        m = refine(m);
    }
}

TEST_CASE("red refinement: counts, nesting, halved edges, inherited tags") {
    const Mesh coarse = build_rect_mesh(2, 1);
    const Mesh fine = refine(coarse);
    CHECK(fine.triangles.size() == 4 * coarse.triangles.size());
    CHECK(fine.level == coarse.level + 1);

    const Mesh finer = refine(fine);
    CHECK(finer.triangles.size() == 64);
    CHECK(finer.mesh_size() == doctest::Approx(coarse.mesh_size() / 4.0).epsilon(1e-15));

    std::set<std::pair<double, double>> fine_nodes;
    for (const auto& p : fine.nodes) fine_nodes.insert({p[0], p[1]});
    for (const auto& p : coarse.nodes) CHECK(fine_nodes.count({p[0], p[1]}) == 1);

    double minus_len = 0.0, plus_len = 0.0;
    for (const auto& be : fine.boundary_edges) {
        const double len = std::abs(fine.nodes[be.b][0] - fine.nodes[be.a][0]) +
                           std::abs(fine.nodes[be.b][1] - fine.nodes[be.a][1]);
        if (be.tag == BoundaryTag::GammaMinus) minus_len += len;
        if (be.tag == BoundaryTag::GammaPlus) plus_len += len;
    }
    CHECK(minus_len == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(plus_len == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("conformity: boundary edges belong to exactly one triangle") {
    const Mesh m = refine(build_rect_mesh(4, 2));
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            edge_count[std::minmax(a, b)]++;
        }
    }
    for (const auto& be : m.boundary_edges) CHECK(edge_count.at(std::minmax(be.a, be.b)) == 1);
    for (const auto& [e, c] : edge_count) CHECK((c == 1 || c == 2));
}

TEST_CASE("boundary_dofs_ordered examples") {
    const Mesh m21 = build_rect_mesh(2, 1);
    const FeSpace p1 = make_space(m21, 1);
    const FeSpace p2 = make_space(m21, 2);

    auto xs = [](const std::vector<TraceDof>& v) {
        std::vector<double> out;
        for (const auto& d : v) out.push_back(d.x);
        return out;
    };
    CHECK(xs(boundary_dofs_ordered(p1, TraceSet::GammaPlus)) == std::vector<double>{0.0, 1.0});
    CHECK(xs(boundary_dofs_ordered(p2, TraceSet::GammaPlus)) ==
          std::vector<double>{0.0, 0.5, 1.0});

    const FeSpace p41 = make_space(build_rect_mesh(4, 1), 1);
    CHECK(xs(boundary_dofs_ordered(p41, TraceSet::Gamma)) ==
          std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});

    for (const auto& which : {TraceSet::GammaMinus, TraceSet::GammaPlus, TraceSet::Gamma}) {
        const auto dofs = boundary_dofs_ordered(p2, which);
        for (std::size_t i = 1; i < dofs.size(); ++i) CHECK(dofs[i].x > dofs[i - 1].x);
    }
}

TEST_CASE("P2 dof count is nodes plus edges") {
    const Mesh m = build_rect_mesh(4, 2);
    const FeSpace p1 = make_space(m, 1);
    const FeSpace p2 = make_space(m, 2);
    CHECK(p1.ndofs() == 15);
    const int edges = 4 * 3 + 5 * 2 + 4 * 2;  // horizontal + vertical + diagonal
    CHECK(p2.ndofs() == 15 + edges);
}

TEST_CASE("Gauss-Jacobi rules integrate weighted monomials exactly") {
    for (double alpha : {0.0, 0.3, 1.0, 1.7}) {
        for (double h : {0.25, 1.0}) {
            const QuadRule1d gj = gauss_jacobi_left(8, 0.0, h, alpha);
            for (int m = 0; m <= 5; ++m) {
                double s = 0.0;
                for (std::size_t q = 0; q < gj.x.size(); ++q) s += gj.w[q] * std::pow(gj.x[q], m);
                const double exact = weighted_monomial_integral(alpha, m, 0.0, h);
                CHECK(s == doctest::Approx(exact).epsilon(1e-13));
            }
            // mirrored rule on [-h, 0] with weight |x|^alpha
            const QuadRule1d gjr = gauss_jacobi_right(8, -h, 0.0, alpha);
            for (int m = 0; m <= 3; ++m) {
                double s = 0.0;
                for (std::size_t q = 0; q < gjr.x.size(); ++q)
                    s += gjr.w[q] * std::pow(gjr.x[q], m);
                const double exact = (m % 2 ? -1.0 : 1.0) * weighted_monomial_integral(alpha, m, 0.0, h);
                CHECK(s == doctest::Approx(exact).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("triangle rule is degree-5 exact") {
    auto fact = [](int n) { return std::tgamma(n + 1.0); };
    for (int a = 0; a <= 5; ++a)
        for (int b = 0; a + b <= 5; ++b) {
            double s = 0.0;
            for (const auto& q : triangle_rule_degree5()) {
                const double x = q.bary[1], y = q.bary[2];
                s += q.w * std::pow(x, a) * std::pow(y, b);
            }
            s *= 0.5;  // reference triangle area
            const double exact = fact(a) * fact(b) / fact(a + b + 2);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
}

TEST_CASE("adaptive quadrature handles an endpoint singularity") {
    auto f = +[](double x, void*) { return 1.0 / std::sqrt(x); };
    CHECK(adaptive_integrate(f, nullptr, 0.0, 1.0, 1e-10) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("volume matrices: kernel of K, total mass, exact symmetry") {
    for (int degree : {1, 2}) {
        const FeSpace s = make_space(build_rect_mesh(8, 4), degree);
        const VolumeMatrices vm = assemble_volume(s);
        const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(s.ndofs());
        CHECK(matvec(vm.stiffness, ones).cwiseAbs().maxCoeff() <= 1e-12 * vm.stiffness.max_abs());
        CHECK(std::real(ones.dot(matvec(vm.mass, ones))) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(max_asymmetry(vm.stiffness) == 0.0);
        CHECK(max_asymmetry(vm.mass) == 0.0);
    }
}

TEST_CASE("boundary entry at the origin edge matches the closed form") {
    // P1, gamma+ edges [0,1/2] and [1/2,1]; the diagonal entry of the dof
    // at x=0 is h^(alpha-1)/(1+alpha)
    const FeSpace s = make_space(build_rect_mesh(4, 1), 1);
    int origin_dof = -1;
    for (int i = 0; i < s.ndofs(); ++i)
        if (s.dof_coords[i][0] == 0.0 && s.dof_coords[i][1] == 0.0) origin_dof = i;
    REQUIRE(origin_dof >= 0);
    for (double alpha : {0.0, 0.5, 1.0, 1.7}) {
        ProblemSpec spec;
        spec.alpha = alpha;
        spec.sign = +1;
        spec.weight = WeightKind::HalfPower;
        const CsrMatrix bw = assemble_boundary_weighted(s, spec);
        const double expected = std::pow(0.5, alpha - 1.0) / (1.0 + alpha);
        CHECK(std::abs(bw.at(origin_dof, origin_dof) - expected) <= 1e-12 * expected);
    }
}

TEST_CASE("sign-changing entries on the origin edges carry the closed form with signs") {
    const FeSpace s = make_space(build_rect_mesh(4, 1), 1);
    int origin = -1, left = -1, right = -1;
    for (int i = 0; i < s.ndofs(); ++i) {
        if (s.dof_coords[i][1] != 0.0) continue;
        if (s.dof_coords[i][0] == 0.0) origin = i;
        if (s.dof_coords[i][0] == -0.5) left = i;
        if (s.dof_coords[i][0] == 0.5) right = i;
    }
    REQUIRE(origin >= 0);
    for (double alpha : {0.0, 0.5, 1.0}) {
        ProblemSpec spec;
        spec.alpha = alpha;
        spec.weight = WeightKind::SignChanging;
        const CsrMatrix bw = assemble_boundary_weighted(s, spec);
        const double e = std::pow(0.5, alpha - 1.0) / (1.0 + alpha);
        // +x^alpha side couples with -e off-diagonal, -|x|^alpha side with +e
        CHECK(std::abs(bw.at(origin, right) - (-e)) <= 1e-12 * e);
        CHECK(std::abs(bw.at(origin, left) - (+e)) <= 1e-12 * e);
        // the diagonal at the origin cancels between the two sides
        CHECK(std::abs(bw.at(origin, origin)) <= 1e-12 * e);
    }
}

TEST_CASE("alpha=0 half-power weight is the plain 1D trace stiffness") {
    const FeSpace s = make_space(build_rect_mesh(4, 1), 1);
    ProblemSpec spec;
    spec.alpha = 0.0;
    spec.sign = +1;
    spec.weight = WeightKind::HalfPower;
    const CsrMatrix bw = assemble_boundary_weighted(s, spec);
    const auto dofs = boundary_dofs_ordered(s, TraceSet::GammaPlus);
    REQUIRE(dofs.size() == 3);
    const double h = 0.5;
    CHECK(std::abs(bw.at(dofs[0].dof, dofs[0].dof) - 1.0 / h) <= 1e-13 / h);
    CHECK(std::abs(bw.at(dofs[1].dof, dofs[1].dof) - 2.0 / h) <= 1e-13 / h);
    CHECK(std::abs(bw.at(dofs[0].dof, dofs[1].dof) + 1.0 / h) <= 1e-13 / h);
    CHECK(std::abs(bw.at(dofs[2].dof, dofs[2].dof) - 1.0 / h) <= 1e-13 / h);
}

TEST_CASE("sign-changing weight cancels on the interpolant of |x|") {
    // both half-integrals equal 1/(1+alpha) in closed form and cancel
    for (int degree : {1, 2}) {
        const FeSpace s = make_space(build_rect_mesh(8, 2), degree);
        for (double alpha : {0.0, 0.5, 1.0}) {
            ProblemSpec spec;
            spec.alpha = alpha;
            spec.weight = WeightKind::SignChanging;
            const CsrMatrix bw = assemble_boundary_weighted(s, spec);
            const CsrMatrix bwa = assemble_boundary_weighted_abs(s, spec);
            const Eigen::VectorXcd v =
                interpolate(s, [](double x, double) { return cplx(std::abs(x)); });
            const double signed_form = std::real(v.dot(matvec(bw, v)));
            const double abs_form = std::real(v.dot(matvec(bwa, v)));
            CHECK(std::abs(signed_form) <= 1e-13 * std::max(1.0, abs_form));
            CHECK(abs_form == doctest::Approx(2.0 / (1.0 + alpha)).epsilon(1e-12));
        }
    }
}

TEST_CASE("bridge weight energy of x matches the Beta-function value") {
    // v = x on Gamma+: v^T Bw v = int_0^1 x^a (1-x)^a dx = Gamma(1+a)^2 / Gamma(2+2a)
    const double alpha = 0.5;
    const double exact = 3.14159265358979323846 / 8.0;  // a = 1/2
    for (int nx : {2, 8}) {  // single double-singular edge vs all rule branches
        for (int degree : {1, 2}) {
            const FeSpace s = make_space(build_rect_mesh(nx, 2), degree);
            ProblemSpec spec;
            spec.alpha = alpha;
            spec.sign = +1;
            spec.weight = WeightKind::Bridge;
            const CsrMatrix bw = assemble_boundary_weighted(s, spec);
            const Eigen::VectorXcd v = interpolate(s, [](double x, double) { return cplx(x); });
            CHECK(std::real(v.dot(matvec(bw, v))) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("load vector sums: zero, area, and the cos(x) integral") {
    const FeSpace s = make_space(build_rect_mesh(32, 16), 2);
    ProblemSpec spec;

    spec.source = SourceKind::Zero;
    CHECK(assemble_rhs(s, spec).cwiseAbs().maxCoeff() == 0.0);

    spec.source = SourceKind::One;
    CHECK(std::abs(assemble_rhs(s, spec).sum() - 2.0) <= 1e-12);

    spec.source = SourceKind::CosX;
    const double exact = 2.0 * std::sin(1.0);
    const double coarse = std::abs(assemble_rhs(s, spec).sum().real() - exact);
    CHECK(coarse <= 1e-9);
    const FeSpace fine = make_space(build_rect_mesh(64, 32), 2);
    CHECK(std::abs(assemble_rhs(fine, spec).sum().real() - exact) < coarse);
}

TEST_CASE("interpolation reproduces constants and linears, rejects poles") {
    const FeSpace s = make_space(build_rect_mesh(8, 4), 2);
    const Eigen::VectorXcd c = interpolate(s, [](double, double) { return cplx(1.0); });
    for (int i = 0; i < s.ndofs(); ++i) CHECK(c[i] == cplx(1.0));

    const Eigen::VectorXcd lx = interpolate(s, [](double x, double) { return cplx(x); });
    for (int i = 0; i < s.ndofs(); ++i) CHECK(lx[i].real() == doctest::Approx(s.dof_coords[i][0]));

    CHECK_THROWS_AS(
        interpolate(s, [](double x, double) { return cplx(1.0 / x); }),
        std::invalid_argument);
}

TEST_CASE("norms of simple fields") {
    const FeSpace s = make_space(build_rect_mesh(8, 4), 2);
    ProblemSpec spec;
    spec.alpha = 1.0;
    spec.sign = +1;
    spec.weight = WeightKind::HalfPower;
    const AssembledProblem p = assemble_problem(spec, s);

    const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(s.ndofs());
    CHECK(compute_norm(p, ones, NormKind::L2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(compute_norm(p, ones, NormKind::Valpha) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const Eigen::VectorXcd lx = interpolate(s, [](double x, double) { return cplx(x); });
    // boundary seminorm^2 of the trace x with weight x: int_0^1 x dx = 1/2
    CHECK(std::real(lx.dot(matvec(p.boundary_abs, lx))) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(compute_norm(p, lx, NormKind::H1) ==
          doctest::Approx(std::sqrt(2.0 + 2.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("good-sign system equals the Gram matrix entrywise") {
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
        CHECK(maxdiff == 0.0);
        CHECK(max_asymmetry(p.system) == 0.0);
    }
}

TEST_CASE("energy identity in the coercive case") {
    ProblemSpec spec;
    spec.alpha = 0.5;
    spec.sign = +1;
    spec.weight = WeightKind::HalfPower;
    const FeSpace s = make_space(build_rect_mesh(8, 4), 2);
    const AssembledProblem p = assemble_problem(spec, s);
    const DiscreteSolution sol = solve_problem(p);
    const double lhs = std::real(sol.values.dot(matvec(p.system, sol.values)));
    const double rhs = std::real(sol.values.dot(p.rhs));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(lhs > 0.0);
}

TEST_CASE("zero source gives the zero solution") {
    ProblemSpec spec;
    spec.alpha = 0.5;
    spec.sign = -1;
    spec.source = SourceKind::Zero;
    const FeSpace s = make_space(build_rect_mesh(4, 2), 2);
    const DiscreteSolution sol = solve_problem(spec, s);
    CHECK(sol.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(sol.l2 == 0.0);
    CHECK(sol.valpha == 0.0);
}

TEST_CASE("coarse FE functions are reproduced exactly on the refined mesh") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int degree : {1, 2}) {
        const Mesh cm = build_rect_mesh(4, 2);
        const FeSpace coarse = make_space(cm, degree);
        const FeSpace fine = make_space(refine(cm), degree);
        Eigen::VectorXcd uc(coarse.ndofs());
        for (int i = 0; i < coarse.ndofs(); ++i) uc[i] = cplx(u(rng), u(rng));
        Eigen::VectorXcd uf(fine.ndofs());
        for (int i = 0; i < fine.ndofs(); ++i)
            uf[i] = evaluate(coarse, uc.data(), fine.dof_coords[i][0], fine.dof_coords[i][1]);
        for (int k = 0; k < 50; ++k) {
            const double x = u(rng), y = 0.5 * (u(rng) + 1.0);
            const cplx a = evaluate(coarse, uc.data(), x, y);
            const cplx b = evaluate(fine, uf.data(), x, y);
            CHECK(std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("Hoelder estimate holds for random P2 traces") {
    const FeSpace s = make_space(build_rect_mesh(16, 4), 2);
    const auto dofs = boundary_dofs_ordered(s, TraceSet::GammaPlus);
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double alpha : {0.0, 0.3, 0.5, 0.9}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<cplx> full(s.ndofs(), cplx(0.0));
            for (const auto& d : dofs) full[d.dof] = cplx(u(rng), u(rng));
            const double norm = std::sqrt(trace_xalpha_norm_sq(s, TraceSet::GammaPlus, alpha,
                                                               full.data()));
            for (std::size_t i = 0; i < dofs.size(); ++i) {
                if (dofs[i].x <= 0.0) continue;
                for (std::size_t j = i; j < dofs.size(); ++j) {
                    if (dofs[j].x <= 0.0) continue;
                    const double x = dofs[i].x, y = dofs[j].x;
                    const double bound =
                        std::sqrt((std::pow(y, 1.0 - alpha) - std::pow(x, 1.0 - alpha)) /
                                  (1.0 - alpha == 0.0 ? 1.0 : 1.0 - alpha));
                    const double diff = std::abs(full[dofs[j].dof] - full[dofs[i].dof]);
                    CHECK(diff <= bound * norm);
                }
            }
        }
    }
}

TEST_CASE("exact trace norm agrees with a quadrature evaluation") {
    const FeSpace s = make_space(build_rect_mesh(8, 2), 2);
    const Eigen::VectorXcd v = interpolate(s, [](double x, double) { return cplx(x * x, x); });
    const double alpha = 0.6;
    const std::vector<cplx> vv(v.data(), v.data() + v.size());
    const double exact = trace_xalpha_norm_sq(s, TraceSet::GammaPlus, alpha, vv.data());
    // independent check: |phi|^2 = x^4 + x^2, |phi'|^2 = 4x^2 + 1
    const double l2 = 1.0 / 5.0 + 1.0 / 3.0;
    const double semi = 4.0 * weighted_monomial_integral(alpha, 2, 0.0, 1.0) +
                        weighted_monomial_integral(alpha, 0, 0.0, 1.0);
    CHECK(exact == doctest::Approx(l2 + semi).epsilon(1e-12));
}

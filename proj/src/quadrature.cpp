#include "gibc/quadrature.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace gibc {

namespace {

struct FixedWorkspaceDeleter {
    void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

QuadRule1d fixed_rule(const gsl_integration_fixed_type* type, int n, double a, double b,
                      double palpha, double pbeta) {
    if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
    std::unique_ptr<gsl_integration_fixed_workspace, FixedWorkspaceDeleter> w(
        gsl_integration_fixed_alloc(type, static_cast<size_t>(n), a, b, palpha, pbeta));
    if (!w) throw std::runtime_error("quadrature rule allocation failed");
    QuadRule1d rule;
    rule.x.assign(gsl_integration_fixed_nodes(w.get()), gsl_integration_fixed_nodes(w.get()) + n);
    rule.w.assign(gsl_integration_fixed_weights(w.get()), gsl_integration_fixed_weights(w.get()) + n);
    return rule;
}

} // namespace

QuadRule1d gauss_legendre(int n, double a, double b) {
    return fixed_rule(gsl_integration_fixed_legendre, n, a, b, 0.0, 0.0);
}

QuadRule1d gauss_jacobi(int n, double a, double b, double alpha, double beta) {
    // GSL jacobi weight is (b-x)^alpha (x-a)^beta
    return fixed_rule(gsl_integration_fixed_jacobi, n, a, b, alpha, beta);
}

QuadRule1d gauss_jacobi_left(int n, double a, double b, double beta) {
    return gauss_jacobi(n, a, b, 0.0, beta);
}

QuadRule1d gauss_jacobi_right(int n, double a, double b, double alpha) {
    return gauss_jacobi(n, a, b, alpha, 0.0);
}

const std::vector<TriQuadPoint>& triangle_rule_degree5() {
    static const std::vector<TriQuadPoint> rule = [] {
        const double s15 = std::sqrt(15.0);
        const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
        const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
        std::vector<TriQuadPoint> r;
        r.push_back({{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 40.0});
        r.push_back({{a1, a1, 1.0 - 2.0 * a1}, w1});
        r.push_back({{a1, 1.0 - 2.0 * a1, a1}, w1});
        r.push_back({{1.0 - 2.0 * a1, a1, a1}, w1});
        r.push_back({{a2, a2, 1.0 - 2.0 * a2}, w2});
        r.push_back({{a2, 1.0 - 2.0 * a2, a2}, w2});
        r.push_back({{1.0 - 2.0 * a2, a2, a2}, w2});
        return r;
    }();
    return rule;
}

double adaptive_integrate(double (*f)(double, void*), void* params,
                          double a, double b, double epsrel) {
    gsl_function gf;
    gf.function = f;
    gf.params = params;
    constexpr size_t limit = 4096;
    std::unique_ptr<gsl_integration_workspace, decltype(&gsl_integration_workspace_free)> ws(
        gsl_integration_workspace_alloc(limit), gsl_integration_workspace_free);
    double result = 0.0, abserr = 0.0;
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    int status = gsl_integration_qags(&gf, a, b, 0.0, epsrel, limit, ws.get(), &result, &abserr);
    gsl_set_error_handler(old);
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw std::runtime_error("adaptive quadrature failed: " + std::string(gsl_strerror(status)));
    return result;
}

} // namespace gibc

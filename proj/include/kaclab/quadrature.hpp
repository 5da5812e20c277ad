#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <functional>
#include <memory>
#include <stdexcept>

namespace kaclab {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long subdivisions = 0;

    QuadratureResult& operator+=(const QuadratureResult& other) {
        value += other.value;
        error_estimate += other.error_estimate;
        subdivisions += other.subdivisions;
        return *this;
    }
};

namespace detail {

inline void gsl_quiet_once() {
    static const bool done = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)done;
}

inline double gsl_trampoline(double x, void* params) {
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

}  // namespace detail

/// Adaptive quadrature on a bounded interval (Gauss-Kronrod 21, QAG).
inline QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                  double epsabs = 1e-11, double epsrel = 0.0,
                                  std::size_t limit = 4000) {
    detail::gsl_quiet_once();
    if (a == b) return {0.0, 0.0, 0};
    std::unique_ptr<gsl_integration_workspace, void (*)(gsl_integration_workspace*)> ws(
        gsl_integration_workspace_alloc(limit), gsl_integration_workspace_free);
    if (!ws) throw std::runtime_error("integrate: workspace allocation failed");
    gsl_function gf;
    gf.function = &detail::gsl_trampoline;
    gf.params = const_cast<std::function<double(double)>*>(&f);
    QuadratureResult out;
    int status = gsl_integration_qag(&gf, a, b, epsabs, epsrel, limit, GSL_INTEG_GAUSS21,
                                     ws.get(), &out.value, &out.error_estimate);
    out.subdivisions = static_cast<long>(ws->size);
    if (status != GSL_SUCCESS && status != GSL_EROUND && status != GSL_EMAXITER)
        throw std::runtime_error("integrate: quadrature failed with status " +
                                 std::to_string(status));
    return out;
}

}  // namespace kaclab

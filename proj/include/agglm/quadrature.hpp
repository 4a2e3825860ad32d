#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace agglm::quad {

struct QuadratureNonConvergent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    int max_level = 12;  // up to ~2^12 nodes per interval
};

// Integral of f over [a, b] by tanh-sinh (double-exponential) quadrature.
// Integrable endpoint singularities are fine; f is never called at a or b.
// f receives (x, dist) where dist is the distance to the nearest endpoint,
// computed without cancellation; integrands singular at an endpoint should
// use dist instead of re-deriving x - a or b - x.
double tanh_sinh(const std::function<double(double, double)>& f, double a, double b,
                 const Options& opt = {});

// Convenience overload for integrands that do not need the endpoint distance.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

// Complex-valued tanh-sinh; converges on the magnitude of the increment.
std::complex<double> tanh_sinh_c(
    const std::function<std::complex<double>(double, double)>& f, double a, double b,
    const Options& opt = {});

// Complex-valued exp-sinh over [0, inf).
std::complex<double> exp_sinh_c(const std::function<std::complex<double>(double)>& f,
                                const Options& opt = {});

// Integral of f over [0, inf) by exp-sinh quadrature. Handles an algebraic
// singularity at 0 and algebraic-or-faster decay (faster than 1/x) at infinity.
double exp_sinh(const std::function<double(double)>& f, const Options& opt = {});

// Integral over [a, b] splitting at the given interior points (points outside
// (a, b) are ignored). Each panel is integrated by tanh_sinh, so integrable
// singularities at any split point are handled.
double split_tanh_sinh(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> interior, const Options& opt = {});

// Fixed-order Gauss-Legendre on [a, b] (order 15). For smooth integrands only.
double gauss15(const std::function<double(double)>& f, double a, double b);

}  // namespace agglm::quad

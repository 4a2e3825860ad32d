#pragma once

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "agglm/model.hpp"
#include "agglm/quadrature.hpp"

namespace agglm {

struct SeriesTooShort : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Inconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectralCurve {
    std::vector<double> grid;
    std::vector<double> values;                  // F, |H|^2, or periodogram
    std::vector<std::complex<double>> cvalues;   // H (empty for real curves)
    std::vector<double> stderrs;                 // Monte Carlo only
    Flavor domain = Flavor::Discrete;            // (-pi,pi] vs R-window
    std::vector<double> singular_frequencies;
    int refinement_level = 0;
};

// --- per-sample spectra -----------------------------------------------------

double pointwise_g(const PoleSample& sample, double lambda, double sigma);
std::complex<double> pointwise_h(const PoleSample& sample, double lambda, double sigma);

// --- mixture curves ---------------------------------------------------------

enum class MixtureMethod { Quadrature, MonteCarlo };

struct MixtureOptions {
    MixtureMethod method = MixtureMethod::Quadrature;
    long mc_draws = 100000;
    std::uint64_t mc_seed = 1;
    double rel_tol = 1e-9;
};

// Mixture spectral density F on the given grid (grid nodes must avoid the
// singular frequencies; see make_frequency_grid).
SpectralCurve mixture_F(const ModelSpec& model, const std::vector<double>& grid,
                        const MixtureOptions& opt = {});
// Mixture transfer function H (complex curve; values holds |H|^2).
SpectralCurve mixture_H(const ModelSpec& model, const std::vector<double>& grid,
                        const MixtureOptions& opt = {});

// Single-point evaluations used by the curve builders and the asymptotics lab.
double mixture_F_at(const ModelSpec& model, double lambda);
std::complex<double> mixture_H_at(const ModelSpec& model, double lambda);

// Frequencies where the mixture can blow up, from the model's theta0/tau0 list.
std::vector<double> predicted_singularities(const ModelSpec& model);

// Log-clustered grid of `n` nodes over the model's frequency domain, refined
// toward each predicted singular frequency and nudged off them.
std::vector<double> make_frequency_grid(const ModelSpec& model, int n = 4096);

// Frequency window half-width for continuous-flavor models.
double continuous_window(const ModelSpec& model);

// --- existence --------------------------------------------------------------

struct ExistenceResult {
    bool converges = false;
    std::optional<double> value;      // integral when convergent
    std::vector<double> singularities;
    std::vector<double> worst_ratio;  // per-singularity annulus ratio (geometric)
};

enum class SpectrumSide { F, H2 };

ExistenceResult existence_integral(const ModelSpec& model, SpectrumSide which);

// Reconciles the numeric verdict with a closed-form theorem verdict; throws
// Inconclusive if they disagree.
bool reconcile_existence(const ExistenceResult& numeric, bool theorem_exists);

// --- periodogram ------------------------------------------------------------

struct PeriodogramOptions {
    int smoothing_halfwidth = 32;  // frequency-bin moving average half-width
    bool spectral_scale = false;   // multiply by 2*pi to compare against g/F
};

// Smoothed periodogram of a real series on lambda in (0, pi]. Normalized so
// unit-variance white noise is flat at 1/(2*pi); with spectral_scale it is
// flat at 1 and directly comparable to pointwise_g / mixture_F.
SpectralCurve periodogram(const std::vector<double>& series,
                          const PeriodogramOptions& opt = {});

// --- raw mixture integrals (shared with the asymptotics lab) ----------------
// These integrate the *unnormalized* densities; the mixture builders divide by
// the law normalizations.
namespace mix {

// default tolerance of the single radial integrals; the double integrals use
// looser internal settings (the outer quadrature amortizes inner noise)
quad::Options default_tols();

// integral over [0,1] of s^d phi(1-s) * prod_j |1 - (1-s) e^{i delta_j}|^{-n_j} ds
double radial_integral_disc(double d, const ShapeFn& phi,
                            const std::vector<double>& deltas,
                            const std::vector<double>& ns,
                            const quad::Options& tol = default_tols());
// same with complex factors (1 - rho e^{i delta_j})^{-m_j}
std::complex<double> radial_integral_disc_cplx(double d, const ShapeFn& phi,
                                               const std::vector<double>& deltas,
                                               const std::vector<double>& ms,
                                               const quad::Options& tol = default_tols());

// integral over [0,inf) of r^d phi(r) * prod_j (lam_j^2 + r^2)^{-n_j/2} dr
double radial_integral_cont(double d, const ShapeFn& phi,
                            const std::vector<double>& lams,
                            const std::vector<double>& ns,
                            const quad::Options& tol = default_tols());
// same with complex factors (i lam_j + r)^{-m_j}
std::complex<double> radial_integral_cont_cplx(double d, const ShapeFn& phi,
                                               const std::vector<double>& lams,
                                               const std::vector<double>& ms,
                                               const quad::Options& tol = default_tols());

// double integral over theta (density psi(theta)|theta-theta0|^{-beta}) and
// rho of prod |1 - rho e^{i(lambda -+ theta)}|^{-n}
double angular_radial_disc(double lambda, double d, const ShapeFn& phi, double beta,
                           double theta0, const ShapeFn& psi,
                           std::pair<double, double> support, double n);
std::complex<double> angular_radial_disc_cplx(double lambda, double d,
                                              const ShapeFn& phi, double beta,
                                              double theta0, const ShapeFn& psi,
                                              std::pair<double, double> support,
                                              double m);

// continuous twin: outer tau, inner r with factors ((lambda -+ tau)^2 + r^2)^{-n/2}
double angular_radial_cont(double lambda, double d, const ShapeFn& phi, double beta,
                           double tau0, const ShapeFn& psi,
                           std::pair<double, double> support, double n);
std::complex<double> angular_radial_cont_cplx(double lambda, double d,
                                              const ShapeFn& phi, double beta,
                                              double tau0, const ShapeFn& psi,
                                              std::pair<double, double> support,
                                              double m);

}  // namespace mix

}  // namespace agglm

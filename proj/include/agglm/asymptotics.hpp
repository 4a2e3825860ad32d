#pragma once

#include <stdexcept>
#include <vector>

#include "agglm/spectral.hpp"

namespace agglm {

struct PreconditionViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Power-law fit of a curve near a singular frequency over a decade ladder.
struct AsymptoticFit {
    double target = 0.0;             // lambda_s
    std::vector<double> offsets;     // |lambda - lambda_s|, one per decade
    std::vector<double> values;      // curve value, averaged over both sides
    std::vector<double> local_slopes;  // per-decade log-log slopes
    double fitted_exponent = 0.0;    // final-decade slope
    double fitted_constant = 0.0;    // value * offset^predicted at the ladder foot
    double predicted_exponent = 0.0;
    double predicted_constant = 0.0;
    double ratio_drift = 0.0;        // relative drift of A/B over the last two decades
};

struct LadderOptions {
    double delta = 0.1;  // outermost offset; decades at delta * 10^{-(j-1)}
    int decades = 6;
    int per_decade = 2;  // evaluations per decade
};

// Fits the decade ladder of an arbitrary positive curve near lambda_s.
// two_sided averages lambda_s +- offset.
AsymptoticFit fit_power_law(const std::function<double(double)>& eval,
                            double lambda_s, double pred_exponent,
                            double pred_constant, bool two_sided,
                            const LadderOptions& opt = {});

// Single radial integral int |1-rho|^d phi / |...|^n near its singularity.
// theta0_case: 1 -> lambda_s = 0; 2 -> lambda_s = pi; 3 -> lambda_s = theta0.
AsymptoticFit lemma1_check(double d, double n, int theta0_case, const ShapeFn& phi,
                           double theta0 = 0.0, const LadderOptions& opt = {});
// Continuous twin: lambda_s = tau0 (0 for the real-root case).
AsymptoticFit lemma3_check(double d, double n, double tau0, const ShapeFn& phi,
                           const LadderOptions& opt = {});

// Double integral f_k with diffuse angular weight |theta - theta0|^-alpha.
AsymptoticFit lemma2_check(double d, double n, double alpha, int theta0_case,
                           const ShapeFn& phi, const ShapeFn& psi,
                           double theta0 = 0.0, const LadderOptions& opt = {});
AsymptoticFit lemma4_check(double d, double n, double alpha, double tau0,
                           const ShapeFn& phi, const ShapeFn& psi,
                           std::pair<double, double> support,
                           const LadderOptions& opt = {});

// Ladder slope fit of the full mixture spectral density near a predicted
// singular frequency (F or |H|^2 side).
AsymptoticFit fit_mixture_slope(const ModelSpec& model, double lambda_s,
                                SpectrumSide side = SpectrumSide::F,
                                const LadderOptions& opt = {});

// Phase-diagram sweep for the complex-pair AR(2) family, independent
// innovations. boundary_theta0: theta0 in {0, pi} (the translated diagram).
struct SweepCell {
    double d, beta;
    int region;    // 0 = no existence, 1 = exists without LM, 2 = LM
    double alpha;  // beta - d, or beta - (d - 2); meaningful in region 2
};
std::vector<SweepCell> disappearance_sweep(double d_lo, double d_hi, int nd,
                                           double b_lo, double b_hi, int nb,
                                           bool boundary_theta0);

// Closed-form lemma constants, by quadrature of the limit integrals.
namespace oracle {
double u_integral(double d, double n);  // int_0^inf u^d (1+u^2)^{-n/2} du
// int int u^d |t|^-alpha / [((t-1)^2+u^2)((t+1)^2+u^2)]^{n/2} du dt
double ut_integral(double d, double n, double alpha);
// int |t|^-alpha |t-1|^{-(n-1-d)} dt over the real line
double t_integral(double d, double n, double alpha);
}  // namespace oracle

}  // namespace agglm

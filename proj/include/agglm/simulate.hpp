#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "agglm/model.hpp"

namespace agglm {

struct NotPSD : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StepTooCoarse : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonExistentAggregate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One simulated panel and its normalized aggregate.
struct PanelRun {
    int N = 0;
    long T = 0;
    double step = 1.0;  // 1 for discrete panels
    std::vector<PoleSample> samples;
    std::vector<double> aggregate;
    std::vector<std::vector<double>> members;  // kept only when requested
    double b_n = 0.0;
    long burn_in = 0;
    std::uint64_t seed = 0;
};

// Suggested burn-in for a pole configuration: transient decayed below 1e-8,
// capped (near-unit-root members cannot be fully equilibrated).
long suggested_burn_in(double max_pole_radius, Flavor flavor, double step = 1.0);

// N x T Gaussian innovation panel with the scheme's cross-sectional
// covariance (identity / all-ones / Toeplitz(chi)). Time-independent.
std::vector<std::vector<double>> generate_innovations(const InnovationScheme& scheme,
                                                      int N, long T,
                                                      std::mt19937_64& rng);

// AR path driven by the supplied innovations; the first burn_in values are
// discarded, so the result has innovations.size() - burn_in entries.
std::vector<double> simulate_ar_member(const ArCoefficients& coeffs,
                                       const std::vector<double>& innovations,
                                       long burn_in);

// OU(p) path on the step grid by exact discretization of the companion
// state-space system (matrix exponential transition + exact step covariance).
std::vector<double> simulate_ou_member(const PoleSample& sample, double sigma,
                                       double step, double horizon, long burn_in,
                                       std::mt19937_64& rng);

struct AggregateOptions {
    bool keep_members = false;
    bool force = false;        // skip the existence refusal
    double step = 0.05;        // continuous flavor only
    long burn_in_cap = 1000000;
};

// Normalized partial aggregation X^N = (1/B_N) sum_i Z(y^i, eps^i).
PanelRun aggregate(const ModelSpec& model, int N, long T, std::uint64_t seed,
                   const AggregateOptions& opt = {});

// Variance-matching default B_N for an interactive scheme.
double default_interactive_bn(const InnovationScheme& scheme, int N);

}  // namespace agglm

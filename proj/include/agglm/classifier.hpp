#pragma once

#include <string>
#include <vector>

#include "agglm/model.hpp"

namespace agglm {

// How the panel's innovations are correlated, reduced to the two spectral
// extremes: F-driven (independent / weak interaction) vs |H|^2-driven
// (common / strong interaction).
enum class InnovationRegime { Independent, Common, InteractiveWeak, InteractiveStrong };

inline bool f_driven(InnovationRegime r) {
    return r == InnovationRegime::Independent || r == InnovationRegime::InteractiveWeak;
}

InnovationRegime regime_of(const InnovationScheme& s);

// One pole group reduced to the classifier inputs. For real groups beta = 1
// and theta0 in {0, pi} (discrete) or 0 (continuous).
struct GroupInput {
    double d = 0.0;
    double beta = 1.0;
    double center = 0.0;  // theta0 (discrete) or tau0 (continuous)
    int m = 1;
    bool complex_pair = false;
};

struct Singularity {
    double frequency;
    double alpha;      // spectral blow-up exponent, G ~ |lambda - freq|^-alpha
    int source_group;  // dominant contributing group
};

struct LMReport {
    bool exists = false;
    std::string condition;  // the condition that settles the existence verdict
    bool long_memory = false;
    bool existence_numeric_check = false;  // OU with some beta < 1: closed form
                                           // covers only the singular frequencies
    std::vector<Singularity> singularities;

    struct RegimeInput {
        double d, beta, center;
        int m, n;  // n = 2m (F-driven) or m (|H|^2-driven)
    };
    std::vector<RegimeInput> regime_inputs;
    std::string note;  // e.g. weak interaction: |H|^2 does not produce LM
};

// AR(1): single real pole, theta0 in {0, pi}.
LMReport classify_ar1(double d, double theta0, InnovationRegime regime);

// AR(2), two distinct real poles.
struct Ar2RealPoles {
    double d1, d2;
    double theta1, theta2;  // each in {0, pi}
};
// AR(2), complex conjugate pair.
struct Ar2ComplexPair {
    double d;
    double beta;
    double theta0;
};
LMReport classify_ar2(const Ar2RealPoles& c, InnovationRegime regime);
LMReport classify_ar2(const Ar2ComplexPair& c, InnovationRegime regime);

// General AR(p) over grouped poles.
LMReport classify_arp(const std::vector<GroupInput>& groups, InnovationRegime regime);
// OU(p) twin; centers are tau0 values on the real line.
LMReport classify_oup(const std::vector<GroupInput>& groups, InnovationRegime regime);

// Convenience: classify a full model, regime taken from its innovation scheme.
LMReport classify_model(const ModelSpec& model);

}  // namespace agglm

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "agglm/poles.hpp"

namespace agglm {

// Cross-sectional innovation structure of a panel.
struct InnovationScheme {
    enum class Kind { Common, Independent, Interactive };
    enum class ChiPreset { Geometric, Power, LogDecay };

    Kind kind = Kind::Independent;
    // interactive-only: correlation chi(j) between members i and i+j
    ChiPreset chi_preset = ChiPreset::Geometric;
    double chi_param = 0.5;   // geometric ratio, power exponent gamma, ...
    double b_n_override = 0;  // interactive normalization; 0 = variance-matching default

    static InnovationScheme common() { return {Kind::Common}; }
    static InnovationScheme independent() { return {Kind::Independent}; }
    static InnovationScheme interactive(ChiPreset p, double param, double b_n = 0) {
        InnovationScheme s;
        s.kind = Kind::Interactive;
        s.chi_preset = p;
        s.chi_param = param;
        s.b_n_override = b_n;
        return s;
    }

    double chi(int j) const {
        j = std::abs(j);
        if (j == 0) return 1.0;
        switch (chi_preset) {
            case ChiPreset::Geometric:
                return std::pow(chi_param, j);
            case ChiPreset::Power:
                return std::pow(1.0 + j, -chi_param);
            case ChiPreset::LogDecay: {
                double lj = std::log(j + 2.0);
                return 1.0 / ((1.0 + j) * lj * lj);
            }
        }
        return 0.0;
    }

    // Cesaro limit of chi finite (weak) vs infinite (strong): chi summable or
    // Cesaro-summable means weak; a nonsummable positive tail means strong.
    bool is_strong_interaction() const {
        if (kind != Kind::Interactive) return false;
        return chi_preset == ChiPreset::Power && chi_param < 1.0;
    }
};

struct ModelSpec {
    Flavor flavor = Flavor::Discrete;
    std::vector<PoleGroupSpec> groups;
    double sigma = 1.0;
    InnovationScheme innovation = InnovationScheme::independent();

    static constexpr int kMaxDegree = 8;

    int degree() const {
        int p = 0;
        for (const auto& g : groups) p += g.degree();
        return p;
    }

    void validate() const {
        if (!(sigma > 0)) throw std::invalid_argument("ModelSpec: sigma must be > 0");
        if (groups.empty()) throw std::invalid_argument("ModelSpec: no pole groups");
        for (const auto& g : groups)
            if (is_discrete(g.kind) != (flavor == Flavor::Discrete))
                throw std::invalid_argument("ModelSpec: group kind does not match flavor");
        if (degree() > kMaxDegree)
            throw std::invalid_argument("ModelSpec: degree above configured maximum");
    }

    PoleSample draw(std::mt19937_64& rng) const {
        return draw_pole_sample(groups, flavor, rng);
    }
};

}  // namespace agglm

#include "agglm/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace agglm {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

bool at_boundary(Flavor flavor, double center) {
    if (flavor == Flavor::Discrete)
        return std::abs(center) < 1e-12 || std::abs(std::abs(center) - kPi) < 1e-12;
    return std::abs(center) < 1e-12;
}

// Blow-up exponent that one group contributes at its own singular frequency,
// in F units when n = 2m and in |H| units when n = m. Diffuse angular laws at
// a boundary frequency pick up the doubled n (both conjugate factors collapse
// onto the same frequency); a Dirac pair at a boundary frequency degenerates
// to a real root of multiplicity 2m.
double group_exponent(const GroupInput& g, int n, bool boundary) {
    if (!g.complex_pair) return n - 1.0 - g.d;
    const bool dirac = g.beta >= 1.0;
    if (dirac) return boundary ? 2.0 * n - 1.0 - g.d : n - 1.0 - g.d;
    return boundary ? 2.0 * n - 2.0 + g.beta - g.d : n - 2.0 + g.beta - g.d;
}

struct FreqAcc {
    double freq;        // canonical: boundary value, or |center|
    bool boundary;
    double sum = 0.0;   // clamped exponent sum
    int dominant = -1;
    double dom_e = -1.0;
};

LMReport classify_impl(const std::vector<GroupInput>& groups, InnovationRegime regime,
                       Flavor flavor) {
    LMReport rep;
    const bool fdrv = f_driven(regime);
    const double mult = fdrv ? 1.0 : 2.0;  // spectrum is F or |H|^2

    for (const auto& g : groups) {
        if (!(g.d > -1.0)) {
            rep.exists = false;
            rep.condition = fmt("radial law with d = %g is not normalizable (requires d > -1)", g.d);
            return rep;
        }
        if (g.beta > 1.0) {
            rep.exists = false;
            rep.condition = fmt("angular exponent beta = %g above the Dirac limit 1", g.beta);
            return rep;
        }
    }

    std::vector<FreqAcc> freqs;
    for (size_t k = 0; k < groups.size(); ++k) {
        const auto& g = groups[k];
        const int n = fdrv ? 2 * g.m : g.m;
        rep.regime_inputs.push_back({g.d, g.beta, g.center, g.m, n});

        const bool bnd = at_boundary(flavor, g.center);
        double key = bnd ? (flavor == Flavor::Discrete && std::abs(g.center) > 1.0 ? kPi : 0.0)
                         : std::abs(g.center);
        double e = std::max(group_exponent(g, n, bnd), 0.0);

        FreqAcc* acc = nullptr;
        for (auto& f : freqs)
            if (f.boundary == bnd && std::abs(f.freq - key) < 1e-9) acc = &f;
        if (!acc) {
            freqs.push_back({key, bnd});
            acc = &freqs.back();
        }
        acc->sum += e;
        if (e > acc->dom_e) {
            acc->dom_e = e;
            acc->dominant = static_cast<int>(k);
        }
    }

    rep.exists = true;
    for (const auto& f : freqs) {
        double E = mult * f.sum;
        if (E >= 1.0) {
            rep.exists = false;
            rep.condition =
                fmt("spectral exponent %.4g at frequency %.6g violates the integrability bound (< 1)",
                    E, f.freq);
            break;
        }
    }
    if (rep.exists) rep.condition = "all singular exponents below 1";

    if (rep.exists) {
        for (const auto& f : freqs) {
            double E = mult * f.sum;
            if (E <= 0.0) continue;
            rep.long_memory = true;
            if (f.boundary || f.freq == 0.0) {
                rep.singularities.push_back({f.freq, E, f.dominant});
            } else {
                rep.singularities.push_back({f.freq, E, f.dominant});
                rep.singularities.push_back({-f.freq, E, f.dominant});
            }
        }
        std::sort(rep.singularities.begin(), rep.singularities.end(),
                  [](const Singularity& a, const Singularity& b) {
                      return a.frequency < b.frequency;
                  });
    }
    return rep;
}

}  // namespace

InnovationRegime regime_of(const InnovationScheme& s) {
    switch (s.kind) {
        case InnovationScheme::Kind::Common:
            return InnovationRegime::Common;
        case InnovationScheme::Kind::Independent:
            return InnovationRegime::Independent;
        case InnovationScheme::Kind::Interactive:
            return s.is_strong_interaction() ? InnovationRegime::InteractiveStrong
                                             : InnovationRegime::InteractiveWeak;
    }
    return InnovationRegime::Independent;
}

LMReport classify_ar1(double d, double theta0, InnovationRegime regime) {
    LMReport rep = classify_impl({{d, 1.0, theta0, 1, false}}, regime, Flavor::Discrete);
    if (f_driven(regime)) {
        rep.condition = rep.exists ? "d > 0 (Theorem 1, independent innovations)"
                                   : "requires d > 0 (Theorem 1, independent innovations)";
        rep.note = "|H|^2 does not produce long memory in this regime (Theorem 1, 3.1)";
    } else {
        rep.condition = rep.exists ? "d > -1/2 (Theorem 1, common innovation)"
                                   : "requires d > -1/2 (Theorem 1, common innovation)";
    }
    return rep;
}

LMReport classify_ar2(const Ar2RealPoles& c, InnovationRegime regime) {
    return classify_impl({{c.d1, 1.0, c.theta1, 1, false}, {c.d2, 1.0, c.theta2, 1, false}},
                         regime, Flavor::Discrete);
}

LMReport classify_ar2(const Ar2ComplexPair& c, InnovationRegime regime) {
    return classify_impl({{c.d, c.beta, c.theta0, 1, true}}, regime, Flavor::Discrete);
}

LMReport classify_arp(const std::vector<GroupInput>& groups, InnovationRegime regime) {
    return classify_impl(groups, regime, Flavor::Discrete);
}

LMReport classify_oup(const std::vector<GroupInput>& groups, InnovationRegime regime) {
    LMReport rep = classify_impl(groups, regime, Flavor::Continuous);
    for (const auto& g : groups)
        if (g.complex_pair && g.beta < 1.0) {
            rep.existence_numeric_check = true;
            rep.note = "existence with a diffuse tau law has no closed form "
                       "(Theorem 4); verdict covers the singular frequencies only "
                       "- run the numeric existence integral";
        }
    return rep;
}

LMReport classify_model(const ModelSpec& model) {
    std::vector<GroupInput> groups;
    for (const auto& g : model.groups) {
        GroupInput gi;
        gi.d = g.radial.d();
        gi.complex_pair = is_complex_pair(g.kind);
        gi.beta = gi.complex_pair ? (g.angular.is_dirac() ? 1.0 : g.angular.beta()) : 1.0;
        gi.center = g.center_angle();
        gi.m = g.multiplicity;
        groups.push_back(gi);
    }
    InnovationRegime regime = regime_of(model.innovation);
    if (model.flavor == Flavor::Discrete && groups.size() == 1 &&
        !groups[0].complex_pair && groups[0].m == 1)
        return classify_ar1(groups[0].d, groups[0].center, regime);
    return model.flavor == Flavor::Discrete ? classify_arp(groups, regime)
                                            : classify_oup(groups, regime);
}

}  // namespace agglm

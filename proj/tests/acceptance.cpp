// End-to-end acceptance suite: one pass/fail line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "agglm/asymptotics.hpp"
#include "agglm/classifier.hpp"
#include "agglm/poles.hpp"
#include "agglm/simulate.hpp"
#include "agglm/spectral.hpp"

using namespace agglm;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void report(int criterion, bool pass, double seconds, const char* what) {
    std::printf("criterion %d: %s (%.1fs) %s\n", criterion, pass ? "PASS" : "FAIL",
                seconds, what);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

ModelSpec ar1_model(double d, InnovationScheme scheme = InnovationScheme::independent()) {
    ModelSpec m;
    m.flavor = Flavor::Discrete;
    m.groups.push_back(
        PoleGroupSpec::real_discrete(+1, 1, RadialLaw(Flavor::Discrete, d)));
    m.innovation = scheme;
    return m;
}

ModelSpec ar2_diffuse_model(double d, double beta, double theta0) {
    ModelSpec m;
    m.flavor = Flavor::Discrete;
    m.groups.push_back(PoleGroupSpec::complex_discrete(
        1, RadialLaw(Flavor::Discrete, d), AngularLaw(beta, theta0)));
    return m;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// relative L1 distance of curve values to reference values on a common grid
double rel_l1(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num += std::abs(a[i] - b[i]);
        den += std::abs(b[i]);
    }
    return num / den;
}

// --- criterion 1: existence frontier of the AR(1) family --------------------

void criterion1() {
    Timer t;
    bool pass = true;
    for (double d : {-0.4, -0.25, -0.05, 0.05, 0.5, 0.95, 1.5}) {
        ModelSpec m = ar1_model(d);
        pass &= existence_integral(m, SpectrumSide::F).converges == (d > 0.0);
        pass &= existence_integral(m, SpectrumSide::H2).converges == (d > -0.5);
    }
    double secs = t.seconds();
    pass &= secs < 60.0;
    report(1, pass, secs, "existence frontier at d = 0 (F) and d = -1/2 (|H|^2)");
}

// --- criterion 2: alpha exponents of the mixture curves ---------------------

void criterion2() {
    Timer t;
    bool pass = true;
    for (double d : {0.2, 0.5, 0.8}) {
        auto fit = fit_mixture_slope(ar1_model(d), 0.0, SpectrumSide::F);
        pass &= std::abs(fit.fitted_exponent - (1.0 - d)) <= 0.02;
    }
    for (double d : {-0.4, -0.2}) {
        auto fit = fit_mixture_slope(ar1_model(d, InnovationScheme::common()), 0.0,
                                     SpectrumSide::H2);
        pass &= std::abs(fit.fitted_exponent - (-2.0 * d)) <= 0.02;
    }
    report(2, pass, t.seconds(), "mixture slopes: 1 - d (F) and -2d (|H|^2)");
}

// --- criterion 3: lemma 1 / lemma 3 constants --------------------------------

void criterion3() {
    Timer t;
    bool pass = true;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        double n = 2.0 + (i % 3);
        double d = -0.7 + u01(rng) * (n - 1.0 - 0.5 + 0.7);
        bool cont = i % 2 == 1;
        AsymptoticFit fit =
            cont ? lemma3_check(d, n, 0.0, ShapeFn::exp_decay(1.0))
                 : lemma1_check(d, n, 1, ShapeFn::constant());
        pass &= std::abs(fit.fitted_constant / fit.predicted_constant - 1.0) < 0.05;
        pass &= std::abs(fit.fitted_exponent - fit.predicted_exponent) <= 0.02;
    }
    auto base = lemma1_check(0.5, 2.0, 1, ShapeFn::constant());
    for (double theta0 : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
        auto f3 = lemma1_check(0.5, 2.0, 3, ShapeFn::constant(), theta0);
        double scale = std::pow(2.0 * std::sin(theta0), -2.0);
        pass &= std::abs(f3.fitted_constant / (base.fitted_constant * scale) - 1.0) <
                0.05;
    }
    report(3, pass, t.seconds(), "lemma 1/3 constants and [2 sin theta0]^-n scaling");
}

// --- criterion 4: lemma 2 / lemma 4 exponents --------------------------------

void criterion4() {
    Timer t;
    bool pass = true;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    LadderOptions fast;
    fast.decades = 5;
    fast.per_decade = 1;
    for (int i = 0; i < 10; ++i) {
        double n = 2.0;
        double alpha = 0.3 + 0.5 * u01(rng);
        AsymptoticFit fit;
        if (i % 3 == 0) {
            // boundary theta0: n-1 < d < 2n-2+alpha, exponent 2n-2-d+alpha
            double d = (n - 1.0 + 0.1) + u01(rng) * (n - 1.0 + alpha - 0.3);
            int c = i % 2 == 0 ? 1 : 2;
            fit = lemma2_check(d, n, alpha, c, ShapeFn::constant(), ShapeFn::constant(),
                               0.0, fast);
        } else if (i % 3 == 1) {
            // interior theta0: n-2 < d < n-2+alpha, exponent n-2-d+alpha
            double d = (n - 2.0 + 0.05) + u01(rng) * (alpha - 0.15);
            fit = lemma2_check(d, n, alpha, 3, ShapeFn::constant(), ShapeFn::constant(),
                               kPi / 3, fast);
        } else {
            double d = (n - 2.0 + 0.05) + u01(rng) * (alpha - 0.15);
            fit = lemma4_check(d, n, alpha, 2.0, ShapeFn::exp_decay(1.0),
                               ShapeFn::constant(), {-8.0, 8.0}, fast);
        }
        bool ok = std::abs(fit.fitted_exponent - fit.predicted_exponent) <= 0.03;
        if (!ok)
            std::printf("  [4] miss: fitted %.4f predicted %.4f\n", fit.fitted_exponent,
                        fit.predicted_exponent);
        pass &= ok;
    }
    report(4, pass, t.seconds(),
           "lemma 2/4 exponents 2n-2-d+alpha and n-2-d+alpha within 0.03");
}

// --- criterion 5: phase diagrams and spot fits --------------------------------

void criterion5() {
    Timer t;
    bool pass = true;
    // Figure 1 geometry: existence frontier d = beta - 1, LM frontier d = beta
    auto fig1 = disappearance_sweep(-1.0, 2.0, 41, -1.0, 1.0, 41, false);
    for (const auto& c : fig1) {
        if (c.beta >= 1.0) continue;  // Dirac column follows Theorem 1 instead
        // skip knife-edge cells where grid rounding decides the frontier side
        if (std::abs(c.d - (c.beta - 1.0)) < 1e-9 || std::abs(c.d - c.beta) < 1e-9)
            continue;
        // d <= -1 is outside the radial law's normalizability range
        int expect =
            c.d <= std::max(c.beta - 1.0, -1.0) ? 0 : (c.d < c.beta ? 2 : 1);
        pass &= c.region == expect;
    }
    // Figure 2 translate: frontiers at d = beta + 1 and d = beta + 2
    auto fig2 = disappearance_sweep(-1.0, 3.0, 41, -1.0, 1.0, 41, true);
    for (const auto& c : fig2) {
        if (c.beta >= 1.0) continue;
        if (std::abs(c.d - (c.beta + 1.0)) < 1e-9 ||
            std::abs(c.d - (c.beta + 2.0)) < 1e-9)
            continue;
        int expect = c.d <= c.beta + 1.0 ? 0 : (c.d < c.beta + 2.0 ? 2 : 1);
        pass &= c.region == expect;
    }
    // spot slope fits inside the LM region, alpha = beta - d; the fits need
    // d > 0, where the mixture density is finite pointwise near the singular
    // frequency (for d <= 0 the radial kernel is non-integrable at theta =
    // lambda and only the frequency-integrated blow-up keeps its closed form)
    const double spots[12][2] = {{0.1, 0.5},   {0.3, 0.7},  {0.5, 0.9},
                                 {0.25, 0.55}, {0.05, 0.6}, {0.2, 0.4},
                                 {0.35, 0.75}, {0.4, 0.8},  {0.12, 0.6},
                                 {0.05, 0.25}, {0.45, 0.85}, {0.15, 0.65}};
    LadderOptions fast;
    fast.decades = 4;
    fast.per_decade = 1;
    for (const auto& s : spots) {
        double d = s[0], beta = s[1];
        auto fit = fit_mixture_slope(ar2_diffuse_model(d, beta, kPi / 3), kPi / 3,
                                     SpectrumSide::F, fast);
        bool ok = std::abs(fit.fitted_exponent - (beta - d)) <= 0.05;
        if (!ok)
            std::printf("  [5] miss at d=%.2f beta=%.2f: fitted %.4f\n", d, beta,
                        fit.fitted_exponent);
        pass &= ok;
    }
    double secs = t.seconds();
    pass &= secs < 600.0;
    report(5, pass, secs, "figure 1/2 phase diagrams and 12 spot slope fits");
}

// --- criterion 6: aggregation converges to the mixture spectrum --------------

std::vector<size_t> band_indices(const std::vector<double>& grid, double lo,
                                 double hi, size_t stride) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < grid.size(); i += stride)
        if (grid[i] >= lo && grid[i] <= hi) idx.push_back(i);
    return idx;
}

void criterion6() {
    Timer t;
    bool pass = true;
    const int N = 2000;
    const long T = 1L << 16;
    PeriodogramOptions popt;
    popt.spectral_scale = true;

    for (int variant = 0; variant < 2; ++variant) {
        ModelSpec m = variant == 0 ? ar1_model(0.5)
                                   : ar1_model(-0.25, InnovationScheme::common());
        std::vector<double> ref_grid, ref_vals;
        std::vector<double> dists;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Timer run_t;
            PanelRun run = aggregate(m, N, T, seed);
            SpectralCurve p = periodogram(run.aggregate, popt);
            if (ref_grid.empty()) {
                auto idx = band_indices(p.grid, 0.05, 3.0, 64);
                for (size_t i : idx) ref_grid.push_back(p.grid[i]);
                SpectralCurve c = variant == 0 ? mixture_F(m, ref_grid)
                                               : mixture_H(m, ref_grid);
                ref_vals = c.values;
            }
            std::vector<double> pv;
            auto idx = band_indices(p.grid, 0.05, 3.0, 64);
            for (size_t i : idx) pv.push_back(p.values[i]);
            dists.push_back(rel_l1(pv, ref_vals));
            pass &= run_t.seconds() < 300.0;
        }
        double med = median(dists);
        if (med >= 0.15)
            std::printf("  [6] %s median distance %.3f\n",
                        variant == 0 ? "independent" : "common", med);
        pass &= med < 0.15;
    }
    report(6, pass, t.seconds(),
           "N=2000 aggregate periodogram within 15 pct of F (indep) and |H|^2 (common)");
}

// --- criterion 7: interactive weak vs strong tracking ------------------------

void criterion7() {
    Timer t;
    bool pass = true;
    const int N = 500;
    const long T = 1L << 14;
    const double d = 0.3;
    PeriodogramOptions popt;
    popt.spectral_scale = true;

    // B_N is a free input for interactive runs; sqrt(N) keeps the independent
    // part of the spectrum at full strength (F + 2 sum(chi) |H|^2), so near the
    // singularity the aggregate tracks F itself rather than the damped blend
    // produced by the variance-matching default
    ModelSpec weak = ar1_model(
        d, InnovationScheme::interactive(InnovationScheme::ChiPreset::Geometric, 0.5,
                                         std::sqrt(double(N))));
    ModelSpec strong = ar1_model(
        d, InnovationScheme::interactive(InnovationScheme::ChiPreset::Power, 0.5));

    std::vector<double> grid, f_vals, h2_vals;
    for (int variant = 0; variant < 2; ++variant) {
        const ModelSpec& m = variant == 0 ? weak : strong;
        std::vector<double> to_f, to_h2;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            PanelRun run = aggregate(m, N, T, 100 + seed);
            SpectralCurve p = periodogram(run.aggregate, popt);
            auto idx = band_indices(p.grid, 0.0, 0.05, 1);
            if (grid.empty()) {
                for (size_t i : idx) grid.push_back(p.grid[i]);
                f_vals = mixture_F(weak, grid).values;
                h2_vals = mixture_H(weak, grid).values;
            }
            std::vector<double> pv;
            for (size_t i : idx) pv.push_back(p.values[i]);
            to_f.push_back(rel_l1(pv, f_vals));
            to_h2.push_back(rel_l1(pv, h2_vals));
        }
        double df = median(to_f), dh = median(to_h2);
        bool ok = variant == 0 ? df <= 0.5 * dh : dh <= 0.5 * df;
        if (!ok)
            std::printf("  [7] %s: dist(F)=%.3f dist(|H|^2)=%.3f\n",
                        variant == 0 ? "weak" : "strong", df, dh);
        pass &= ok;
    }
    report(7, pass, t.seconds(), "weak chi tracks F, strong chi tracks |H|^2 near 0");
}

// --- criterion 8: OU corollary scenario --------------------------------------

void criterion8() {
    Timer t;
    bool pass = true;
    ModelSpec m;
    m.flavor = Flavor::Continuous;
    m.groups.push_back(PoleGroupSpec::real_continuous(
        1, RadialLaw(Flavor::Continuous, 0.5, ShapeFn::exp_decay(1.0))));
    m.groups.push_back(PoleGroupSpec::complex_continuous(
        1, RadialLaw(Flavor::Continuous, 0.5, ShapeFn::exp_decay(1.0)),
        AngularLaw(1.0, 3.0)));

    LMReport rep = classify_model(m);
    pass &= rep.exists && rep.long_memory;
    pass &= rep.singularities.size() == 3;
    for (const auto& s : rep.singularities) pass &= std::abs(s.alpha - 0.5) < 1e-12;

    for (double lam_s : {0.0, 3.0}) {
        auto fit = fit_mixture_slope(m, lam_s, SpectrumSide::F);
        bool ok = std::abs(fit.fitted_exponent - 0.5) <= 0.03;
        if (!ok)
            std::printf("  [8] slope at %g: fitted %.4f\n", lam_s, fit.fitted_exponent);
        pass &= ok;
    }
    report(8, pass, t.seconds(), "OU real + complex pair: alpha = 0.5 at {0, +-3}");
}

// --- criterion 9: property suites --------------------------------------------

void criterion9() {
    Timer t;
    bool pass = true;
    std::mt19937_64 rng(5);

    // polynomial round-trip and MA-convolution identity
    std::vector<PoleGroupSpec> groups;
    groups.push_back(PoleGroupSpec::real_discrete(+1, 1, RadialLaw(Flavor::Discrete, 0.5)));
    groups.push_back(PoleGroupSpec::complex_discrete(
        1, RadialLaw(Flavor::Discrete, 0.2), AngularLaw(0.5, kPi / 3)));
    for (int rep = 0; rep < 20; ++rep) {
        PoleSample s = draw_pole_sample(groups, Flavor::Discrete, rng);
        auto coeffs = expand_polynomial(s);
        // A(1/y_k) must vanish at every sampled pole
        for (const auto& y : s.roots()) {
            std::complex<double> x = 1.0 / y, acc = 1.0, p = 1.0;
            for (double a : coeffs.a) acc += a * (p *= x);
            pass &= std::abs(acc) < 1e-9;
        }
        auto ma = ma_coefficients(coeffs, 64);
        std::vector<double> a = {1.0};
        a.insert(a.end(), coeffs.a.begin(), coeffs.a.end());
        for (int k = 0; k < 32; ++k) {
            double conv = 0.0;
            for (size_t j = 0; j < a.size() && j <= size_t(k); ++j)
                conv += a[j] * ma[k - j];
            pass &= std::abs(conv - (k == 0 ? 1.0 : 0.0)) < 1e-12;
        }
        // |h|^2 = g
        for (double lam = -3.0; lam <= 3.0; lam += 0.61) {
            double g = pointwise_g(s, lam, 1.0);
            pass &= std::abs(std::norm(pointwise_h(s, lam, 1.0)) - g) <= 1e-12 * g;
        }
    }

    // F symmetry and Jensen on a mixed model
    ModelSpec m = ar2_diffuse_model(0.5, 1.0, kPi / 3);
    for (double lam : {0.3, 0.9, 2.0}) {
        double fp = mixture_F_at(m, lam);
        pass &= std::abs(fp - mixture_F_at(m, -lam)) <= 1e-10 * fp;
        pass &= std::norm(mixture_H_at(m, lam)) <= fp * (1.0 + 1e-12);
    }

    // reduction consistency of the general classifier
    for (int i = 0; i <= 100; ++i) {
        double d = -0.9 + 2.8 * i / 100.0;
        for (auto regime : {InnovationRegime::Independent, InnovationRegime::Common}) {
            auto a = classify_ar1(d, 0.0, regime);
            auto b = classify_arp({{d, 1.0, 0.0, 1, false}}, regime);
            pass &= a.exists == b.exists && a.long_memory == b.long_memory;
            pass &= a.singularities.size() == b.singularities.size();
            for (size_t k = 0; k < a.singularities.size(); ++k)
                pass &= a.singularities[k].alpha == b.singularities[k].alpha;
        }
    }
    report(9, pass, t.seconds(),
           "property suites: round-trip, MA identity, |h|^2=g, symmetry, Jensen, "
           "reduction");
}

}  // namespace

int main(int argc, char** argv) {
    void (*crit[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                        criterion6, criterion7, criterion8, criterion9};
    if (argc > 1) {
        // run only the criteria named by number, e.g. ./acceptance 5 7
        for (int i = 1; i < argc; ++i) crit[std::atoi(argv[i]) - 1]();
    } else {
        for (auto f : crit) f();
    }
    std::printf(g_failures == 0 ? "acceptance: all criteria passed\n"
                                : "acceptance: %d criteria FAILED\n",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
